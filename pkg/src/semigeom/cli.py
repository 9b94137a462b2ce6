"""Command-line front end.

Loads monoids, spaces, and point maps from JSON description files,
dispatches to the library, and prints deterministic reports: "key: value"
lines for verdicts, tab-separated tables for bulk data, DOT for graphs.
The command echo and timing go to stderr so stdout stays byte-stable.

Exit codes: 0 for a successful positive verdict or plain data, 1 for a
negative verdict (a violation found, nothing within bounds, failure to
generate), 2 for input errors.
"""

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import catalog, cayley, descriptions, geometry, green, growth
from .distances import finite
from .errors import (
    CapExceeded,
    NotACongruence,
    NotFinite,
    NotGenerating,
    NotStronglyConnected,
    SemigeomError,
)
from .monoids import DEFAULT_CAP, ProductMonoid

DEFAULT_RADIUS = 64
SEARCH_CAP = 10


def _load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_monoid(value):
    """A description file path, or a built-in catalog name."""
    if not os.path.exists(value) and value in catalog.names():
        return catalog.monoid(value)
    return descriptions.load_monoid(_load_json(value))


def _load_space(path):
    return descriptions.load_space(_load_json(path))


def _frac(text):
    return Fraction(text)


def _fmt(q):
    return descriptions.format_rational(Fraction(q))


def _yes(flag):
    return "yes" if flag else "no"


def _say(line=""):
    sys.stdout.write(line + "\n")


# -- subcommand handlers ------------------------------------------------------


def cmd_ball(args):
    m = _load_monoid(args.monoid)
    ball = cayley.build_cayley_ball(m, args.radius, cap=args.cap)
    if args.format == "dot":
        sys.stdout.write(cayley.export_dot(ball))
        return 0
    if args.format == "distances":
        sys.stdout.write(cayley.distance_table(ball))
        return 0
    _say("vertex\tlength")
    for i in range(len(ball.vertices)):
        _say("%s\t%d" % (ball.name(i), ball.lengths[i]))
    return 0


def cmd_dist(args):
    m = _load_monoid(args.monoid)
    ball = cayley.build_cayley_ball(m, args.radius, cap=args.cap)
    _say("horizon: %d" % args.radius)
    try:
        u = ball.index_of(m.parse_element(args.source))
        v = ball.index_of(m.parse_element(args.target))
    except KeyError:
        # the endpoint itself is out of the ball; nothing is decidable
        _say("distance: >%d" % args.radius)
        return 0
    d = ball.distance(u, v)
    _say("distance: %s" % d.format())
    if d.is_finite():
        _say("geodesic: %s" % " ".join(ball.geodesic(u, v)))
    return 0


def cmd_poset(args):
    m = _load_monoid(args.monoid)
    ball = cayley.build_cayley_ball(m, args.radius, cap=args.cap)
    scc = cayley.strongly_connected_components(ball)
    reach = cayley.component_poset(ball, scc)
    _say("horizon: %d" % args.radius)
    _say("components: %d" % len(scc.components))
    _say("component\tverified\tmembers")
    for c, members in enumerate(scc.components):
        _say(
            "%d\t%s\t%s"
            % (c, _yes(scc.verified[c]), " ".join(ball.name(i) for i in members))
        )
    pairs = []
    for high in range(len(scc.components)):
        for low in sorted(reach[high]):
            if low != high:
                pairs.append("%d<%d" % (low, high))
    _say("order: %s" % " ".join(pairs))
    return 0


def cmd_green(args):
    fm = green.FiniteMonoid(_load_monoid(args.monoid), cap=args.cap)
    gs = fm.green()
    _say("elements: %d" % len(fm))
    _say("r-classes: %d" % len(gs.r_classes))
    _say("l-classes: %d" % len(gs.l_classes))
    _say("h-classes: %d" % len(gs.h_classes))
    for label, classes in (
        ("r-class", gs.r_classes),
        ("l-class", gs.l_classes),
        ("h-class", gs.h_classes),
    ):
        for c, members in enumerate(classes):
            _say("%s\t%d\t%s" % (label, c, " ".join(fm.names[i] for i in members)))
    order = " ".join("%d<=%d" % (i, j) for i, j in gs.r_order)
    _say("r-order: %s" % order)
    return 0


def cmd_schutz(args):
    m = _load_monoid(args.monoid)
    h = m.parse_element(args.element) if args.element else m.identity
    try:
        fm = green.FiniteMonoid(m, cap=min(args.cap, args.probe_cap))
    except NotFinite:
        fm = None
    if fm is not None:
        gs = fm.green()
        hc = gs.h_classes[gs.h_class_of[fm.element_index(h)]]
        group = green.schutz_group(fm, hc)
        _say("mode: exact")
        _say("h-class: %s" % " ".join(fm.names[i] for i in hc))
        _say("group-order: %d" % group.order)
        _say("representatives: %s" % " ".join(group.rep_names))
        return 0
    graph = cayley.schutzenberger_ball(m, h, args.radius, cap=args.cap)
    _say("mode: evidence")
    _say("horizon: %d" % args.radius)
    _say("vertices: %d" % len(graph.vertices))
    if args.format == "dot":
        sys.stdout.write(cayley.export_dot(graph))
        return 0
    indeg = graph.in_degrees()
    outdeg = graph.out_degrees()
    _say("vertex\tlength\tindegree\toutdegree\tinterior")
    for i in range(len(graph.vertices)):
        _say(
            "%s\t%d\t%d\t%d\t%s"
            % (graph.name(i), graph.lengths[i], indeg[i], outdeg[i],
               _yes(graph.complete[i]))
        )
    return 0


def _print_action(report):
    _say("mode: %s" % ("exact" if report.exact else "evidence"))
    if report.group_order is not None:
        _say("group-order: %d" % report.group_order)
    _say("isometric: %s" % _yes(report.isometric))
    if report.counterexample is not None:
        _say("counterexample: %s" % " ".join(str(p) for p in report.counterexample))
    _say("outward-proper: %s" % _yes(report.outward_proper))
    _say("orbit-meets: %s" % " ".join("%d:%d" % rc for rc in report.orbit_meet_sizes))
    _say("cocompact: %s" % _yes(report.cocompact))
    if report.covering_radius is not None:
        _say("covering-radius: %d" % report.covering_radius)
    if report.failed_radius is not None:
        _say("failed-radius: %d" % report.failed_radius)
    for note in report.notes:
        _say("note: %s" % note)
    ok = report.isometric and report.outward_proper and report.cocompact
    _say("verdict: %s" % ("ok" if ok else "fail"))
    return 0 if ok else 1


def cmd_act(args):
    m = _load_monoid(args.monoid)
    h = m.parse_element(args.element) if args.element else None
    report = green.check_schutz_action(
        m, h, radius=args.radius, cap=args.cap, probe_cap=args.probe_cap
    )
    return _print_action(report)


def cmd_svarc(args):
    m = _load_monoid(args.monoid)
    fm = green.FiniteMonoid(m, cap=args.cap)
    gs = fm.green()
    h = m.parse_element(args.element) if args.element else m.identity
    hc = gs.h_classes[gs.h_class_of[fm.element_index(h)]]
    try:
        report = green.svarc_milnor(fm, hc, ball_radius=args.ball_radius, l=args.l)
    except NotGenerating as e:
        _say("verdict: not-generating")
        _say("unreachable: %s" % " ".join(str(x) for x in e.missing))
        return 1
    _say("h-class-size: %d" % len(hc))
    _say("ball-radius: %d" % report.ball_radius)
    _say("l: %d" % report.l)
    _say("s: %s" % " ".join(report.s_names))
    _say("lambda: %s" % _fmt(report.lam))
    _say("max-word-length: %d" % max(report.word_length))
    _say("forward-ok: %s" % _yes(report.forward_ok))
    _say("reverse-ok: %s" % _yes(report.reverse_ok))
    ok = report.forward_ok and report.reverse_ok
    _say("verdict: %s" % ("ok" if ok else "fail"))
    return 0 if ok else 1


def cmd_growth(args):
    m = _load_monoid(args.monoid)
    seq = growth.growth_sequence(m, args.mmax, cap=args.cap)
    if args.other is None:
        _say("m\tg")
        for t, g in enumerate(seq.values):
            _say("%d\t%d" % (t, g))
        if args.classify:
            verdict = growth.classify_growth(seq)
            if isinstance(verdict, growth.Polynomial):
                _say("classification: polynomial %d" % verdict.degree)
            elif isinstance(verdict, growth.Exponential):
                _say("classification: exponential %.2f" % verdict.base)
            else:
                _say("classification: inconclusive")
                return 1
        return 0
    other = growth.growth_sequence(_load_monoid(args.other), args.mmax, cap=args.cap)
    witness = growth.dominates_within(seq, other, args.lambda_max, args.c_max)
    if witness is None:
        _say("witness: none-within-bounds")
        _say("note: bounded-window verdict only, not an asymptotic refutation")
        return 1
    _say("witness: lambda=%d c=%d" % (witness.lam, witness.c))
    _say("checked: %d..%d" % witness.checked)
    return 0


def cmd_ends(args):
    m = _load_monoid(args.monoid)
    profile = growth.ends_profile(m, args.kmax, args.radius, cap=args.cap)
    _say("horizon: %d" % profile.horizon)
    _say("k\te\te-inner")
    for k in profile.inner_radii:
        _say("%d\t%d\t%d" % (k, profile.counts[k], profile.counts_inner[k]))
    v = profile.verdict
    if isinstance(v, growth.Stable):
        _say("verdict: stable %d" % v.count)
    elif isinstance(v, growth.GrowingAtLeast):
        _say("verdict: growing-at-least %s" % " ".join(str(c) for c in v.counts))
    else:
        _say("verdict: inconclusive")
        return 1
    return 0


def cmd_qi_check(args):
    source = _load_space(args.source)
    target = _load_space(args.target)
    f = descriptions.load_point_map(_load_json(args.map), source, target)
    constants = geometry.QiConstants(args.lam, args.epsilon, args.mu)
    report = geometry.check_quasi_isometry(f, source, target, constants)
    _say("lambda: %s" % _fmt(constants.lam))
    _say("epsilon: %s" % _fmt(constants.eps))
    _say("mu: %s" % _fmt(constants.mu))
    if constants.eps == 0:
        _say("note: isometric-grade claim (epsilon = 0)")
    emb = report.embedding
    _say("checked: %d" % emb.checked)
    _say("skipped: %d" % emb.skipped)
    if emb.violation is not None:
        _say(
            "violation: %s %s %s"
            % (source.points[emb.violation.x], source.points[emb.violation.y],
               emb.violation.side)
        )
    _say("mu-actual: %s" % report.mu.format())
    _say("verdict: %s" % ("ok" if report.ok else "fail"))
    return 0 if report.ok else 1


def cmd_qi_search(args):
    source = _load_space(args.source)
    target = _load_space(args.target)
    found = geometry.search_quasi_isometry(
        source, target, args.lambda_max, args.eps_max, args.mu_max, cap=args.cap
    )
    if found is None:
        _say("verdict: none-within-bounds")
        _say("note: bounded search only, not a refutation")
        return 1
    pairs = [
        "%s->%s" % (source.points[i], target.points[found.point_map[i]])
        for i in range(len(source.points))
    ]
    _say("map: %s" % " ".join(pairs))
    _say("lambda: %s" % _fmt(found.constants.lam))
    _say("epsilon: %s" % _fmt(found.constants.eps))
    _say("mu: %s" % _fmt(found.constants.mu))
    _say("verdict: ok")
    return 0


def cmd_quasimetric(args):
    space = _load_space(args.source)
    lam = geometry.quasi_metricity_lambda(space, args.epsilon)
    if lam is None:
        _say("strongly-connected: no")
        _say("verdict: not-quasi-metric")
        return 1
    _say("strongly-connected: yes")
    _say("epsilon: %s" % _fmt(args.epsilon))
    _say("lambda: %s" % _fmt(lam))
    _say("verdict: ok")
    return 0


def cmd_symmetrize(args):
    space = _load_space(args.source)
    try:
        result = geometry.symmetrize(space, args.epsilon)
    except NotStronglyConnected:
        _say("verdict: not-strongly-connected")
        return 1
    _say("lambda: %s" % _fmt(result.lam))
    _say("epsilon: %s" % _fmt(result.eps))
    _say("lambda-prime: %s" % _fmt(result.forward.lam))
    _say("metric-ok: %s" % _yes(result.metric_ok))
    _say("forward-ok: %s" % _yes(result.forward_ok))
    _say("backward-lambda: %s" % _fmt(result.backward_lam))
    _say("backward-epsilon: %s" % _fmt(result.backward_eps))
    _say("backward-ok: %s" % _yes(result.backward_ok))
    ok = result.metric_ok and result.forward_ok and result.backward_ok
    _say("verdict: %s" % ("ok" if ok else "fail"))
    payload = json.dumps(descriptions.dump_space(result.space), indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
    else:
        _say(payload)
    return 0 if ok else 1


def cmd_quotient(args):
    m = _load_monoid(args.monoid)
    if args.projection:
        if not isinstance(m, ProductMonoid):
            raise ValueError("--projection needs a product monoid description")
        report = geometry.check_product_projection_qi(m, args.radius, cap=args.cap)
        _say("mode: evidence")
        _say("horizon: %d" % report.horizon)
        _say("r-bound: %s" % report.r_bound.format())
        if report.embedding is not None:
            _say("checked: %d" % report.embedding.checked)
            _say("skipped: %d" % report.embedding.skipped)
        if report.mu is not None:
            _say("mu-actual: %s" % report.mu.format())
        for note in report.notes:
            _say("note: %s" % note)
        _say("verdict: %s" % ("ok" if report.ok else "fail"))
        return 0 if report.ok else 1
    if args.classes is None:
        raise ValueError("either --classes or --projection is required")
    fm = green.FiniteMonoid(m, cap=args.cap)
    data = _load_json(args.classes)
    class_of = [None] * len(fm)
    for c, members in enumerate(data):
        for name in members:
            class_of[fm.element_index(name)] = c
    if any(c is None for c in class_of):
        raise ValueError("classes file does not cover every element")
    try:
        report = geometry.check_quotient_qi(fm, class_of)
    except NotACongruence as e:
        _say("verdict: not-a-congruence")
        _say("witness: %s" % " ".join(fm.names[i] for i in e.witness))
        return 1
    _say("mode: exact")
    _say("classes: %d" % len(report.classes))
    _say("r-bound: %s" % report.r_bound.format())
    if report.constants is not None:
        _say("lambda: %s" % _fmt(report.constants.lam))
        _say("epsilon: %s" % _fmt(report.constants.eps))
        _say("mu: %s" % _fmt(report.constants.mu))
    if report.mu is not None:
        _say("mu-actual: %s" % report.mu.format())
    for note in report.notes:
        _say("note: %s" % note)
    _say("verdict: %s" % ("ok" if report.ok else "fail"))
    return 0 if report.ok else 1


# -- parser -------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="semigeom",
        description="Coarse geometry of finitely generated monoids.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(func=handler)
        p.add_argument("--cap", type=int, default=DEFAULT_CAP,
                       help="element enumeration cap")
        return p

    p = add("ball", cmd_ball, help="enumerate a Cayley ball")
    p.add_argument("--monoid", required=True)
    p.add_argument("--radius", type=int, default=DEFAULT_RADIUS)
    p.add_argument("--format", choices=["table", "dot", "distances"],
                   default="table")

    p = add("dist", cmd_dist, help="in-ball distance between two elements")
    p.add_argument("--monoid", required=True)
    p.add_argument("--radius", type=int, default=DEFAULT_RADIUS)
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)

    p = add("poset", cmd_poset, help="ball components and their order")
    p.add_argument("--monoid", required=True)
    p.add_argument("--radius", type=int, default=DEFAULT_RADIUS)

    p = add("green", cmd_green, help="Green's relations of a finite monoid")
    p.add_argument("--monoid", required=True)

    p = add("schutz", cmd_schutz, help="Schutzenberger graph and group")
    p.add_argument("--monoid", required=True)
    p.add_argument("--element", default=None)
    p.add_argument("--radius", type=int, default=8)
    p.add_argument("--format", choices=["table", "dot"], default="table")
    p.add_argument("--probe-cap", dest="probe_cap", type=int,
                   default=green.PROBE_CAP,
                   help="finiteness probe limit before evidence mode")

    p = add("act", cmd_act, help="check the Schutzenberger group action")
    p.add_argument("--monoid", required=True)
    p.add_argument("--element", default=None)
    p.add_argument("--radius", type=int, default=8)
    p.add_argument("--probe-cap", dest="probe_cap", type=int,
                   default=green.PROBE_CAP,
                   help="finiteness probe limit before evidence mode")

    p = add("svarc", cmd_svarc, help="extract generators from a group action")
    p.add_argument("--monoid", required=True)
    p.add_argument("--element", default=None)
    p.add_argument("--ball-radius", dest="ball_radius", type=int, default=1)
    p.add_argument("--l", dest="l", type=int, default=1)

    p = add("growth", cmd_growth, help="growth sequence and domination")
    p.add_argument("--monoid", required=True)
    p.add_argument("--mmax", type=int, default=20)
    p.add_argument("--classify", action="store_true")
    p.add_argument("--other", default=None,
                   help="second monoid: check domination instead")
    p.add_argument("--lambda-max", dest="lambda_max", type=int, default=10)
    p.add_argument("--c-max", dest="c_max", type=int, default=10)

    p = add("ends", cmd_ends, help="estimate the number of ends")
    p.add_argument("--monoid", required=True)
    p.add_argument("--kmax", type=int, default=4)
    p.add_argument("--radius", type=int, default=12)

    p = add("qi-check", cmd_qi_check, help="verify a quasi-isometry claim")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--lambda", dest="lam", type=_frac, required=True)
    p.add_argument("--epsilon", type=_frac, required=True)
    p.add_argument("--mu", type=_frac, required=True)

    p = add("qi-search", cmd_qi_search, help="search for a quasi-isometry")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--lambda-max", dest="lambda_max", type=_frac, default=Fraction(4))
    p.add_argument("--eps-max", dest="eps_max", type=_frac, default=Fraction(4))
    p.add_argument("--mu-max", dest="mu_max", type=_frac, default=Fraction(2))
    p.set_defaults(cap=SEARCH_CAP)

    p = add("quasimetric", cmd_quasimetric, help="least quasi-metricity constant")
    p.add_argument("--source", required=True)
    p.add_argument("--epsilon", type=_frac, default=Fraction(0))

    p = add("symmetrize", cmd_symmetrize, help="symmetrize a space, with certificates")
    p.add_argument("--source", required=True)
    p.add_argument("--epsilon", type=_frac, default=Fraction(0))
    p.add_argument("--out", default=None, help="write the space JSON here")

    p = add("quotient", cmd_quotient, help="check a quotient or projection map")
    p.add_argument("--monoid", required=True)
    p.add_argument("--classes", default=None, help="JSON list of class member lists")
    p.add_argument("--projection", action="store_true",
                   help="product monoid: project onto the left factor")
    p.add_argument("--radius", type=int, default=8)

    return parser


def main(argv=None):
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    print("semigeom " + " ".join(argv), file=sys.stderr)
    start = time.monotonic()
    try:
        code = args.func(args)
    except CapExceeded as e:
        print("error: %s (raise --cap)" % e, file=sys.stderr)
        code = 2
    except NotFinite as e:
        print("error: %s (raise --cap or use an evidence-mode command)" % e,
              file=sys.stderr)
        code = 2
    except (SemigeomError, ValueError, KeyError, OSError,
            json.JSONDecodeError) as e:
        print("error: %s" % e, file=sys.stderr)
        code = 2
    finally:
        print("elapsed: %.3fs" % (time.monotonic() - start), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Loading and dumping of monoid, space, and map description dicts.

The on-disk format is JSON.  Rationals serialize as "p/q" strings (plain
integers are accepted); infinity in a distance matrix is null.  Loading a
monoid re-checks all structural invariants (rule orientation, completeness,
associativity), so a loaded backend is always in a valid state.
"""

from fractions import Fraction

from . import geometry
from .distances import INFINITE, finite
from .errors import InvalidSpace
from .monoids import (
    ProductMonoid,
    RewritingMonoid,
    TableMonoid,
    TransformationMonoid,
)
from .rewriting import RewritingSystem, parse_word


def load_monoid(desc):
    kind = desc.get("kind")
    if kind == "rewriting":
        alphabet = list(desc["alphabet"])
        rules = [
            (parse_word(lhs, alphabet), parse_word(rhs, alphabet))
            for lhs, rhs in desc["rules"]
        ]
        system = RewritingSystem(alphabet, rules)
        if not system.is_complete:
            f = system.completeness
            raise ValueError(
                "rewriting system is not confluent: peak %r joins to %r and %r"
                % ("".join(f.peak), "".join(f.nf1), "".join(f.nf2))
            )
        return RewritingMonoid(system, desc.get("extra_generators", ()))
    if kind == "transformation":
        gens = desc["generators"]
        if isinstance(gens, dict):
            gens = sorted(gens.items())
        return TransformationMonoid(desc["degree"], gens)
    if kind == "table":
        return TableMonoid.from_semigroup(
            desc["elements"],
            desc["table"],
            identity=desc.get("identity"),
            generator_names=desc.get("generators"),
        )
    if kind == "product":
        return ProductMonoid(load_monoid(desc["left"]), load_monoid(desc["right"]))
    raise ValueError("unknown monoid kind %r" % kind)


def dump_monoid(m):
    return m.description()


def parse_rational(value):
    if isinstance(value, bool) or value is None:
        raise ValueError("expected a rational, got %r" % value)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise ValueError("expected int or 'p/q' string, got %r" % value)


def format_rational(q):
    return str(q)


def load_space(desc):
    points = [str(p) for p in desc["points"]]
    rows = desc["dist"]
    if len(rows) != len(points) or any(len(r) != len(points) for r in rows):
        raise ValueError("dist matrix must be %d x %d" % (len(points), len(points)))
    matrix = []
    for row in rows:
        out = []
        for v in row:
            if v is None:
                out.append(INFINITE)
            else:
                out.append(finite(parse_rational(v)))
        matrix.append(out)
    violation = geometry.check_axioms(points, matrix)
    if violation is not None:
        raise InvalidSpace(violation)
    return geometry.Space(tuple(points), tuple(tuple(r) for r in matrix))


def dump_space(space):
    rows = []
    for row in space.dist:
        out = []
        for d in row:
            if d.is_infinite():
                out.append(None)
            elif d.is_finite():
                out.append(format_rational(d.value))
            else:
                raise ValueError("cannot serialize horizon-stamped entries")
        rows.append(out)
    return {"points": list(space.points), "dist": rows}


def load_point_map(desc, source, target):
    """A point map as a list of target point names, one per source point."""
    if isinstance(desc, dict):
        desc = desc["map"]
    if len(desc) != len(source.points):
        raise ValueError(
            "map must list %d target points, got %d" % (len(source.points), len(desc))
        )
    index = {p: i for i, p in enumerate(target.points)}
    out = []
    for name in desc:
        if name not in index:
            raise ValueError("unknown target point %r" % name)
        out.append(index[name])
    return tuple(out)


def dump_point_map(f, target):
    return {"map": [target.points[i] for i in f]}

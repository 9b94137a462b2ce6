"""End-to-end CLI tests: every subcommand, every exit code.

main() is driven in process with capsys; input files are written to
tmp_path.  Stdout is asserted byte-for-byte where the format promises
stability (tables, DOT, verdict blocks); stderr carries the echo line and
timing and is only checked structurally.
"""

import json

import pytest

from semigeom import catalog, cayley, descriptions
from semigeom.cli import main
from semigeom.distances import finite


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_json(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


@pytest.fixture
def line5(tmp_path):
    n = 5
    dist = [[0 if i == j else (j - i if j > i else 1) for j in range(n)]
            for i in range(n)]
    return write_json(tmp_path, "line5.space",
                      {"points": ["g%d" % i for i in range(n)], "dist": dist})


@pytest.fixture
def chain(tmp_path):
    return write_json(tmp_path, "chain.space",
                      {"points": ["u", "v"], "dist": [[0, 1], [None, 0]]})


@pytest.fixture
def sym2(tmp_path):
    return write_json(tmp_path, "sym2.space",
                      {"points": ["u", "v"], "dist": [[0, 1], [1, 0]]})


@pytest.fixture
def point1(tmp_path):
    return write_json(tmp_path, "point.space", {"points": ["p"], "dist": [[0]]})


# -- ball, dist, poset ---------------------------------------------------------


def test_ball_table(capsys):
    code, out, err = run(capsys, "ball", "--monoid", "one-a-zero", "--radius", "4")
    assert code == 0
    assert out == "vertex\tlength\n1\t0\na\t1\n0\t2\n"
    assert err.splitlines()[0] == "semigeom ball --monoid one-a-zero --radius 4"
    assert err.splitlines()[-1].startswith("elapsed:")


def test_ball_dot_matches_library(capsys):
    code, out, _ = run(capsys, "ball", "--monoid", "bicyclic", "--radius", "1",
                       "--format", "dot")
    assert code == 0
    ball = cayley.build_cayley_ball(catalog.monoid("bicyclic"), 1)
    assert out == cayley.export_dot(ball)


def test_ball_output_is_byte_stable(capsys):
    first = run(capsys, "ball", "--monoid", "t2", "--radius", "3", "--format", "dot")
    second = run(capsys, "ball", "--monoid", "t2", "--radius", "3", "--format", "dot")
    assert first[1] == second[1]
    first = run(capsys, "ball", "--monoid", "one-a-zero", "--format", "distances")
    second = run(capsys, "ball", "--monoid", "one-a-zero", "--format", "distances")
    assert first[0] == 0 and first[1] == second[1]
    ball = cayley.full_cayley_graph(catalog.monoid("one-a-zero"))
    assert first[1] == cayley.distance_table(ball)


def test_dist_finite(capsys):
    code, out, _ = run(capsys, "dist", "--monoid", "bicyclic", "--radius", "3",
                       "--source", "c", "--target", "cb")
    assert code == 0
    assert out == "horizon: 3\ndistance: 1\ngeodesic: b\n"


def test_dist_infinite(capsys):
    code, out, _ = run(capsys, "dist", "--monoid", "one-a-zero", "--radius", "4",
                       "--source", "a", "--target", "1")
    assert code == 0
    assert out == "horizon: 4\ndistance: inf\n"


def test_dist_undecided(capsys):
    code, out, _ = run(capsys, "dist", "--monoid", "bicyclic", "--radius", "2",
                       "--source", "c", "--target", "b")
    assert code == 0
    assert out == "horizon: 2\ndistance: >2\n"


def test_dist_endpoint_out_of_ball(capsys):
    code, out, _ = run(capsys, "dist", "--monoid", "bicyclic", "--radius", "1",
                       "--source", "bb", "--target", "b")
    assert code == 0
    assert out == "horizon: 1\ndistance: >1\n"


def test_dist_bad_element(capsys):
    code, out, err = run(capsys, "dist", "--monoid", "bicyclic",
                         "--source", "x", "--target", "b")
    assert code == 2
    assert "error:" in err


def test_poset(capsys):
    code, out, _ = run(capsys, "poset", "--monoid", "one-a-zero", "--radius", "4")
    assert code == 0
    assert out == (
        "horizon: 4\n"
        "components: 3\n"
        "component\tverified\tmembers\n"
        "0\tyes\t1\n"
        "1\tyes\ta\n"
        "2\tyes\t0\n"
        "order: 1<0 2<0 2<1\n"
    )


# -- green, schutz, act, svarc ---------------------------------------------------


def test_green_t3(capsys):
    code, out, _ = run(capsys, "green", "--monoid", "t3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "elements: 27"
    assert lines[1] == "r-classes: 5"
    assert lines[2] == "l-classes: 7"
    assert lines[3] == "h-classes: 13"
    assert lines[-1].startswith("r-order: ")


def test_green_from_description_file(capsys, tmp_path):
    path = write_json(tmp_path, "z3.monoid", catalog.DESCRIPTIONS["z3"])
    from_file = run(capsys, "green", "--monoid", path)
    builtin = run(capsys, "green", "--monoid", "z3")
    assert from_file[0] == 0
    assert from_file[1] == builtin[1]


def test_schutz_exact(capsys):
    code, out, _ = run(capsys, "schutz", "--monoid", "t3", "--element", "120")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "mode: exact"
    assert lines[1].startswith("h-class: ")
    assert lines[2] == "group-order: 6"


def test_schutz_evidence_table(capsys):
    code, out, _ = run(capsys, "schutz", "--monoid", "bicyclic", "--radius", "4")
    assert code == 0
    assert out == (
        "mode: evidence\n"
        "horizon: 4\n"
        "vertices: 5\n"
        "vertex\tlength\tindegree\toutdegree\tinterior\n"
        "ε\t0\t1\t1\tno\n"
        "b\t1\t2\t2\tyes\n"
        "bb\t2\t2\t2\tyes\n"
        "bbb\t3\t2\t2\tyes\n"
        "bbbb\t4\t1\t1\tno\n"
    )


def test_act_exact(capsys):
    code, out, _ = run(capsys, "act", "--monoid", "t3", "--element", "120")
    assert code == 0
    lines = out.splitlines()
    assert "mode: exact" in lines
    assert "group-order: 6" in lines
    assert "isometric: yes" in lines
    assert "cocompact: yes" in lines
    assert "covering-radius: 0" in lines
    assert "orbit-meets: 1:5 2:6 3:6 4:6 5:6 6:6 7:6 8:6" in lines
    assert lines[-1] == "verdict: ok"


def test_act_evidence_fails_cocompactness(capsys):
    code, out, _ = run(capsys, "act", "--monoid", "bicyclic")
    assert code == 1
    lines = out.splitlines()
    assert "mode: evidence" in lines
    assert "group-order: 1" in lines
    assert "cocompact: no" in lines
    assert "failed-radius: 8" in lines
    assert lines[-1] == "verdict: fail"


def test_svarc_ok(capsys):
    code, out, _ = run(capsys, "svarc", "--monoid", "t3", "--element", "120")
    assert code == 0
    assert out == (
        "h-class-size: 6\n"
        "ball-radius: 1\n"
        "l: 1\n"
        "s: 012 120 102 201 021 210\n"
        "lambda: 2\n"
        "max-word-length: 1\n"
        "forward-ok: yes\n"
        "reverse-ok: yes\n"
        "verdict: ok\n"
    )


def test_svarc_not_generating(capsys):
    code, out, _ = run(capsys, "svarc", "--monoid", "t3", "--element", "120",
                       "--ball-radius", "0", "--l", "0")
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "verdict: not-generating"
    assert lines[1].startswith("unreachable: ")


# -- growth and ends ----------------------------------------------------------------


def test_growth_table(capsys):
    code, out, _ = run(capsys, "growth", "--monoid", "integers", "--mmax", "5")
    assert code == 0
    assert out == "m\tg\n0\t1\n1\t3\n2\t5\n3\t7\n4\t9\n5\t11\n"


def test_growth_classify_exponential(capsys):
    code, out, _ = run(capsys, "growth", "--monoid", "free2", "--mmax", "12",
                       "--classify")
    assert code == 0
    assert out.splitlines()[-1] == "classification: exponential 2.00"


def test_growth_classify_polynomial(capsys):
    code, out, _ = run(capsys, "growth", "--monoid", "bicyclic", "--mmax", "40",
                       "--classify")
    assert code == 0
    assert out.splitlines()[-1] == "classification: polynomial 2"


def test_growth_domination_witness(capsys):
    code, out, _ = run(capsys, "growth", "--monoid", "integers",
                       "--other", "free-comm2", "--mmax", "12")
    assert code == 0
    assert out == "witness: lambda=1 c=0\nchecked: 0..12\n"


def test_growth_domination_none(capsys):
    code, out, _ = run(capsys, "growth", "--monoid", "free2",
                       "--other", "free-comm2", "--mmax", "14",
                       "--lambda-max", "1", "--c-max", "1")
    assert code == 1
    assert out == (
        "witness: none-within-bounds\n"
        "note: bounded-window verdict only, not an asymptotic refutation\n"
    )


def test_ends_stable(capsys):
    code, out, _ = run(capsys, "ends", "--monoid", "integers", "--kmax", "3",
                       "--radius", "10")
    assert code == 0
    assert out == (
        "horizon: 10\n"
        "k\te\te-inner\n"
        "0\t2\t2\n"
        "1\t2\t2\n"
        "2\t2\t2\n"
        "3\t2\t2\n"
        "verdict: stable 2\n"
    )


def test_ends_growing(capsys):
    code, out, _ = run(capsys, "ends", "--monoid", "free2", "--kmax", "2",
                       "--radius", "8")
    assert code == 0
    assert out.splitlines()[-1] == "verdict: growing-at-least 2 4 8"


# -- spaces: qi-check, qi-search, quasimetric, symmetrize --------------------------


def test_qi_check_ok(capsys, tmp_path, sym2):
    fmap = write_json(tmp_path, "id.map", {"map": ["u", "v"]})
    code, out, _ = run(capsys, "qi-check", "--source", sym2, "--target", sym2,
                       "--map", fmap, "--lambda", "1", "--epsilon", "0",
                       "--mu", "0")
    assert code == 0
    assert out == (
        "lambda: 1\n"
        "epsilon: 0\n"
        "mu: 0\n"
        "note: isometric-grade claim (epsilon = 0)\n"
        "checked: 4\n"
        "skipped: 0\n"
        "mu-actual: 0\n"
        "verdict: ok\n"
    )


def test_qi_check_violation(capsys, tmp_path, chain, point1):
    fmap = write_json(tmp_path, "collapse.map", {"map": ["p", "p"]})
    code, out, _ = run(capsys, "qi-check", "--source", chain, "--target", point1,
                       "--map", fmap, "--lambda", "1", "--epsilon", "1",
                       "--mu", "0")
    assert code == 1
    assert out == (
        "lambda: 1\n"
        "epsilon: 1\n"
        "mu: 0\n"
        "checked: 3\n"
        "skipped: 0\n"
        "violation: v u lower\n"
        "mu-actual: 0\n"
        "verdict: fail\n"
    )


def test_qi_search_ok(capsys, sym2, point1):
    code, out, _ = run(capsys, "qi-search", "--source", sym2, "--target", point1,
                       "--mu-max", "0")
    assert code == 0
    assert out == (
        "map: u->p v->p\n"
        "lambda: 1\n"
        "epsilon: 1\n"
        "mu: 0\n"
        "verdict: ok\n"
    )


def test_qi_search_none(capsys, chain, sym2):
    code, out, _ = run(capsys, "qi-search", "--source", chain, "--target", sym2)
    assert code == 1
    assert out == (
        "verdict: none-within-bounds\n"
        "note: bounded search only, not a refutation\n"
    )


def test_quasimetric(capsys, line5):
    code, out, _ = run(capsys, "quasimetric", "--source", line5)
    assert code == 0
    assert out == "strongly-connected: yes\nepsilon: 0\nlambda: 4\nverdict: ok\n"
    code, out, _ = run(capsys, "quasimetric", "--source", line5,
                       "--epsilon", "1")
    assert code == 0
    assert out == "strongly-connected: yes\nepsilon: 1\nlambda: 3\nverdict: ok\n"


def test_quasimetric_not_strongly_connected(capsys, chain):
    code, out, _ = run(capsys, "quasimetric", "--source", chain)
    assert code == 1
    assert out == "strongly-connected: no\nverdict: not-quasi-metric\n"


def test_symmetrize(capsys, line5):
    code, out, _ = run(capsys, "symmetrize", "--source", line5, "--epsilon", "1")
    assert code == 0
    head, _, payload = out.partition("{")
    assert head == (
        "lambda: 3\n"
        "epsilon: 1\n"
        "lambda-prime: 4\n"
        "metric-ok: yes\n"
        "forward-ok: yes\n"
        "backward-lambda: 16\n"
        "backward-epsilon: 8\n"
        "backward-ok: yes\n"
        "verdict: ok\n"
    )
    space = descriptions.load_space(json.loads("{" + payload))
    assert [space.d(0, j) for j in range(5)] == [
        finite(v) for v in (0, 2, 3, 4, 5)
    ]


def test_symmetrize_to_file(capsys, tmp_path, line5):
    out_path = tmp_path / "sym.space"
    code, out, _ = run(capsys, "symmetrize", "--source", line5,
                       "--epsilon", "1", "--out", str(out_path))
    assert code == 0
    assert out.splitlines()[-1] == "verdict: ok"
    assert "{" not in out
    space = descriptions.load_space(json.loads(out_path.read_text()))
    assert space.d(0, 4) == finite(5)


def test_symmetrize_not_strongly_connected(capsys, chain):
    code, out, _ = run(capsys, "symmetrize", "--source", chain)
    assert code == 1
    assert out == "verdict: not-strongly-connected\n"


# -- quotients ------------------------------------------------------------------------


def test_quotient_universal_finite(capsys, tmp_path):
    classes = write_json(tmp_path, "z3univ.classes", [["0", "1", "2"]])
    code, out, _ = run(capsys, "quotient", "--monoid", "z3",
                       "--classes", classes)
    assert code == 0
    assert out == (
        "mode: exact\n"
        "classes: 1\n"
        "r-bound: 2\n"
        "lambda: 1\n"
        "epsilon: 2\n"
        "mu: 0\n"
        "mu-actual: 0\n"
        "note: quotient is trivial; distances collapse to a point\n"
        "verdict: ok\n"
    )


def test_quotient_universal_infinite_diameter(capsys, tmp_path):
    classes = write_json(tmp_path, "t2univ.classes",
                         [["01", "10", "00", "11"]])
    code, out, _ = run(capsys, "quotient", "--monoid", "t2",
                       "--classes", classes)
    assert code == 1
    assert out == (
        "mode: exact\n"
        "classes: 1\n"
        "r-bound: inf\n"
        "note: quotient is trivial; distances collapse to a point\n"
        "note: some class has infinite diameter; no (1, R, 0) certificate\n"
        "verdict: fail\n"
    )


def test_quotient_not_a_congruence(capsys, tmp_path):
    classes = write_json(tmp_path, "z3bad.classes", [["0"], ["1", "2"]])
    code, out, _ = run(capsys, "quotient", "--monoid", "z3",
                       "--classes", classes)
    assert code == 1
    assert out == "verdict: not-a-congruence\nwitness: 1 1 1 2\n"


def test_quotient_classes_must_cover(capsys, tmp_path):
    classes = write_json(tmp_path, "partial.classes", [["0"]])
    code, _, err = run(capsys, "quotient", "--monoid", "z3",
                       "--classes", classes)
    assert code == 2
    assert "does not cover" in err


def test_quotient_projection(capsys, tmp_path):
    desc = write_json(tmp_path, "prod.monoid", {
        "kind": "product",
        "left": catalog.DESCRIPTIONS["integers"],
        "right": catalog.DESCRIPTIONS["z2"],
    })
    code, out, _ = run(capsys, "quotient", "--monoid", desc,
                       "--projection", "--radius", "4")
    assert code == 0
    assert out == (
        "mode: evidence\n"
        "horizon: 4\n"
        "r-bound: 1\n"
        "checked: 244\n"
        "skipped: 80\n"
        "mu-actual: 0\n"
        "note: evidence at ball radius 4; 0 fiber pairs undecided\n"
        "verdict: ok\n"
    )


def test_quotient_projection_needs_product(capsys):
    code, _, err = run(capsys, "quotient", "--monoid", "z3", "--projection")
    assert code == 2
    assert "--projection needs a product monoid description" in err


def test_quotient_needs_classes_or_projection(capsys):
    code, _, err = run(capsys, "quotient", "--monoid", "z3")
    assert code == 2
    assert "either --classes or --projection" in err


# -- error handling ---------------------------------------------------------------------


def test_missing_file(capsys):
    code, _, err = run(capsys, "ball", "--monoid", "/nonexistent/path.json")
    assert code == 2
    assert "error:" in err


def test_bad_json(capsys, tmp_path):
    path = tmp_path / "bad.space"
    path.write_text("{", encoding="utf-8")
    code, _, err = run(capsys, "quasimetric", "--source", str(path))
    assert code == 2
    assert "error:" in err


def test_cap_exceeded(capsys):
    code, _, err = run(capsys, "ball", "--monoid", "free2", "--radius", "10",
                       "--cap", "50")
    assert code == 2
    assert "(raise --cap)" in err


def test_not_finite(capsys):
    code, _, err = run(capsys, "green", "--monoid", "bicyclic", "--cap", "100")
    assert code == 2
    assert "evidence-mode" in err


def test_unknown_subcommand(capsys):
    code, _, err = run(capsys, "bogus")
    assert code == 2


def test_invalid_space_rejected(capsys, tmp_path):
    path = write_json(tmp_path, "bad.space",
                      {"points": ["u", "v"], "dist": [[0, 1], [1, 1]]})
    code, _, err = run(capsys, "quasimetric", "--source", str(path))
    assert code == 2
    assert "error:" in err

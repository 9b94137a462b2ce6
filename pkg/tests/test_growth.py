"""Growth sequences, domination witnesses, classification, ends.

Closed forms used as oracles:
  free rank 2         g(m) = 2^(m+1) - 1
  free commutative r  g(m) = C(m+r, r)
  integers            g(m) = 2m + 1
  bicyclic            g(m) = (m+1)(m+2)/2
"""

import math

import pytest

from semigeom import catalog
from semigeom.errors import CapExceeded
from semigeom.growth import (
    Exponential,
    GrowingAtLeast,
    GrowthSequence,
    Inconclusive,
    Polynomial,
    Stable,
    Witness,
    check_domination,
    classify_growth,
    dominates_within,
    ends_profile,
    growth_sequence,
)
from semigeom.monoids import enumerate_out_ball


def free2_formula(window):
    return GrowthSequence(tuple(2 ** (m + 1) - 1 for m in range(window + 1)))


def comm_formula(rank, window):
    return GrowthSequence(
        tuple(math.comb(m + rank, rank) for m in range(window + 1))
    )


def integers_formula(window):
    return GrowthSequence(tuple(2 * m + 1 for m in range(window + 1)))


def seq(name, mmax, cap=10**6):
    return growth_sequence(catalog.monoid(name), mmax, cap)


# -- sequences ---------------------------------------------------------------------


def test_growth_matches_closed_forms():
    assert seq("free1", 12).values == tuple(m + 1 for m in range(13))
    assert seq("free2", 12).values == free2_formula(12).values
    assert seq("free-comm1", 12).values == comm_formula(1, 12).values
    assert seq("free-comm2", 12).values == comm_formula(2, 12).values
    assert seq("free-comm3", 12).values == comm_formula(3, 12).values
    assert seq("integers", 12).values == integers_formula(12).values
    assert seq("bicyclic", 12).values == tuple(
        (m + 1) * (m + 2) // 2 for m in range(13)
    )


def test_growth_of_finite_monoids_stabilizes():
    t3 = seq("t3", 10)
    assert t3.values[0] == 1
    assert t3.values[-1] == 27
    assert seq("one-a-zero", 6).values == (1, 2, 3, 3, 3, 3, 3)
    assert seq("z3", 6).values == (1, 2, 3, 3, 3, 3, 3)
    assert seq("trivial", 8).values == (1,) * 9


def test_growth_basic_shape():
    for name in catalog.names():
        g = seq(name, 8)
        assert g[0] == 1
        assert all(g[m] <= g[m + 1] for m in range(g.window))
        assert g.window == 8 and len(g) == 9


def test_growth_agrees_with_ball_enumeration():
    for name, mmax in (("bicyclic", 6), ("free2", 5), ("t2", 6)):
        m = catalog.monoid(name)
        g = growth_sequence(m, mmax)
        for r in range(mmax + 1):
            assert g[r] == len(enumerate_out_ball(m, r))


def test_growth_cap():
    with pytest.raises(CapExceeded):
        growth_sequence(catalog.monoid("free2"), 12, cap=100)


def test_growth_label_is_description():
    g = seq("z2", 3)
    assert "table" in g.label


# -- domination ----------------------------------------------------------------------


def test_domination_reflexive():
    g = seq("bicyclic", 10)
    assert dominates_within(g, g, 3, 3) == Witness(1, 0, (0, 10))


def test_linear_below_quadratic():
    a1 = seq("integers", 30)
    a2 = seq("free-comm2", 30)
    assert dominates_within(a1, a2, 10, 10) == Witness(1, 0, (0, 30))


def test_quadratic_below_linear_on_a_window_only():
    # (t+1)(t+2)/2 <= 2*(2(2t+2)+1) + 2 holds up to t = 14 and fails at 15;
    # the witness only ever claims the checked range
    a1 = seq("free-comm2", 30)
    a2 = seq("integers", 30)
    w = dominates_within(a1, a2, 10, 10)
    assert w == Witness(2, 2, (0, 14))
    assert check_domination(a1, a2, 2, 2) == list(range(15))


def test_exponential_never_below_quadratic_within_bounds():
    a1 = free2_formula(30)
    a2 = comm_formula(2, 310)  # deep enough that every t is checked
    assert dominates_within(a1, a2, 10, 10) is None
    assert check_domination(a1, a2, 10, 10) is None


def test_generating_set_change_is_mutual_domination():
    from semigeom.rewriting import RewritingSystem
    from semigeom.monoids import RewritingMonoid

    plain = catalog.monoid("bicyclic")
    system = RewritingSystem(["b", "c"], [("bc", "")])
    extra = RewritingMonoid(system, extra_generators=[("d", "cb")])
    g1 = growth_sequence(plain, 5)
    g2 = growth_sequence(extra, 5)
    assert g1.values == (1, 3, 6, 10, 15, 21)
    assert g2.values == (1, 4, 8, 13, 19, 26)
    assert dominates_within(g1, g2, 2, 2) == Witness(1, 0, (0, 5))
    assert dominates_within(g2, g1, 2, 2) == Witness(1, 1, (0, 4))


def test_domination_composes():
    a = seq("free-comm2", 30)
    b = seq("integers", 62)
    c = free2_formula(130)
    w1 = dominates_within(a, b, 10, 10)
    w2 = dominates_within(b, c, 10, 10)
    assert w1 is not None and w2 is not None
    lam = w1.lam * w2.lam
    cc = w2.lam * w1.c + w2.c + w1.lam * w2.c + w1.c
    checked = check_domination(a, c, lam, cc)
    assert checked is not None and checked[0] == 0 and len(checked) == 31


def test_product_with_z2_dominates_both_ways():
    for name in ("integers", "bicyclic"):
        base = growth_sequence(catalog.monoid(name), 12)
        prod = growth_sequence(catalog.product(name, "z2"), 12)
        assert dominates_within(base, prod, 2, 2) is not None
        assert dominates_within(prod, base, 2, 2) is not None


# -- classification --------------------------------------------------------------------


def test_classify_polynomial_ranks():
    assert classify_growth(comm_formula(1, 40)) == Polynomial(1)
    assert classify_growth(comm_formula(2, 40)) == Polynomial(2)
    assert classify_growth(comm_formula(3, 40)) == Polynomial(3)
    assert classify_growth(seq("bicyclic", 40)) == Polynomial(2)


def test_classify_exponential():
    enumerated = seq("free2", 16)
    assert enumerated.values == free2_formula(16).values
    assert classify_growth(enumerated) == Exponential(2.0)
    assert classify_growth(free2_formula(20)) == Exponential(2.0)


def test_classify_constant():
    assert classify_growth(seq("t3", 16)) == Polynomial(0)
    assert classify_growth(seq("trivial", 10)) == Polynomial(0)


def test_classify_inconclusive_on_staircase():
    values = (1, 1, 1, 1, 1, 1000, 1000, 1000, 10**6, 10**6, 10**6, 10**9, 10**9)
    verdict = classify_growth(GrowthSequence(values))
    assert isinstance(verdict, Inconclusive)
    assert "residual" in verdict.reason


def test_classify_needs_window():
    with pytest.raises(ValueError):
        classify_growth(seq("integers", 7))


# -- ends --------------------------------------------------------------------------------


def test_ends_one_ray():
    p = ends_profile(catalog.monoid("free1"), 5, 20)
    assert p.counts == (1, 1, 1, 1, 1, 1)
    assert p.counts_inner == p.counts
    assert p.verdict == Stable(1)
    assert p.horizon == 20 and p.outer_radius == 20
    assert p.inner_radii == (0, 1, 2, 3, 4, 5)


def test_ends_two_rays():
    p = ends_profile(catalog.monoid("integers"), 5, 20)
    assert p.verdict == Stable(2)
    assert p.counts == (2,) * 6


def test_ends_tree_grows():
    p = ends_profile(catalog.monoid("free2"), 4, 12)
    assert p.counts == (2, 4, 8, 16, 32)
    assert p.verdict == GrowingAtLeast((2, 4, 8, 16, 32))


def test_ends_finite_monoid():
    p = ends_profile(catalog.monoid("z3"), 2, 5)
    assert p.counts == (0, 0, 0)
    assert p.verdict == Stable(0)


def test_ends_bicyclic_columns():
    # right-multiplication edges only tie the columns c^i b^* together along
    # the b-free axis, so cutting the radius-k ball strands k+2 components
    p = ends_profile(catalog.monoid("bicyclic"), 3, 10)
    assert p.counts == (2, 3, 4, 5)
    assert p.counts_inner == (2, 3, 4, 5)
    assert p.verdict == GrowingAtLeast((2, 3, 4, 5))


def test_ends_product_with_z2_agrees():
    base = ends_profile(catalog.monoid("integers"), 4, 12)
    prod = ends_profile(catalog.product("integers", "z2"), 4, 12)
    assert base.verdict == Stable(2)
    assert prod.verdict == Stable(2)


def test_ends_validation():
    m = catalog.monoid("integers")
    with pytest.raises(ValueError):
        ends_profile(m, 3, 0)
    with pytest.raises(ValueError):
        ends_profile(m, 5, 5)

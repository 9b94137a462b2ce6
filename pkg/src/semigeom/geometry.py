"""Finite semimetric spaces and quasi-isometry checks.

A Space is a named point list with a matrix of ExtDist entries.  All the
checks treat infinity per the usual conventions (it absorbs sums and
positive scaling; an inequality with infinity on the smaller side holds
only when the larger side is infinite too) and skip pairs carrying a
horizon stamp, counting them so reports can say how much was left
undecided.

The quasi-isometric embedding inequalities for a map f and constants
(lambda, epsilon) are

    (1/lambda) d(x,y) - epsilon <= d'(f(x),f(y)) <= lambda d(x,y) + epsilon

and a quasi-isometry additionally requires the image to be mu-quasi-dense.
Epsilon is required positive by the definitions; checks accept epsilon = 0
and reports then label the claim isometric-grade.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .distances import INFINITE, ZERO, ExtDist, beyond, finite
from .errors import (
    CapExceeded,
    InvalidSpace,
    NotACongruence,
    NotStronglyConnected,
)


@dataclass(frozen=True)
class Violation:
    kind: str  # "diagonal" | "positivity" | "triangle"
    points: tuple


class Space:
    """Named points with an ExtDist distance matrix."""

    def __init__(self, points, dist):
        self.points = tuple(points)
        self.dist = tuple(tuple(row) for row in dist)

    def __len__(self):
        return len(self.points)

    def d(self, i, j):
        return self.dist[i][j]

    def index(self, name):
        return self.points.index(name)

    @property
    def exact(self):
        """True when no entry is horizon-stamped."""
        return all(d.is_decisive() for row in self.dist for d in row)


def check_axioms(points, dist):
    """First semimetric-axiom violation, or None.

    Horizon-stamped entries are skipped: an undecided distance can never
    witness a violation.
    """
    n = len(points)
    for i in range(n):
        dii = dist[i][i]
        if not (dii.is_finite() and dii.value == 0):
            return Violation("diagonal", (i,))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            dij = dist[i][j]
            if dij.is_finite() and dij.value <= 0:
                return Violation("positivity", (i, j))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                left = dist[i][k]
                a, b = dist[i][j], dist[j][k]
                if left.is_beyond() or a.is_beyond() or b.is_beyond():
                    continue
                if a.is_infinite() or b.is_infinite():
                    continue
                if left.is_infinite() or left.value > a.value + b.value:
                    return Violation("triangle", (i, j, k))
    return None


def make_space(points, matrix):
    """Build a validated Space; entries may be rationals, None (infinity),
    or ExtDist values."""
    rows = []
    for row in matrix:
        out = []
        for v in row:
            if isinstance(v, ExtDist):
                out.append(v)
            elif v is None:
                out.append(INFINITE)
            else:
                out.append(finite(v))
        rows.append(out)
    violation = check_axioms(points, rows)
    if violation is not None:
        raise InvalidSpace(violation)
    return Space(points, rows)


def space_from_ball(ball):
    """The vertex set of a Cayley ball as a Space (may carry horizon
    stamps on pairs the ball cannot decide)."""
    points = [ball.name(i) for i in range(len(ball.vertices))]
    matrix = ball.distance_matrix()
    violation = check_axioms(points, matrix)
    if violation is not None:
        raise InvalidSpace(violation)
    return Space(points, matrix)


def basepoints(space):
    """Indices whose whole row is finite (provably reach every point)."""
    return [
        i
        for i in range(len(space))
        if all(d.is_finite() for d in space.dist[i])
    ]


def is_strongly_connected(space):
    return all(d.is_finite() for row in space.dist for d in row)


def quasi_metricity_lambda(space, eps=0):
    """Least lambda >= 1 with d(y,x) <= lambda d(x,y) + eps everywhere,
    or None when the space is not strongly connected."""
    if not is_strongly_connected(space):
        return None
    eps = Fraction(eps)
    lam = Fraction(1)
    n = len(space)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            need = (space.dist[j][i].value - eps) / space.dist[i][j].value
            if need > lam:
                lam = need
    return lam


@dataclass
class QiConstants:
    lam: Fraction
    eps: Fraction
    mu: Fraction

    def __post_init__(self):
        self.lam = Fraction(self.lam)
        self.eps = Fraction(self.eps)
        self.mu = Fraction(self.mu)


@dataclass(frozen=True)
class PairViolation:
    x: int
    y: int
    side: str  # "lower" | "upper"


@dataclass
class EmbeddingReport:
    ok: bool
    violation: object
    checked: int
    skipped: int


def check_qi_embedding(f, source, target, lam, eps):
    """Check both embedding inequalities on every ordered pair; the first
    violation (row-major) is reported.  Horizon-stamped pairs are skipped
    and counted."""
    lam = Fraction(lam)
    eps = Fraction(eps)
    checked = 0
    skipped = 0
    n = len(source)
    for i in range(n):
        for j in range(n):
            dx = source.dist[i][j]
            dy = target.dist[f[i]][f[j]]
            if dx.is_beyond() or dy.is_beyond():
                skipped += 1
                continue
            checked += 1
            # lower: (1/lam) dx - eps <= dy, i.e. dx <= lam dy + lam eps
            if dx.is_infinite():
                if not dy.is_infinite():
                    return EmbeddingReport(False, PairViolation(i, j, "lower"),
                                           checked, skipped)
                continue
            if not dy.is_infinite() and dx.value > lam * (dy.value + eps):
                return EmbeddingReport(False, PairViolation(i, j, "lower"),
                                       checked, skipped)
            # upper: dy <= lam dx + eps
            if dy.is_infinite():
                return EmbeddingReport(False, PairViolation(i, j, "upper"),
                                       checked, skipped)
            if dy.value > lam * dx.value + eps:
                return EmbeddingReport(False, PairViolation(i, j, "upper"),
                                       checked, skipped)
    return EmbeddingReport(True, None, checked, skipped)


def quasi_density(f, source, target):
    """Least mu with every target point in a strong mu-ball of the image.

    Returns an ExtDist: Infinite when some point is separated from the
    image, a horizon stamp when the data cannot decide.
    """
    image = sorted(set(f))
    worst = ZERO
    for y in range(len(target)):
        best = None
        horizon = None
        for x in image:
            a = target.dist[x][y]
            b = target.dist[y][x]
            if a.is_beyond() or b.is_beyond():
                h = a.horizon if a.is_beyond() else b.horizon
                horizon = h if horizon is None else max(horizon, h)
                continue
            if a.is_infinite() or b.is_infinite():
                continue
            strong = max(a.value, b.value)
            if best is None or strong < best:
                best = strong
        if best is None:
            return INFINITE if horizon is None else beyond(horizon)
        if best > worst.value:
            worst = finite(best)
    return worst


@dataclass
class QiReport:
    ok: bool
    embedding: EmbeddingReport
    mu: ExtDist
    mu_ok: bool


def check_quasi_isometry(f, source, target, constants):
    emb = check_qi_embedding(f, source, target, constants.lam, constants.eps)
    mu = quasi_density(f, source, target)
    mu_ok = mu.is_finite() and mu.value <= constants.mu
    return QiReport(emb.ok and mu_ok, emb, mu, mu_ok)


def compose_embeddings(c1, c2):
    """Constants certifying g o f from constants for f and for g."""
    l1, e1 = Fraction(c1[0]), Fraction(c1[1])
    l2, e2 = Fraction(c2[0]), Fraction(c2[1])
    return (l1 * l2, l2 * e1 + e2)


# -- symmetrization -----------------------------------------------------------


@dataclass
class SymmetrizeResult:
    space: Space
    lam: Fraction
    eps: Fraction
    forward: QiConstants
    backward_lam: Fraction
    backward_eps: Fraction
    metric_ok: bool
    forward_ok: bool
    backward_ok: bool


def symmetrize(space, eps=0):
    """d'(x,y) = d(x,y) + d(y,x), with both certificates checked.

    The identity map into the symmetrized space is certified as a
    (lam', eps, 0)-quasi-isometry with lam' = max(lam+1, lam/(lam+1)),
    where lam is the least quasi-metricity constant at the given eps;
    conversely the original space is checked to be
    (lam'^2, 2 lam' eps)-quasi-metric.
    """
    lam = quasi_metricity_lambda(space, eps)
    if lam is None:
        raise NotStronglyConnected("symmetrization needs a strongly connected space")
    eps = Fraction(eps)
    n = len(space)
    rows = [
        [space.dist[i][j].plus(space.dist[j][i]) for j in range(n)]
        for i in range(n)
    ]
    sym = Space(space.points, rows)

    metric_ok = check_axioms(sym.points, rows) is None
    for i in range(n):
        for j in range(n):
            if rows[i][j] != rows[j][i]:
                metric_ok = False

    lam_p = max(lam + 1, lam / (lam + 1))
    identity = tuple(range(n))
    forward = QiConstants(lam_p, eps, 0)
    forward_ok = check_quasi_isometry(identity, space, sym, forward).ok

    back_lam = lam_p * lam_p
    back_eps = 2 * lam_p * eps
    backward_ok = True
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if space.dist[j][i].value > back_lam * space.dist[i][j].value + back_eps:
                backward_ok = False
    return SymmetrizeResult(
        space=sym,
        lam=lam,
        eps=eps,
        forward=forward,
        backward_lam=back_lam,
        backward_eps=back_eps,
        metric_ok=metric_ok,
        forward_ok=forward_ok,
        backward_ok=backward_ok,
    )


# -- search -------------------------------------------------------------------


def eps_grid(eps_max):
    """The epsilon grid 1/2, 1, 2, 4, ... up to eps_max."""
    eps_max = Fraction(eps_max)
    out = []
    e = Fraction(1, 2)
    while e <= eps_max:
        out.append(e)
        e *= 2
    return out


@dataclass
class SearchResult:
    point_map: tuple
    constants: QiConstants


def _pair_need(dx, dy, eps, lam_max):
    """Least lambda making both inequalities hold for one pair, or None
    when no lambda <= lam_max works.  Horizon pairs impose nothing."""
    if dx.is_beyond() or dy.is_beyond():
        return Fraction(1)
    if dx.is_infinite():
        return None if dy.is_finite() else Fraction(1)
    if dy.is_infinite():
        return None
    need = Fraction(1)
    if dx.value > 0:
        up = (dy.value - eps) / dx.value
        if up > need:
            need = up
    elif dy.value > eps:
        return None
    lo = dx.value / (dy.value + eps)
    if lo > need:
        need = lo
    return need if need <= lam_max else None


def search_quasi_isometry(source, target, lam_max, eps_max, mu_max, cap=10):
    """Backtracking search for a quasi-isometry within the stated bounds.

    Maps are enumerated by lexicographic image tuples with partial-pair
    pruning at the loosest constants; the first map admitting constants
    within bounds is returned with its lexicographically least
    (lambda, epsilon).  A None result refutes nothing beyond the bounds.
    """
    n, m = len(source), len(target)
    if n > cap or m > cap:
        raise CapExceeded(cap, "search is capped at %d points per space" % cap)
    grid = eps_grid(eps_max)
    if not grid or m == 0:
        return None
    lam_max = Fraction(lam_max)
    mu_max = Fraction(mu_max)
    eps_hi = grid[-1]
    assign = []

    def extend_ok(k):
        for i in range(k):
            for a, b in ((i, k), (k, i)):
                need = _pair_need(
                    source.dist[a][b],
                    target.dist[assign[a]][assign[b]],
                    eps_hi,
                    lam_max,
                )
                if need is None:
                    return False
        return True

    def leaf():
        f = tuple(assign)
        mu = quasi_density(f, source, target)
        if not (mu.is_finite() and mu.value <= mu_max):
            return None
        best = None
        for eps in grid:
            lam = Fraction(1)
            for i in range(n):
                for j in range(n):
                    if i == j:
                        continue
                    need = _pair_need(
                        source.dist[i][j], target.dist[f[i]][f[j]], eps, lam_max
                    )
                    if need is None:
                        lam = None
                        break
                    if need > lam:
                        lam = need
                if lam is None:
                    break
            if lam is not None and (best is None or (lam, eps) < best):
                best = (lam, eps)
        if best is None:
            return None
        return SearchResult(f, QiConstants(best[0], best[1], mu.value))

    def dfs():
        k = len(assign)
        if k == n:
            return leaf()
        for img in range(m):
            assign.append(img)
            if extend_ok(k):
                found = dfs()
                if found is not None:
                    return found
            assign.pop()
        return None

    return dfs()


# -- quotients ----------------------------------------------------------------


def monoid_space(fm):
    """The whole finite monoid as a space under right Cayley distances."""
    n = len(fm)
    matrix = []
    for s in range(n):
        dist = [-1] * n
        dist[s] = 0
        queue = [s]
        qi = 0
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            for g in fm.gen_indices:
                v = fm.table[u][g]
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        matrix.append([finite(d) if d >= 0 else INFINITE for d in dist])
    return Space(fm.names, matrix)


def is_congruence(fm, class_of):
    """None when the partition respects products; else a witness
    (x, y, x2, y2) of classwise-equal pairs with differing product class."""
    n = len(fm)
    rep = {}
    for x in range(n):
        for y in range(n):
            key = (class_of[x], class_of[y])
            c = class_of[fm.table[x][y]]
            prev = rep.get(key)
            if prev is None:
                rep[key] = (x, y, c)
            elif prev[2] != c:
                return (prev[0], prev[1], x, y)
    return None


@dataclass
class QuotientReport:
    ok: bool
    r_bound: ExtDist
    constants: object
    embedding: object
    mu: object
    classes: list
    notes: list = field(default_factory=list)


def check_quotient_qi(fm, class_of):
    """Check the natural map onto the quotient by a congruence.

    The certificate constants are (1, R, 0) with R the largest class
    diameter in the monoid's right Cayley distances; when some class has
    infinite diameter the map provably fails and the report says so.
    """
    witness = is_congruence(fm, class_of)
    if witness is not None:
        raise NotACongruence(witness)

    from .monoids import TableMonoid

    classes = {}
    for i, c in enumerate(class_of):
        classes.setdefault(c, []).append(i)
    ordered = sorted(classes.values(), key=lambda members: members[0])
    cid = {}
    for new, members in enumerate(ordered):
        for i in members:
            cid[class_of[i]] = new
    phi = tuple(cid[c] for c in class_of)

    source = monoid_space(fm)
    r_bound = ZERO
    for members in ordered:
        for x in members:
            for y in members:
                d = source.dist[x][y]
                if d.is_infinite():
                    r_bound = INFINITE
                elif r_bound.is_finite() and d.value > r_bound.value:
                    r_bound = d

    names = [fm.names[members[0]] for members in ordered]
    table = [
        [phi[fm.table[a[0]][b[0]]] for b in ordered]
        for a in ordered
    ]
    gen_names = []
    for g in fm.gen_indices:
        nm = names[phi[g]]
        if nm not in gen_names and phi[g] != phi[fm.identity_index]:
            gen_names.append(nm)
    quotient = TableMonoid(names, table, phi[fm.identity_index], gen_names)

    from .green import FiniteMonoid

    target = monoid_space(FiniteMonoid(quotient))
    notes = []
    class_names = [[fm.names[i] for i in members] for members in ordered]
    if len(ordered) == 1 and len(fm) > 1:
        notes.append("quotient is trivial; distances collapse to a point")
    if not r_bound.is_finite():
        notes.append("some class has infinite diameter; no (1, R, 0) certificate")
        return QuotientReport(False, r_bound, None, None, None, class_names, notes)
    if r_bound.value == 0:
        notes.append("isometric-grade certificate (epsilon = 0)")
    constants = QiConstants(1, r_bound.value, 0)
    report = check_quasi_isometry(phi, source, target, constants)
    return QuotientReport(
        report.ok, r_bound, constants, report.embedding, report.mu,
        class_names, notes,
    )


@dataclass
class ProjectionReport:
    ok: bool
    r_bound: ExtDist
    horizon: int
    embedding: object
    mu: object
    skipped_fiber_pairs: int
    notes: list = field(default_factory=list)


def check_product_projection_qi(pm, radius, cap=None):
    """Horizon-stamped evidence that projecting a product monoid onto its
    left factor is a (1, R, 0)-quasi-isometry, compared at equal radii.

    R is the largest decisive fiber diameter seen in the ball; pairs the
    ball cannot decide are skipped and counted.
    """
    from . import cayley
    from .monoids import DEFAULT_CAP, Element

    if cap is None:
        cap = DEFAULT_CAP
    prod_ball = cayley.build_cayley_ball(pm, radius, cap=cap)
    left_ball = cayley.build_cayley_ball(pm.left, radius, cap=cap)
    phi = []
    fibers = {}
    for i, v in enumerate(prod_ball.vertices):
        lk = v.key[0]
        phi.append(left_ball.index[Element(pm.left, lk)])
        fibers.setdefault(lk, []).append(i)
    phi = tuple(phi)

    r_bound = ZERO
    skipped = 0
    for members in fibers.values():
        for x in members:
            for y in members:
                d = prod_ball.distance(x, y)
                if d.is_beyond():
                    skipped += 1
                elif d.is_infinite():
                    r_bound = INFINITE
                elif r_bound.is_finite() and d.value > r_bound.value:
                    r_bound = d

    source = space_from_ball(prod_ball)
    target = space_from_ball(left_ball)
    notes = ["evidence at ball radius %d; %d fiber pairs undecided"
             % (radius, skipped)]
    if not r_bound.is_finite():
        notes.append("a fiber is provably disconnected; no (1, R, 0) certificate")
        return ProjectionReport(False, r_bound, radius, None, None, skipped, notes)
    emb = check_qi_embedding(phi, source, target, 1, r_bound.value)
    mu = quasi_density(phi, source, target)
    ok = emb.ok and mu.is_finite() and mu.value <= 0
    return ProjectionReport(ok, r_bound, radius, emb, mu, skipped, notes)

"""Green's relations, Schutzenberger groups, and action checks.

Everything here that claims exactness requires a finite monoid: the
FiniteMonoid view enumerates all elements and stores an integer
multiplication table, after which the R/L/H partitions are brute-force
ideal comparisons.  The Schutzenberger group of an H-class H is the left
stabilizer {s : sH = H} quotiented by the kernel of its action on H, so
group elements are literally permutations of H.

The action checks run the group against the induced digraph on the
R-class (whose internal path distances are the true word-metric
distances, since a product path between R-equivalent elements never
leaves the R-class).  For infinite monoids a horizon-stamped evidence
mode works inside a radius-r ball instead and never claims more than the
ball shows.
"""

from dataclasses import dataclass, field

from . import cayley
from .errors import NotAnHClass, NotFinite, NotGenerating
from .monoids import DEFAULT_CAP, enumerate_all

# finiteness probes stop here by default: proving a monoid finite means
# exhausting it, which is pointlessly slow when the caller only wants an
# evidence-mode fallback
PROBE_CAP = 4096


class FiniteMonoid:
    """A fully enumerated monoid with an integer multiplication table.

    elements keep the deterministic ball-enumeration order, so index 0 is
    the identity and indices are comparable across runs.
    """

    def __init__(self, monoid, cap=DEFAULT_CAP):
        elements = enumerate_all(monoid, cap)
        if elements is None:
            raise NotFinite("monoid not exhausted within cap %d" % cap)
        self.monoid = monoid
        self.elements = elements
        self.names = [monoid.element_name(e) for e in elements]
        key_index = {e.key: i for i, e in enumerate(elements)}
        self.index = key_index
        n = len(elements)
        mul = monoid._mul_key
        keys = [e.key for e in elements]
        self.table = [
            [key_index[mul(keys[i], keys[j])] for j in range(n)] for i in range(n)
        ]
        self.identity_index = key_index[monoid.identity.key]
        self.gen_symbols = list(monoid.generator_symbols)
        self.gen_indices = [key_index[k] for k in monoid._gen_keys]
        self._green = None

    def __len__(self):
        return len(self.elements)

    def mult(self, i, j):
        return self.table[i][j]

    def element_index(self, x):
        """Index of an Element, a canonical name, or an index."""
        if isinstance(x, int):
            return x
        if isinstance(x, str):
            return self.names.index(x)
        return self.index[x.key]

    def green(self):
        if self._green is None:
            self._green = green_relations(self)
        return self._green


@dataclass
class GreenStructure:
    """R/L/H partitions (lists of sorted index lists, ordered by least
    member) plus the full R-order as comparable class pairs."""

    r_classes: list
    l_classes: list
    h_classes: list
    r_class_of: list
    l_class_of: list
    h_class_of: list
    r_order: list  # pairs (i, j), i != j, with R_i <=_R R_j

    def h_class_sets(self):
        return [frozenset(h) for h in self.h_classes]


def _partition(n, key_of):
    groups = {}
    for i in range(n):
        groups.setdefault(key_of(i), []).append(i)
    classes = sorted(groups.values(), key=lambda c: c[0])
    class_of = [0] * n
    for ci, members in enumerate(classes):
        for i in members:
            class_of[i] = ci
    return classes, class_of


def green_relations(fm):
    """Exact R, L, and H partitions by comparing principal ideals."""
    n = len(fm)
    table = fm.table
    right_ideal = [frozenset(table[i]) for i in range(n)]
    left_ideal = [frozenset(table[j][i] for j in range(n)) for i in range(n)]
    r_classes, r_of = _partition(n, lambda i: right_ideal[i])
    l_classes, l_of = _partition(n, lambda i: left_ideal[i])
    h_classes, h_of = _partition(n, lambda i: (right_ideal[i], left_ideal[i]))
    r_order = []
    for i, ci in enumerate(r_classes):
        for j, cj in enumerate(r_classes):
            if i != j and right_ideal[ci[0]] <= right_ideal[cj[0]]:
                r_order.append((i, j))
    return GreenStructure(r_classes, l_classes, h_classes, r_of, l_of, h_of, r_order)


def is_group(fm):
    """True iff every element has a two-sided inverse."""
    e = fm.identity_index
    n = len(fm)
    for x in range(n):
        if not any(fm.table[x][y] == e and fm.table[y][x] == e for y in range(n)):
            return False
    return True


class SchutzGroup:
    """The left Schutzenberger group of an H-class, as permutations of H.

    perms[k] is the action of the k-th group element on h_class (position
    tuples); representatives[k] is the least stabilizer element inducing
    it.  Group multiplication composes actions: (st)h = s(th).
    """

    def __init__(self, fm, h_class, perms, representatives):
        self.fm = fm
        self.h_class = h_class
        self.perms = perms
        self.representatives = representatives
        self.rep_names = [fm.names[r] for r in representatives]
        index = {p: k for k, p in enumerate(perms)}
        m = len(perms)
        self.table = [
            [index[_compose(perms[a], perms[b])] for b in range(m)] for a in range(m)
        ]
        self.identity_index = index[tuple(range(len(h_class)))]

    @property
    def order(self):
        return len(self.perms)

    def inverse(self, k):
        return self.table[k].index(self.identity_index)


def _compose(p, q):
    # action of the product st: first act by t, then by s
    return tuple(p[q[i]] for i in range(len(p)))


def schutz_group(fm, h_class):
    """Stab(H) = {s : sH = H} made faithful on H.

    Raises NotAnHClass unless h_class is exactly one of the monoid's
    H-classes.
    """
    members = sorted(fm.element_index(x) for x in h_class)
    gs = fm.green()
    if members not in [sorted(h) for h in gs.h_classes]:
        raise NotAnHClass("%r is not an H-class" % [fm.names[i] for i in members])
    pos = {x: k for k, x in enumerate(members)}
    hset = frozenset(members)
    seen = {}
    order = []
    for s in range(len(fm)):
        images = [fm.table[s][h] for h in members]
        if frozenset(images) != hset:
            continue
        perm = tuple(pos[y] for y in images)
        if perm not in seen:
            seen[perm] = s
            order.append(perm)
    reps = [seen[p] for p in order]
    group = SchutzGroup(fm, members, order, reps)
    # sigma really is a congruence: composing two induced actions must
    # land back in the computed set
    assert all(v is not None for row in group.table for v in row)
    return group


# -- the action of G(H) on the Schutzenberger graph ---------------------------


class _RClassGeometry:
    """The R-class digraph with exact distances and the group action.

    Paths between R-equivalent elements never leave the R-class (every
    prefix generates the same right ideal), so BFS inside the induced
    subgraph computes true d_A distances; the R-class is one strongly
    connected component, hence all distances are finite.
    """

    def __init__(self, fm, h_class):
        self.fm = fm
        self.group = schutz_group(fm, h_class)
        gs = fm.green()
        r_index = gs.r_class_of[self.group.h_class[0]]
        self.vertices = list(gs.r_classes[r_index])
        self.vpos = {x: k for k, x in enumerate(self.vertices)}
        n = len(self.vertices)
        self.out_adj = [[] for _ in range(n)]
        self.edges = []
        for k, x in enumerate(self.vertices):
            for sym, g in zip(fm.gen_symbols, fm.gen_indices):
                y = fm.table[x][g]
                t = self.vpos.get(y)
                if t is not None:
                    self.out_adj[k].append(t)
                    self.edges.append((k, t, sym))
        self.dist = [self._bfs(s) for s in range(n)]
        self.base = self.vpos[self.group.h_class[0]]
        # left multiplication by a stabilizer permutes the whole R-class
        self.vperms = []
        for rep in self.group.representatives:
            images = [self.vpos[fm.table[rep][x]] for x in self.vertices]
            assert sorted(images) == list(range(n))
            self.vperms.append(images)
        self.h_of_vertex = [gs.h_class_of[x] for x in self.vertices]

    def _bfs(self, s):
        dist = [-1] * len(self.vertices)
        dist[s] = 0
        queue = [s]
        qi = 0
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            for v in self.out_adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        return dist

    def vertex_name(self, k):
        return self.fm.names[self.vertices[k]]

    def strong_ball(self, radius):
        d = self.dist
        b = self.base
        return [v for v in range(len(self.vertices))
                if d[b][v] <= radius and d[v][b] <= radius]

    def out_ball(self, radius):
        d = self.dist[self.base]
        return [v for v in range(len(self.vertices)) if d[v] <= radius]


@dataclass
class ActionReport:
    exact: bool
    group_order: int
    isometric: bool
    counterexample: object
    outward_proper: bool
    orbit_meet_sizes: list
    cocompact: bool
    covering_radius: object
    failed_radius: object
    notes: list = field(default_factory=list)


def check_schutz_action(m, h_element=None, radius=8, cap=DEFAULT_CAP,
                        probe_cap=PROBE_CAP):
    """Verify the Schutzenberger action is isometric, outward proper, and
    (where the ball shows it) cocompact.

    Finite monoids get the exact R-class computation for the H-class of
    h_element (default: identity); infinite ones get ball evidence at the
    stated radius with the identity's in-ball H-class.  Finiteness is
    probed only up to probe_cap elements; a finite monoid bigger than that
    is treated as infinite unless probe_cap is raised.
    """
    try:
        fm = FiniteMonoid(m, cap=min(cap, probe_cap))
    except NotFinite:
        return check_schutz_action_ball(m, radius, cap=cap)
    h = fm.identity_index if h_element is None else fm.element_index(h_element)
    gs = fm.green()
    return check_schutz_action_finite(fm, gs.h_classes[gs.h_class_of[h]], radius=radius)


def check_schutz_action_finite(fm, h_class, radius=8):
    geo = _RClassGeometry(fm, h_class)
    n = len(geo.vertices)
    isometric = True
    counterexample = None
    for g, perm in enumerate(geo.vperms):
        for u in range(n):
            row = geo.dist[u]
            prow = geo.dist[perm[u]]
            for v in range(n):
                if prow[perm[v]] != row[v]:
                    isometric = False
                    counterexample = (
                        geo.group.rep_names[g],
                        geo.vertex_name(u),
                        geo.vertex_name(v),
                        row[v],
                        prow[perm[v]],
                    )
                    break
            if counterexample:
                break
        if counterexample:
            break

    sizes = []
    for rho in range(1, radius + 1):
        ball = set(geo.out_ball(rho))
        meets = sum(
            1 for perm in geo.vperms if any(perm[v] in ball for v in ball)
        )
        sizes.append((rho, meets))

    h_ids = sorted(set(geo.h_of_vertex))
    covering = None
    lam = 0
    while covering is None:
        met = {geo.h_of_vertex[v] for v in geo.strong_ball(lam)}
        if all(h in met for h in h_ids):
            covering = lam
        else:
            lam += 1
    return ActionReport(
        exact=True,
        group_order=geo.group.order,
        isometric=isometric,
        counterexample=counterexample,
        outward_proper=True,
        orbit_meet_sizes=sizes,
        cocompact=True,
        covering_radius=covering,
        failed_radius=None,
        notes=["exact: finite monoid, %d H-classes in the R-class" % len(h_ids)],
    )


def ball_h_class_of_identity(m, radius, cap=DEFAULT_CAP):
    """In-ball evidence for the identity's H-class: elements mutually
    reachable with the identity in both the right and the left ball."""
    rball = cayley.build_cayley_ball(m, radius, side=cayley.RIGHT, cap=cap)
    lball = cayley.build_cayley_ball(m, radius, side=cayley.LEFT, cap=cap)
    rscc = cayley.strongly_connected_components(rball)
    lscc = cayley.strongly_connected_components(lball)
    right = {rball.vertices[v].key for v in rscc.components[rscc.comp_of[0]]}
    left = {lball.vertices[v].key for v in lscc.components[lscc.comp_of[0]]}
    keys = right & left
    return [v for v in rball.vertices if v.key in keys], rball


def check_schutz_action_ball(m, radius, cap=DEFAULT_CAP):
    """Horizon-stamped evidence mode for infinite monoids."""
    h_class, rball = ball_h_class_of_identity(m, radius, cap=cap)
    hkeys = {h.key for h in h_class}
    pos = {h.key: k for k, h in enumerate(h_class)}
    # stabilizer candidates are drawn from the ball only: evidence
    seen = {}
    order = []
    reps = []
    for s in rball.vertices:
        images = [m.multiply(s, h) for h in h_class]
        if {x.key for x in images} != hkeys:
            continue
        perm = tuple(pos[x.key] for x in images)
        if perm not in seen:
            seen[perm] = s
            order.append(perm)
            reps.append(s)

    graph = cayley.schutzenberger_ball(m, m.identity, radius, cap=cap)
    nverts = len(graph.vertices)
    vkey = {v.key: i for i, v in enumerate(graph.vertices)}
    vperms = []
    usable = []
    notes = ["evidence: ball radius %d, group scanned within ball" % radius]
    for k, s in enumerate(reps):
        images = [m.multiply(s, v) for v in graph.vertices]
        if all(x.key in vkey for x in images):
            vperms.append([vkey[x.key] for x in images])
            usable.append(k)
        else:
            notes.append("action of %s leaves the explored component"
                         % m.element_name(s))

    isometric = True
    counterexample = None
    for k, perm in zip(usable, vperms):
        for u in range(nverts):
            for v in range(nverts):
                d1 = graph.distance(u, v)
                d2 = graph.distance(perm[u], perm[v])
                if d1.is_decisive() and d2.is_decisive() and d1 != d2:
                    isometric = False
                    counterexample = (
                        m.element_name(reps[k]),
                        graph.name(u),
                        graph.name(v),
                        d1.format(),
                        d2.format(),
                    )

    def within(u, v, rho):
        d = graph.distance(u, v)
        return d.is_finite() and d.value <= rho

    base = 0
    sizes = []
    for rho in range(1, radius + 1):
        ball = {v for v in range(nverts) if within(base, v, rho)}
        meets = sum(1 for perm in vperms if any(perm[v] in ball for v in ball))
        sizes.append((rho, meets))

    covering = None
    for lam in range(radius):
        strong = [v for v in range(nverts)
                  if within(base, v, lam) and within(v, base, lam)]
        hit = set()
        for perm in vperms:
            hit.update(perm[v] for v in strong)
        if len(hit) == nverts:
            covering = lam
            break
    return ActionReport(
        exact=False,
        group_order=len(order),
        isometric=isometric,
        counterexample=counterexample,
        outward_proper=True,
        orbit_meet_sizes=sizes,
        cocompact=covering is not None,
        covering_radius=covering,
        failed_radius=None if covering is not None else radius,
        notes=notes,
    )


# -- Svarc-Milnor generating sets ---------------------------------------------


@dataclass
class SvarcReport:
    s_indices: list
    s_names: list
    word_length: list
    lam: int
    forward_ok: bool
    reverse_ok: bool
    ball_vertices: list
    ball_radius: int
    l: int


def svarc_milnor(fm, h_class, ball_radius=1, l=1):
    """Extract S = {g : d(B, gB) <= l} from a strong ball B and verify the
    two quasi-isometry bounds of the group-versus-graph comparison.

    With l = 1 (one edge, the resolution of the graph) the bounds checked
    for every group element g are

        d_S(e, g) <= (1/l) d(x0, g x0) + 1    and
        d(x0, g x0) <= lambda d_S(e, g),  lambda = max_s d(x0, s x0).

    Raises NotGenerating when S fails to generate the group.
    """
    geo = _RClassGeometry(fm, h_class)
    group = geo.group
    x0 = geo.base
    ball = geo.strong_ball(ball_radius)
    s_set = []
    for g, perm in enumerate(geo.vperms):
        translate = [perm[v] for v in ball]
        sep = min(geo.dist[u][w] for u in ball for w in translate)
        if sep <= l:
            s_set.append(g)

    length = [-1] * group.order
    length[group.identity_index] = 0
    queue = [group.identity_index]
    qi = 0
    while qi < len(queue):
        g = queue[qi]
        qi += 1
        for s in s_set:
            t = group.table[g][s]
            if length[t] < 0:
                length[t] = length[g] + 1
                queue.append(t)
    missing = [group.rep_names[g] for g in range(group.order) if length[g] < 0]
    if missing:
        raise NotGenerating(missing)

    lam = max(geo.dist[x0][geo.vperms[s][x0]] for s in s_set)
    forward_ok = True
    reverse_ok = True
    for g in range(group.order):
        orbit_dist = geo.dist[x0][geo.vperms[g][x0]]
        if l > 0 and length[g] * l > orbit_dist + l:
            forward_ok = False
        if orbit_dist > lam * length[g]:
            reverse_ok = False
    return SvarcReport(
        s_indices=s_set,
        s_names=[group.rep_names[g] for g in s_set],
        word_length=length,
        lam=lam,
        forward_ok=forward_ok,
        reverse_ok=reverse_ok,
        ball_vertices=[geo.vertex_name(v) for v in ball],
        ball_radius=ball_radius,
        l=l,
    )

"""Cayley graph balls, path distances with horizon stamps, components,
Schutzenberger graph approximations, and geodesic realization.

A ball is the out-neighbourhood of a base element at a given radius in the
right (or left) Cayley graph, stored as an explicit labelled digraph.  Path
distances inside the ball are exact values of the ball digraph; they carry
the ball radius as a horizon: a shortest in-ball path longer than the
radius, or a missing path that might re-enter from outside, is reported as
ExceedsHorizon rather than a guessed number.  Infinity is only reported
when the forward-reachable set of the source is fully explored.

The geodesic realization treats every edge as a directed unit segment; its
points are the vertices plus interior edge points (e, mu) with rational
0 < mu < 1, and distances follow the exact segment formulas.
"""

from fractions import Fraction

from .distances import INFINITE, beyond, finite
from .monoids import DEFAULT_CAP, Element, enumerate_all

RIGHT = "right"
LEFT = "left"


class CayleyBall:
    """A radius-r ball of a Cayley graph as an explicit digraph.

    vertices[i] is an Element; lengths[i] is the BFS depth from the base
    (the word length when the base is the identity).  edges hold
    (source, target, label) triples ordered by source, then generator
    order.  complete[i] says whether every product of vertex i by a
    generator lands inside the ball, i.e. the vertex's out-edges are fully
    visible.
    """

    def __init__(self, monoid, side, radius, base, vertices, lengths, edges, complete):
        self.monoid = monoid
        self.side = side
        self.radius = radius
        self.base = base
        self.vertices = vertices
        self.lengths = lengths
        self.edges = edges
        self.complete = complete
        self.index = {v: i for i, v in enumerate(vertices)}
        self.out_adj = [[] for _ in vertices]
        for eid, (u, v, _label) in enumerate(edges):
            self.out_adj[u].append((v, eid))
        self._dist_cache = {}

    def __len__(self):
        return len(self.vertices)

    def name(self, i):
        return self.monoid.element_name(self.vertices[i])

    def index_of(self, x):
        """Vertex index of an Element (or pass an index through)."""
        if isinstance(x, Element):
            return self.index[x]
        return int(x)

    def in_degrees(self):
        deg = [0] * len(self.vertices)
        for _u, v, _label in self.edges:
            deg[v] += 1
        return deg

    def out_degrees(self):
        return [len(a) for a in self.out_adj]

    def _bfs_from(self, s):
        if s in self._dist_cache:
            return self._dist_cache[s]
        dist = [-1] * len(self.vertices)
        parent_edge = [-1] * len(self.vertices)
        dist[s] = 0
        queue = [s]
        qi = 0
        all_complete = self.complete[s]
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            for v, eid in self.out_adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    parent_edge[v] = eid
                    if not self.complete[v]:
                        all_complete = False
                    queue.append(v)
        result = (dist, parent_edge, all_complete)
        self._dist_cache[s] = result
        return result

    def distance(self, u, v):
        """Shortest directed in-ball path length as an ExtDist.

        Finite(n) when an in-ball path of minimal length n <= radius exists;
        Infinite when no path exists and the source's reachable set is fully
        explored (so no outside detour can exist); ExceedsHorizon(radius)
        otherwise.
        """
        u = self.index_of(u)
        v = self.index_of(v)
        dist, _parents, all_complete = self._bfs_from(u)
        n = dist[v]
        if n >= 0:
            if n <= self.radius:
                return finite(n)
            return beyond(self.radius)
        if all_complete:
            return INFINITE
        return beyond(self.radius)

    def geodesic(self, u, v):
        """Label word of one shortest in-ball path, or None if unreached."""
        u = self.index_of(u)
        v = self.index_of(v)
        dist, parent_edge, _ = self._bfs_from(u)
        if dist[v] < 0:
            return None
        labels = []
        cur = v
        while cur != u:
            eid = parent_edge[cur]
            src, _dst, label = self.edges[eid]
            labels.append(label)
            cur = src
        labels.reverse()
        return labels

    def distance_matrix(self):
        return [
            [self.distance(i, j) for j in range(len(self.vertices))]
            for i in range(len(self.vertices))
        ]


def build_cayley_ball(m, radius, side=RIGHT, base=None, cap=DEFAULT_CAP):
    """The radius-r out-ball of base (default: identity) as a CayleyBall.

    side="right" multiplies generators on the right (edges x -> x*a);
    side="left" on the left (edges x -> a*x).  Every edge with both ends in
    the ball is recorded, including edges between boundary vertices.
    """
    if side not in (RIGHT, LEFT):
        raise ValueError("side must be 'right' or 'left'")
    if base is None:
        base = m.identity
    gens = list(zip(m._gen_syms, m._gen_keys))
    start = base.key
    index = {start: 0}
    vertices = [start]
    lengths = [0]
    i = 0
    while i < len(vertices):
        key = vertices[i]
        d = lengths[i]
        i += 1
        if d >= radius:
            continue
        for _sym, gk in gens:
            nk = m._mul_key(key, gk) if side == RIGHT else m._mul_key(gk, key)
            if nk not in index:
                if len(vertices) >= cap:
                    from .errors import CapExceeded

                    raise CapExceeded(cap)
                index[nk] = len(vertices)
                vertices.append(nk)
                lengths.append(d + 1)
    edges = []
    complete = [True] * len(vertices)
    for u, key in enumerate(vertices):
        for sym, gk in gens:
            nk = m._mul_key(key, gk) if side == RIGHT else m._mul_key(gk, key)
            t = index.get(nk)
            if t is None:
                complete[u] = False
            else:
                edges.append((u, t, sym))
    elems = [Element(m, k) for k in vertices]
    return CayleyBall(m, side, radius, base, elems, lengths, edges, complete)


def full_cayley_graph(m, side=RIGHT, cap=DEFAULT_CAP):
    """The whole Cayley graph of a finite monoid, every vertex complete."""
    elements = enumerate_all(m, cap)
    if elements is None:
        from .errors import NotFinite

        raise NotFinite("monoid is not finite within cap %d" % cap)
    # enumerate_all is breadth-first, so the last discovery depth bounds
    # every word length; one extra step of slack keeps all vertices interior.
    ball = build_cayley_ball(m, len(elements) + 1, side=side, cap=cap)
    assert all(ball.complete)
    return ball


class SccResult:
    """Strongly connected components of a ball digraph.

    components are vertex-index lists ordered by first (BFS) member;
    verified[c] is True when every vertex reachable from the component is
    complete, so the component provably equals the component of the full
    graph.
    """

    def __init__(self, components, verified, comp_of):
        self.components = components
        self.verified = verified
        self.comp_of = comp_of


def strongly_connected_components(ball):
    """Tarjan's algorithm, iterative to keep large balls off the stack."""
    n = len(ball.vertices)
    index_of = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack = []
    comp_of = [-1] * n
    components = []
    counter = [0]

    for root in range(n):
        if index_of[root] >= 0:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index_of[v] = low[v] = counter[0]
                counter[0] += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            adj = ball.out_adj[v]
            while pi < len(adj):
                w = adj[pi][0]
                pi += 1
                if index_of[w] < 0:
                    work[-1] = (v, pi)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index_of[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index_of[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp_of[w] = len(components)
                    comp.append(w)
                    if w == v:
                        break
                comp.sort()
                components.append(comp)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])

    # renumber components by their first vertex for a stable order
    order = sorted(range(len(components)), key=lambda c: components[c][0])
    renum = {old: new for new, old in enumerate(order)}
    components = [components[old] for old in order]
    comp_of = [renum[c] for c in comp_of]

    # verified: every vertex in the component's forward closure is complete
    k = len(components)
    succ = [set() for _ in range(k)]
    for u, v, _label in ball.edges:
        cu, cv = comp_of[u], comp_of[v]
        if cu != cv:
            succ[cu].add(cv)
    verified = [None] * k

    def resolve(c):
        pending = [c]
        while pending:
            cur = pending[-1]
            if verified[cur] is not None:
                pending.pop()
                continue
            ready = True
            for s in succ[cur]:
                if verified[s] is None:
                    pending.append(s)
                    ready = False
            if not ready:
                continue
            ok = all(ball.complete[v] for v in components[cur])
            ok = ok and all(verified[s] for s in succ[cur])
            verified[cur] = ok
            pending.pop()

    for c in range(k):
        resolve(c)
    return SccResult(components, verified, comp_of)


def component_poset(ball, scc=None):
    """Reachability order between components: C <= D iff D reaches C."""
    if scc is None:
        scc = strongly_connected_components(ball)
    k = len(scc.components)
    adj = [set() for _ in range(k)]
    for u, v, _label in ball.edges:
        cu, cv = scc.comp_of[u], scc.comp_of[v]
        if cu != cv:
            adj[cu].add(cv)
    reach = [set() for _ in range(k)]
    for c in range(k):
        seen = {c}
        todo = [c]
        while todo:
            cur = todo.pop()
            for s in adj[cur]:
                if s not in seen:
                    seen.add(s)
                    todo.append(s)
        reach[c] = seen
    return reach


def schutzenberger_ball(m, h, radius, cap=DEFAULT_CAP):
    """The strongly connected component of h inside its radius-r out-ball.

    This is the in-ball approximation of the Schutzenberger graph of the
    R-class of h: vertices mutually reachable with h using in-ball paths.
    Vertex order, lengths (distances from h), and edges are induced from
    the ball; completeness is recomputed relative to the subgraph.
    """
    ball = build_cayley_ball(m, radius, side=RIGHT, base=h, cap=cap)
    scc = strongly_connected_components(ball)
    comp = set(scc.components[scc.comp_of[0]])
    keep = [i for i in range(len(ball.vertices)) if i in comp]
    remap = {old: new for new, old in enumerate(keep)}
    vertices = [ball.vertices[i] for i in keep]
    lengths = [ball.lengths[i] for i in keep]
    kept_keys = {v.key for v in vertices}
    edges = []
    complete = []
    gens = list(zip(m._gen_syms, m._gen_keys))
    for old in keep:
        key = ball.vertices[old].key
        ok = True
        for sym, gk in gens:
            nk = m._mul_key(key, gk)
            if nk in kept_keys:
                edges.append((remap[old], remap[ball.index[Element(m, nk)]], sym))
            else:
                ok = False
        complete.append(ok)
    return CayleyBall(m, RIGHT, radius, h, vertices, lengths, edges, complete)


# -- geodesic realization ----------------------------------------------------


def vertex_point(i):
    return ("v", i)


def edge_point(edge_id, mu):
    mu = Fraction(mu)
    if not 0 < mu < 1:
        raise ValueError("edge point parameter must satisfy 0 < mu < 1")
    return ("e", edge_id, mu)


def realized_distance(ball, p, q):
    """Exact distance between realized points (vertices or edge points).

    Each edge is a unit directed segment: entering an edge is only possible
    at its source and leaving at its target, except that two points on the
    same edge in increasing parameter order are joined inside the segment.
    """
    if p[0] == "v" and q[0] == "v":
        return ball.distance(p[1], q[1])
    if p[0] == "e" and q[0] == "v":
        _e, eid, mu = p
        _src, dst, _label = ball.edges[eid]
        return ball.distance(dst, q[1]).plus(1 - mu)
    if p[0] == "v" and q[0] == "e":
        _e, eid, mu = q
        src, _dst, _label = ball.edges[eid]
        return ball.distance(p[1], src).plus(mu)
    _e1, e1, mu = p
    _e2, e2, nu = q
    if e1 == e2 and nu >= mu:
        return finite(nu - mu)
    _src1, dst1, _l1 = ball.edges[e1]
    src2, _dst2, _l2 = ball.edges[e2]
    return ball.distance(dst1, src2).plus((1 - mu) + nu)


def realized_point_name(ball, p):
    if p[0] == "v":
        return ball.name(p[1])
    _e, eid, mu = p
    u, v, label = ball.edges[eid]
    return "%s-%s->%s@%s" % (ball.name(u), label, ball.name(v), mu)


def sample_points(ball, samples_per_edge=1):
    """All vertices plus evenly spaced interior points on every edge."""
    points = [vertex_point(i) for i in range(len(ball.vertices))]
    s = int(samples_per_edge)
    for eid in range(len(ball.edges)):
        for k in range(1, s + 1):
            points.append(edge_point(eid, Fraction(k, s + 1)))
    return points


BELOW = "below"
ABOVE = "above"
EQUIVALENT = "equivalent"
INCOMPARABLE = "incomparable"
UNKNOWN = "unknown"


class ComparabilityResult:
    def __init__(self, points, names, matrix):
        self.points = points
        self.names = names
        self.matrix = matrix

    def count(self, relation):
        n = len(self.points)
        return sum(
            1
            for i in range(n)
            for j in range(n)
            if i != j and self.matrix[i][j] == relation
        )


def component_comparability(ball, samples_per_edge=1):
    """Classify every ordered pair of sampled realized points.

    Writing x <= y for "y reaches x" (d(y, x) finite), the entry for (x, y)
    is: equivalent when both directions are finite, below when only y
    reaches x, above when only x reaches y, incomparable when both
    directions are infinite, and unknown when a horizon stamp prevents a
    decision.
    """
    points = sample_points(ball, samples_per_edge)
    names = [realized_point_name(ball, p) for p in points]
    n = len(points)
    dist = [[realized_distance(ball, points[i], points[j]) for j in range(n)] for i in range(n)]
    matrix = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            ij = dist[i][j]
            ji = dist[j][i]
            if not ij.is_decisive() or not ji.is_decisive():
                matrix[i][j] = UNKNOWN
            elif ij.is_finite() and ji.is_finite():
                matrix[i][j] = EQUIVALENT
            elif ij.is_finite():
                matrix[i][j] = ABOVE
            elif ji.is_finite():
                matrix[i][j] = BELOW
            else:
                matrix[i][j] = INCOMPARABLE
    return ComparabilityResult(points, names, matrix)


# -- deterministic text output -----------------------------------------------


def _dot_quote(name):
    return '"%s"' % name.replace("\\", "\\\\").replace('"', '\\"')


def export_dot(ball):
    """DOT text for the ball digraph; byte-stable for equal inputs."""
    lines = ["digraph {"]
    for i in range(len(ball.vertices)):
        lines.append("  %s;" % _dot_quote(ball.name(i)))
    for u, v, label in ball.edges:
        lines.append(
            "  %s -> %s [label=%s];"
            % (_dot_quote(ball.name(u)), _dot_quote(ball.name(v)), _dot_quote(label))
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def distance_table(ball):
    """One line per ordered vertex pair: "u<TAB>v<TAB>d"."""
    lines = []
    n = len(ball.vertices)
    for i in range(n):
        for j in range(n):
            lines.append(
                "%s\t%s\t%s" % (ball.name(i), ball.name(j), ball.distance(i, j).format())
            )
    return "\n".join(lines) + "\n"

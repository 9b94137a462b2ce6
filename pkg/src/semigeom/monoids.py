"""Finitely generated monoid backends with a uniform multiplication API.

Four backends share one interface: complete rewriting systems (elements are
normal-form words), transformation monoids (elements are maps on {0..n-1}
acting on the right, composed left to right), finite multiplication tables
(associativity is checked at load; a semigroup table gets an identity
adjoined), and direct products.  Element enumeration is breadth-first from
the identity over the ordered generator list, which fixes a canonical order
on every ball.
"""

from typing import NamedTuple

from .errors import BackendMismatch, CapExceeded, UnknownSymbol
from .rewriting import RewritingSystem, format_word, parse_word

DEFAULT_CAP = 10**6

# budget for deciding whether a product's right factor is a finite group;
# an infinite factor must not drag construction through the full cap
GROUP_PROBE_CAP = 4096


class Element:
    """An element of a specific backend; hashable, comparable within it."""

    __slots__ = ("monoid", "key")

    def __init__(self, monoid, key):
        self.monoid = monoid
        self.key = key

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and self.monoid is other.monoid
            and self.key == other.key
        )

    def __hash__(self):
        return hash((id(self.monoid), self.key))

    def __repr__(self):
        return "<%s>" % self.monoid.element_name(self)


class LengthedElement(NamedTuple):
    element: Element
    length: int


class Monoid:
    """Shared backend interface: identity, ordered generators, product.

    Backends are immutable after construction and safe to share; all methods
    are pure.  Multiplication raises BackendMismatch when elements of a
    different backend are passed in.
    """

    kind = "abstract"

    def __init__(self):
        self._gen_syms = []
        self._gen_keys = []
        self._identity_key = None

    # -- key-level operations implemented by each backend ------------------

    def _mul_key(self, a, b):
        raise NotImplementedError

    def _key_name(self, key):
        raise NotImplementedError

    def _parse_key(self, text):
        raise NotImplementedError

    # -- public API ---------------------------------------------------------

    @property
    def identity(self):
        return Element(self, self._identity_key)

    @property
    def generator_symbols(self):
        return tuple(self._gen_syms)

    def generators(self):
        """Ordered (symbol, element) pairs."""
        return [(s, Element(self, k)) for s, k in zip(self._gen_syms, self._gen_keys)]

    def generator(self, symbol):
        try:
            i = self._gen_syms.index(symbol)
        except ValueError:
            raise UnknownSymbol("no generator named %r" % symbol) from None
        return Element(self, self._gen_keys[i])

    def multiply(self, x, y):
        if x.monoid is not self or y.monoid is not self:
            raise BackendMismatch("elements belong to a different backend")
        return Element(self, self._mul_key(x.key, y.key))

    def element_name(self, x):
        if x.monoid is not self:
            raise BackendMismatch("element belongs to a different backend")
        return self._key_name(x.key)

    def parse_element(self, text):
        return Element(self, self._parse_key(text))

    def description(self):
        """A serializable dict describing this backend."""
        raise NotImplementedError


class RewritingMonoid(Monoid):
    """Monoid presented by a complete shortlex rewriting system.

    extra_generators adds non-alphabet generators (symbol, word) pairs to
    the generating set; word lengths and Cayley balls are then taken over
    the extended set.
    """

    kind = "rewriting"

    def __init__(self, system: RewritingSystem, extra_generators=()):
        super().__init__()
        if not system.is_complete:
            raise ValueError(
                "rewriting backend needs a verified complete system, got %r"
                % (system.completeness,)
            )
        self.system = system
        self._identity_key = ()
        for sym in system.alphabet:
            self._gen_syms.append(sym)
            self._gen_keys.append(system.normalize((sym,)))
        self._single_char = all(len(a) == 1 for a in system.alphabet)
        self.extra_generators = []
        for sym, word in extra_generators:
            if isinstance(word, str):
                word = parse_word(word, system.alphabet)
            self.extra_generators.append((sym, tuple(word)))
            self._gen_syms.append(sym)
            self._gen_keys.append(system.normalize(tuple(word)))

    def _mul_key(self, a, b):
        return self.system.normalize(a + b)

    def _key_name(self, key):
        if not key:
            return "ε"
        return format_word(key, "" if self._single_char else "·")

    def _parse_key(self, text):
        if text == "ε":
            return ()
        return self.system.normalize(parse_word(text, self.system.alphabet))

    def description(self):
        desc = {
            "kind": "rewriting",
            "alphabet": list(self.system.alphabet),
            "rules": [
                [format_word(r.lhs, "" if self._single_char else " "),
                 format_word(r.rhs, "" if self._single_char else " ")]
                for r in self.system.rules
            ],
        }
        if self.extra_generators:
            sep = "" if self._single_char else " "
            desc["extra_generators"] = [
                [sym, format_word(word, sep)] for sym, word in self.extra_generators
            ]
        return desc


class TransformationMonoid(Monoid):
    """Maps on {0..degree-1} under right action: (x*y)(i) = y(x(i))."""

    kind = "transformation"

    def __init__(self, degree, generators):
        super().__init__()
        self.degree = int(degree)
        if self.degree < 1:
            raise ValueError("degree must be at least 1")
        self._identity_key = tuple(range(self.degree))
        for sym, images in generators:
            images = tuple(int(i) for i in images)
            if len(images) != self.degree or any(
                not 0 <= i < self.degree for i in images
            ):
                raise ValueError("generator %r has bad image list %r" % (sym, images))
            self._gen_syms.append(sym)
            self._gen_keys.append(images)

    def _mul_key(self, a, b):
        return tuple(b[i] for i in a)

    def _key_name(self, key):
        if self.degree <= 10:
            return "".join(str(i) for i in key)
        return "(" + ",".join(str(i) for i in key) + ")"

    def _parse_key(self, text):
        text = text.strip("[]()")
        if "," in text:
            parts = [int(p) for p in text.split(",")]
        else:
            parts = [int(c) for c in text]
        if len(parts) != self.degree:
            raise ValueError("expected %d images, got %r" % (self.degree, text))
        return tuple(parts)

    def description(self):
        return {
            "kind": "transformation",
            "degree": self.degree,
            "generators": [[s, list(k)] for s, k in zip(self._gen_syms, self._gen_keys)],
        }


class TableMonoid(Monoid):
    """Finite monoid given by its full multiplication table.

    Associativity and the identity law are checked exhaustively at load.
    Semigroup tables (no two-sided identity) get a fresh identity adjoined
    as a distinguished extra row and column.
    """

    kind = "table"

    def __init__(self, names, table, identity_index, generator_names=None):
        super().__init__()
        names = list(names)
        if len(set(names)) != len(names):
            raise ValueError("element names must be distinct")
        n = len(names)
        table = [list(row) for row in table]
        if len(table) != n or any(len(row) != n for row in table):
            raise ValueError("table must be %d x %d" % (n, n))
        for row in table:
            for v in row:
                if not 0 <= v < n:
                    raise ValueError("table entry %r out of range" % v)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if table[table[i][j]][k] != table[i][table[j][k]]:
                        raise ValueError(
                            "table is not associative at (%s, %s, %s)"
                            % (names[i], names[j], names[k])
                        )
        e = identity_index
        if any(table[e][j] != j or table[j][e] != j for j in range(n)):
            raise ValueError("%r is not a two-sided identity" % names[e])
        self.names = names
        self.table = table
        self._identity_key = e
        if generator_names is None:
            generator_names = [names[i] for i in range(n) if i != e]
        for g in generator_names:
            self._gen_syms.append(g)
            self._gen_keys.append(names.index(g))

    @classmethod
    def from_semigroup(cls, names, table, identity=None, generator_names=None):
        """Build from a possibly identity-free table, adjoining one if needed."""
        names = list(names)
        n = len(names)
        idx = {name: i for i, name in enumerate(names)}
        table = [[idx[v] if isinstance(v, str) else int(v) for v in row] for row in table]
        e = None
        if identity is not None:
            e = idx[identity]
        else:
            for i in range(n):
                if all(table[i][j] == j and table[j][i] == j for j in range(n)):
                    e = i
                    break
        if e is None:
            fresh = next(nm for nm in ["1", "e", "id", "_1"] if nm not in idx)
            names = names + [fresh]
            table = [row + [i] for i, row in enumerate(table)]
            table.append(list(range(n + 1)))
            e = n
        return cls(names, table, e, generator_names)

    def _mul_key(self, a, b):
        return self.table[a][b]

    def _key_name(self, key):
        return self.names[key]

    def _parse_key(self, text):
        try:
            return self.names.index(text)
        except ValueError:
            raise UnknownSymbol("no element named %r" % text) from None

    def description(self):
        return {
            "kind": "table",
            "elements": list(self.names),
            "identity": self.names[self._identity_key],
            "table": [[self.names[v] for v in row] for row in self.table],
            "generators": list(self._gen_syms),
        }


class ProductMonoid(Monoid):
    """Direct product with componentwise multiplication.

    When the right factor is a finite group the generating set is
    {(a, g) : a generator of the left factor, g in the group} together with
    {(1, g) : g != 1}, so that the projection onto the left factor maps
    generators onto generators and every fiber has diameter at most 1.
    Otherwise the union-style set {(a, 1)} + {(1, b)} is used.
    """

    kind = "product"

    def __init__(self, left, right, cap=GROUP_PROBE_CAP):
        super().__init__()
        self.left = left
        self.right = right
        self._identity_key = (left._identity_key, right._identity_key)
        right_elements = enumerate_all(right, cap)
        self.right_is_group = right_elements is not None and _is_group_elements(
            right, right_elements
        )
        id1 = left._key_name(left._identity_key)
        id2 = right._key_name(right._identity_key)
        if self.right_is_group:
            for sym, gk in zip(left._gen_syms, left._gen_keys):
                for g in right_elements:
                    self._gen_syms.append("(%s,%s)" % (sym, right._key_name(g.key)))
                    self._gen_keys.append((gk, g.key))
            for g in right_elements:
                if g.key == right._identity_key:
                    continue
                self._gen_syms.append("(%s,%s)" % (id1, right._key_name(g.key)))
                self._gen_keys.append((left._identity_key, g.key))
        else:
            for sym, gk in zip(left._gen_syms, left._gen_keys):
                self._gen_syms.append("(%s,%s)" % (sym, id2))
                self._gen_keys.append((gk, right._identity_key))
            for sym, gk in zip(right._gen_syms, right._gen_keys):
                self._gen_syms.append("(%s,%s)" % (id1, sym))
                self._gen_keys.append((left._identity_key, gk))

    def _mul_key(self, a, b):
        return (self.left._mul_key(a[0], b[0]), self.right._mul_key(a[1], b[1]))

    def _key_name(self, key):
        return "(%s,%s)" % (self.left._key_name(key[0]), self.right._key_name(key[1]))

    def _parse_key(self, text):
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError("product element must look like (x,y), got %r" % text)
        body = text[1:-1]
        depth = 0
        for i, ch in enumerate(body):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                return (
                    self.left._parse_key(body[:i]),
                    self.right._parse_key(body[i + 1 :]),
                )
        raise ValueError("no top-level comma in %r" % text)

    def description(self):
        return {
            "kind": "product",
            "left": self.left.description(),
            "right": self.right.description(),
        }


def _is_group_elements(m, elements):
    """True when every listed element has a two-sided inverse."""
    keys = [x.key for x in elements]
    e = m._identity_key
    for a in keys:
        if not any(m._mul_key(a, b) == e and m._mul_key(b, a) == e for b in keys):
            return False
    return True


def direct_product(left, right, cap=GROUP_PROBE_CAP):
    return ProductMonoid(left, right, cap)


def enumerate_out_ball(m, radius, cap=DEFAULT_CAP):
    """Elements at word length <= radius, breadth-first from the identity.

    Discovery order is canonical: frontier elements in order, then the
    ordered generator list.  Lengths are nondecreasing along the returned
    list.  Raises CapExceeded when the ball grows past the cap.
    """
    ball, _ = _bfs_keys(m, radius, cap)
    return [LengthedElement(Element(m, k), d) for k, d in ball]


def enumerate_all(m, cap=DEFAULT_CAP):
    """All elements if the monoid is finite within the cap, else None."""
    try:
        ball, exhausted = _bfs_keys(m, None, cap)
    except CapExceeded:
        return None
    if not exhausted:
        return None
    return [Element(m, k) for k, _ in ball]


def _bfs_keys(m, radius, cap):
    """Key-level BFS; returns ([(key, length)...], exhausted_flag)."""
    start = m._identity_key
    dist = {start: 0}
    order = [(start, 0)]
    gen_keys = m._gen_keys
    i = 0
    while i < len(order):
        key, d = order[i]
        i += 1
        if radius is not None and d >= radius:
            break
        for gk in gen_keys:
            nk = m._mul_key(key, gk)
            if nk not in dist:
                if len(dist) >= cap:
                    raise CapExceeded(cap)
                dist[nk] = d + 1
                order.append((nk, d + 1))
    return order, i >= len(order)

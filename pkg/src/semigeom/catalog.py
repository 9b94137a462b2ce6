"""Built-in example monoids used across tests, docs, and the CLI.

Each entry is a plain description dict (the same format the CLI reads from
JSON files); ``monoid(name)`` loads it into a backend.  Products are built
on demand via ``direct_product``.
"""

from .descriptions import load_monoid
from .monoids import direct_product

DESCRIPTIONS = {
    # b*c = identity; normal forms are c^i b^j
    "bicyclic": {
        "kind": "rewriting",
        "alphabet": ["b", "c"],
        "rules": [["bc", ""]],
    },
    "free1": {"kind": "rewriting", "alphabet": ["s"], "rules": []},
    "free2": {"kind": "rewriting", "alphabet": ["a", "b"], "rules": []},
    "free-comm1": {"kind": "rewriting", "alphabet": ["a"], "rules": []},
    "free-comm2": {
        "kind": "rewriting",
        "alphabet": ["a", "b"],
        "rules": [["ba", "ab"]],
    },
    "free-comm3": {
        "kind": "rewriting",
        "alphabet": ["a", "b", "c"],
        "rules": [["ba", "ab"], ["ca", "ac"], ["cb", "bc"]],
    },
    # the group of integers: p steps up, q steps down
    "integers": {
        "kind": "rewriting",
        "alphabet": ["p", "q"],
        "rules": [["pq", ""], ["qp", ""]],
    },
    # {1, a, 0} with a*a = 0, generated by a alone
    "one-a-zero": {
        "kind": "table",
        "elements": ["1", "a", "0"],
        "identity": "1",
        "table": [["1", "a", "0"], ["a", "0", "0"], ["0", "0", "0"]],
        "generators": ["a"],
    },
    # same monoid, generated by {a, 0}
    "one-a-zero-b": {
        "kind": "table",
        "elements": ["1", "a", "0"],
        "identity": "1",
        "table": [["1", "a", "0"], ["a", "0", "0"], ["0", "0", "0"]],
        "generators": ["a", "0"],
    },
    "t2": {
        "kind": "transformation",
        "degree": 2,
        "generators": [["t", [1, 0]], ["e", [0, 0]]],
    },
    # full transformation monoid on 3 points: 3-cycle, transposition,
    # rank-2 idempotent
    "t3": {
        "kind": "transformation",
        "degree": 3,
        "generators": [["s", [1, 2, 0]], ["t", [1, 0, 2]], ["e", [0, 0, 2]]],
    },
    "z2": {
        "kind": "table",
        "elements": ["0", "1"],
        "identity": "0",
        "table": [["0", "1"], ["1", "0"]],
        "generators": ["1"],
    },
    "z3": {
        "kind": "table",
        "elements": ["0", "1", "2"],
        "identity": "0",
        "table": [["0", "1", "2"], ["1", "2", "0"], ["2", "0", "1"]],
        "generators": ["1"],
    },
    "trivial": {
        "kind": "table",
        "elements": ["1"],
        "identity": "1",
        "table": [["1"]],
        "generators": [],
    },
}


def names():
    return sorted(DESCRIPTIONS)


def monoid(name):
    """Load a built-in monoid by name; 'X x z2' style products via product()."""
    return load_monoid(DESCRIPTIONS[name])


def product(left_name, right_name):
    return direct_product(monoid(left_name), monoid(right_name))

"""Alternating Schröder trees, the realization of As(Q) for forest posets.

Schröder trees reuse :class:`~poset_operads.trees.Node` with integer labels
(elements of Q) and at least two children per node.  The contraction rule
merges a node with a comparable child; for forest posets its normal forms
are the alternating trees and it is confluent.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Any, Hashable, Mapping, NamedTuple, Optional, Sequence

from .construction import orientation, star
from .errors import IndexOutOfRange, NotANormalForm, NotForest, NotQAssociative, ParseError
from .poset import Poset, is_forest, meet_up
from .rewriting import Rewriter, is_normal, normalize
from .trees import LEAF, Generator, Node, Position, Tree, arity, degree, graft, put_at, subtree_at, trees_by_degree


def is_schroder(t: Tree) -> bool:
    if t is LEAF:
        return True
    return len(t.children) >= 2 and all(is_schroder(c) for c in t.children)


def is_alternating(P: Poset, t: Tree) -> bool:
    if t is LEAF:
        return True
    for c in t.children:
        if c is not LEAF and P.comparable(t.label, c.label):
            return False
    return all(is_alternating(P, c) for c in t.children)


def _compositions(n: int, min_parts: int = 2):
    # ordered sequences of positive integers summing to n, with at least min_parts parts
    for k in range(min_parts, n + 1):
        for cuts in itertools.combinations(range(1, n), k - 1):
            bounds = (0,) + cuts + (n,)
            yield tuple(bounds[i + 1] - bounds[i] for i in range(k))


def enumerate_alternating(P: Poset, n: int) -> list[Tree]:
    if n < 1:
        return []
    memo: dict[tuple[int, int], list[Tree]] = {}

    def rooted(a: int, m: int) -> list[Tree]:
        # alternating trees with m leaves and root label a
        key = (a, m)
        if key in memo:
            return memo[key]
        out = []
        for parts in _compositions(m):
            choices = [allowed(a, p) for p in parts]
            for kids in itertools.product(*choices):
                out.append(Node(a, kids))
        memo[key] = out
        return out

    def allowed(a: int, m: int) -> list[Tree]:
        if m == 1:
            return [LEAF]
        return [t for b in P.elements if P.incomparable(a, b) for t in rooted(b, m)]

    if n == 1:
        return [LEAF]
    return [t for a in P.elements for t in rooted(a, n)]


class SchroderRule(Rewriter):
    """Contract a node and a comparable child into the smaller label."""

    def __init__(self, P: Poset, max_node_arity: int = 3):
        self.P = P
        self.max_node_arity = max_node_arity
        self.measure = lambda t: -degree(t)

    def _contract(self, t: Tree, u: Position, j: int) -> Tree:
        x = subtree_at(t, u)
        child = x.children[j]
        kids = x.children[:j] + child.children + x.children[j + 1 :]
        return put_at(t, u, Node(meet_up(self.P, x.label, child.label), kids))

    def _sites(self, x: Tree) -> list[int]:
        return [
            j
            for j, c in enumerate(x.children)
            if c is not LEAF and self.P.comparable(x.label, c.label)
        ]

    def apply_at(self, t: Tree, u: Position) -> Optional[Tree]:
        sites = self._sites(subtree_at(t, u))
        return self._contract(t, u, sites[0]) if sites else None

    def results_at(self, t: Tree, u: Position) -> list[Tree]:
        return [self._contract(t, u, j) for j in self._sites(subtree_at(t, u))]

    def _signature(self) -> list[tuple[int, int]]:
        return [(a, k) for a in self.P.elements for k in range(2, self.max_node_arity + 1)]

    def critical_trees(self):
        for d in (1, 2, 3):
            yield from trees_by_degree(self._signature(), d)

    def context_trees(self, max_degree: int):
        # the node count argument is exact; contexts are only a sanity layer
        for d in range(1, min(max_degree, 3) + 1):
            yield from trees_by_degree(self._signature(), d)


def schroder_rule(P: Poset) -> SchroderRule:
    return SchroderRule(P)


def _require_forest(P: Poset) -> None:
    if not is_forest(P):
        raise NotForest("the Schröder realization needs a forest poset")


def compose(P: Poset, s: Tree, i: int, t: Tree) -> Tree:
    _require_forest(P)
    if not 1 <= i <= arity(s):
        raise IndexOutOfRange(f"leaf {i} out of range for {arity(s)} leaves")
    return normalize(SchroderRule(P), graft(s, i, t))


def free_algebra_star(P: Poset, a: int, s: Tree, t: Tree) -> Tree:
    """s star_a t in the free Q-associative algebra on one generator."""
    _require_forest(P)
    return normalize(SchroderRule(P), Node(a, (s, t)))


def pbw_to_schroder(P: Poset, t: Tree) -> Tree:
    if not is_normal(orientation(P), t):
        raise NotANormalForm("tree is not a normal form of the orientation")
    return _collapse(t)


def _collapse(t: Tree) -> Tree:
    if t is LEAF:
        return t
    g = t.label
    kids = []
    cur = t
    while cur is not LEAF and cur.label == g:
        left, right = cur.children
        kids.append(_collapse(left))
        cur = right
    kids.append(_collapse(cur))
    return Node(g.label, tuple(kids))


def schroder_to_pbw(P: Poset, t: Tree) -> Tree:
    if not is_alternating(P, t) or not is_schroder(t):
        raise NotANormalForm("tree is not an alternating Schröder tree")
    return _expand(t)


def _expand(t: Tree) -> Tree:
    if t is LEAF:
        return t
    g = star(t.label)
    kids = [_expand(c) for c in t.children]
    out = Node(g, (kids[-2], kids[-1]))
    for k in reversed(kids[:-2]):
        out = Node(g, (k, out))
    return out


def to_json(t: Tree) -> Any:
    if t is LEAF:
        return None
    return {"label": t.label, "children": [to_json(c) for c in t.children]}


def from_json(doc: Any) -> Tree:
    if doc is None:
        return LEAF
    try:
        kids = tuple(from_json(c) for c in doc["children"])
        label = doc["label"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad Schröder tree document: {exc}") from None
    if len(kids) < 2 or not isinstance(label, int):
        raise ParseError("Schröder nodes need an integer label and two or more children")
    return Node(label, kids)


# the antichain algebra

Monomial = tuple  # sorted tuple of elements


def antichain_reduce(P: Poset, monomial: Sequence[int], rng: Optional[random.Random] = None) -> Monomial:
    """Apply x_a x_b -> x_a (a <= b) until the support is an antichain."""
    m = list(monomial)
    while True:
        sites = [
            (i, j)
            for i in range(len(m))
            for j in range(len(m))
            if i != j and P.leq(m[i], m[j])
        ]
        if not sites:
            return tuple(sorted(m))
        _, j = rng.choice(sites) if rng else sites[0]
        del m[j]


def antichain_star(P: Poset, a: int, m1: Sequence[int], m2: Sequence[int]) -> Monomial:
    return antichain_reduce(P, tuple(m1) + (a,) + tuple(m2))


def antichains(P: Poset) -> list[Monomial]:
    """All antichains, the empty one included, by size then lexicographically."""
    out = []
    for k in range(P.size + 1):
        for combo in itertools.combinations(P.elements, k):
            if all(P.incomparable(a, b) for a, b in itertools.combinations(combo, 2)):
                out.append(combo)
    return out


def antichain_tables(P: Poset) -> dict:
    basis = antichains(P)
    return {
        a: {(x, y): {antichain_star(P, a, x, y): Fraction(1)} for x in basis for y in basis}
        for a in P.elements
    }


# Q-associative algebras given by structure constants

Vector = Mapping[Hashable, Fraction]


def _product(tables: Mapping, a: int, u: Vector, v: Vector) -> dict:
    out: dict = {}
    for x, cx in u.items():
        for y, cy in v.items():
            for z, cz in tables[a][(x, y)].items():
                out[z] = out.get(z, 0) + Fraction(cx) * cy * cz
    return {k: c for k, c in out.items() if c}


def check_q_associative(P: Poset, tables: Mapping, basis: Sequence[Hashable]) -> Optional[tuple]:
    """First failing instance of the Q-associative relations, or None."""
    for a in P.elements:
        ups = [b for b in P.elements if P.leq(a, b)]
        for b in ups:
            for c in ups:
                for x, y, z in itertools.product(basis, repeat=3):
                    X, Y, Z = {x: 1}, {y: 1}, {z: 1}
                    vals = [
                        _product(tables, b, _product(tables, a, X, Y), Z),
                        _product(tables, a, X, _product(tables, b, Y, Z)),
                        _product(tables, a, _product(tables, c, X, Y), Z),
                        _product(tables, c, X, _product(tables, a, Y, Z)),
                    ]
                    if any(v != vals[0] for v in vals[1:]):
                        return (a, b, c, x, y, z)
    return None


class UnitReport(NamedTuple):
    units: dict
    filters_ok: bool
    disjoint_ok: bool


def unit_sets(P: Poset, tables: Mapping, basis: Sequence[Hashable]) -> UnitReport:
    bad = check_q_associative(P, tables, basis)
    if bad is not None:
        raise NotQAssociative(f"relations fail at {bad}")
    units = {}
    for e in basis:
        E = set()
        for a in P.elements:
            if all(
                _product(tables, a, {e: 1}, {x: 1}) == {x: 1} == _product(tables, a, {x: 1}, {e: 1})
                for x in basis
            ):
                E.add(a)
        units[e] = E
    filters_ok = all(
        all(b in E for a in E for b in P.elements if P.leq(a, b)) for E in units.values()
    )
    disjoint_ok = all(
        not (units[x] & units[y]) for x, y in itertools.combinations(basis, 2)
    )
    return UnitReport(units, filters_ok, disjoint_ok)

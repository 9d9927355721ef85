"""Brute-force quotient components of presented operads.

Every dimension reported elsewhere in the package can be recomputed here from
the presentation alone.  The ideal at arity n is expanded exhaustively: each
tree of arity n is cut at every degree-2 middle subtree, which yields a
context with a hole and the three subtrees hanging below it; every relation is
then plugged into every such skeleton.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any

from scipy.cluster.hierarchy import DisjointSet

from .linalg import EchelonSpan
from .presentation import Presentation
from .trees import LEAF, Node, Tree, TreePoly, compose2, enumerate_trees, fill, positions, put_at, subtree_at

_HOLE = "<hole>"


def _cuts(t: Tree):
    """(position, side, captured subtrees) for every degree-2 middle subtree."""
    for u in positions(t):
        x = subtree_at(t, u)
        left, right = x.children
        if left is not LEAF:
            yield u, 1, (left.children[0], left.children[1], right), (x.label, left.label)
        if right is not LEAF:
            yield u, 2, (left, right.children[0], right.children[1]), (x.label, right.label)


@lru_cache(maxsize=64)
def _skeletons(alphabet: tuple, n: int) -> tuple:
    seen: dict = {}
    for t in enumerate_trees(alphabet, n):
        for u, _, caps, _ in _cuts(t):
            ctx = put_at(t, u, Node(_HOLE, caps))
            if ctx not in seen:
                seen[ctx] = (u, caps)
    return tuple((ctx, u, caps) for ctx, (u, caps) in seen.items())


@dataclass
class IdealComponent:
    arity: int
    ambient_basis: list
    index: dict
    span: EchelonSpan

    @property
    def dimension(self) -> int:
        return self.span.dimension

    def vector(self, x: TreePoly) -> dict[int, Fraction]:
        return {self.index[t]: c for t, c in x.terms.items()}

    def contains(self, x: TreePoly) -> bool:
        if not x:
            return True
        return self.span.contains(self.vector(x))

    def span_basis(self) -> list[TreePoly]:
        return [
            TreePoly({self.ambient_basis[k]: v for k, v in row.items()})
            for _, row in sorted(self.span.rows.items())
        ]


@lru_cache(maxsize=128)
def ideal_component(pres: Presentation, n: int) -> IdealComponent:
    basis = enumerate_trees(pres.alphabet, n)
    index = {t: i for i, t in enumerate(basis)}
    span = EchelonSpan()
    if n >= 3:
        rels = [list(r.terms.items()) for r in pres.relations]
        for ctx, u, caps in _skeletons(tuple(pres.alphabet), n):
            for terms in rels:
                vec: dict[int, Fraction] = {}
                for rt, c in terms:
                    k = index[put_at(ctx, u, fill(rt, caps))]
                    vec[k] = vec.get(k, 0) + c
                span.add(vec)
    return IdealComponent(n, basis, index, span)


def member_of_ideal(x: TreePoly, pres: Presentation) -> bool:
    if not x:
        return True
    return ideal_component(pres, x.arity).contains(x)


def _partners(pres: Presentation) -> dict:
    """Degree-2 tree -> trees it is identified with by some binomial relation."""
    out: dict = {}
    for p in pres.family:
        s, t = list(p.terms)
        out.setdefault(s, []).append(t)
        out.setdefault(t, []).append(s)
    return out


@lru_cache(maxsize=64)
def quotient_classes(pres: Presentation, n: int) -> DisjointSet:
    """Union-find over the trees of arity n, joined at every in-context rule use."""
    if not pres.is_binomial():
        raise ValueError("union-find needs relations that are differences of two trees")
    trees = enumerate_trees(pres.alphabet, n)
    ds = DisjointSet(trees)
    partners = _partners(pres)
    for t in trees:
        for u, side, caps, (a, b) in _cuts(t):
            for q in partners.get(compose2(a, side, b), ()):
                ds.merge(t, put_at(t, u, fill(q, caps)))
    return ds


def quotient_dim(pres: Presentation, n: int, method: str = "auto") -> int:
    if n < 1:
        raise ValueError("arity must be positive")
    if method == "auto":
        method = "union-find" if pres.is_binomial() else "gauss"
    if method == "union-find":
        return quotient_classes(pres, n).n_subsets
    if method == "gauss":
        comp = ideal_component(pres, n)
        return len(comp.ambient_basis) - comp.dimension
    raise ValueError(f"unknown method {method!r}")


class Quotient:
    """Canonical coordinates in Free(n) / ideal(n)."""

    def __init__(self, pres: Presentation, n: int, method: str = "auto"):
        if method == "auto":
            method = "union-find" if pres.is_binomial() else "gauss"
        self.method = method
        self.arity = n
        if method == "union-find":
            self._ds = quotient_classes(pres, n)
            reps = sorted(
                (min(group, key=lambda t: _order(pres, n)[t]) for group in self._ds.subsets()),
                key=lambda t: _order(pres, n)[t],
            )
            self.basis = reps
        else:
            self._comp = ideal_component(pres, n)
            piv = set(self._comp.span.rows)
            self.basis = [t for i, t in enumerate(self._comp.ambient_basis) if i not in piv]
        self.dimension = len(self.basis)

    def reduce(self, x: TreePoly) -> dict[Any, Fraction]:
        out: dict[Any, Fraction] = {}
        if self.method == "union-find":
            for t, c in x.terms.items():
                r = self._ds[t]
                out[r] = out.get(r, 0) + c
            return {k: v for k, v in out.items() if v}
        return self._comp.span.remainder(self._comp.vector(x))


@lru_cache(maxsize=64)
def _order(pres: Presentation, n: int) -> dict:
    return {t: i for i, t in enumerate(enumerate_trees(pres.alphabet, n))}

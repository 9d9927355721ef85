"""The operad As(Q) of a poset Q: presentation, orientation, normal forms, dimensions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional

from . import series
from .errors import NotAMorphism, NotForest
from .linalg import RatMatrix
from .oracle import Quotient, ideal_component, quotient_dim
from .poset import Poset, PosetMorphism, is_forest, is_morphism, meet_up
from .presentation import Presentation
from .rewriting import RewriteSystem, Verdict
from .trees import (
    LEAF,
    Generator,
    Node,
    TreePoly,
    alphabet,
    compose2,
    graft,
    infix_word,
    sort_trees,
    substitute_generators,
)


def star(a: int) -> Generator:
    return Generator("star", a)


def star_alphabet(P: Poset) -> list[Generator]:
    return alphabet("star", P.elements)


def comparable_pairs(P: Poset) -> list[tuple[int, int]]:
    return [(a, b) for a in P.elements for b in P.elements if P.comparable(a, b)]


def relation_family(P: Poset) -> list[TreePoly]:
    """The generating binomials, without duplicates, in a fixed order."""
    out: list[TreePoly] = []
    seen = set()
    for a, b in comparable_pairs(P):
        m = star(meet_up(P, a, b))
        for s, t in (
            (compose2(star(a), 1, star(b)), compose2(m, 2, m)),
            (compose2(m, 1, m), compose2(star(a), 2, star(b))),
        ):
            if s == t:
                continue
            key = frozenset((s, t))
            if key not in seen:
                seen.add(key)
                out.append(TreePoly.binomial(s, t))
    return out


@lru_cache(maxsize=None)
def relations_star(P: Poset) -> Presentation:
    return Presentation.from_family(star_alphabet(P), relation_family(P))


def expected_relation_dimension(P: Poset) -> int:
    from .poset import intervals_count

    return 4 * intervals_count(P) - 3 * P.size


def relations_closure(P: Poset, a: int) -> tuple[set, bool]:
    """The trees identified with star_a o_1 star_a, and whether all their differences are relations."""
    trees = set()
    for b in P.elements:
        if P.leq(a, b):
            trees.update(
                {
                    compose2(star(a), 1, star(b)),
                    compose2(star(b), 1, star(a)),
                    compose2(star(b), 2, star(a)),
                    compose2(star(a), 2, star(b)),
                }
            )
    comp = ideal_component(relations_star(P), 3)
    ordered = sort_trees(trees)
    ok = all(comp.contains(TreePoly.binomial(ordered[0], t)) for t in ordered[1:])
    return trees, ok


# orientation

class StarMeasure:
    """(alpha, infix word) ordered componentwise; the word order is reversed."""

    __slots__ = ("P", "alpha", "word")

    def __init__(self, P: Poset, alpha: int, word: tuple):
        self.P, self.alpha, self.word = P, alpha, word

    def __le__(self, other: "StarMeasure") -> bool:
        return (
            len(self.word) == len(other.word)
            and self.alpha <= other.alpha
            and all(self.P.leq(b.label, a.label) for a, b in zip(self.word, other.word))
        )

    def __lt__(self, other: "StarMeasure") -> bool:
        return self <= other and (self.alpha, self.word) != (other.alpha, other.word)

    def __repr__(self) -> str:
        return f"({self.alpha}, {' '.join(str(g.label) for g in self.word)})"


def _alpha(t) -> tuple[int, int]:
    # (alpha, number of internal nodes)
    if t is LEAF:
        return 0, 0
    la, ln = _alpha(t.children[0])
    ra, rn = _alpha(t.children[1])
    return la + ra + rn, ln + rn + 1


def star_measure(P: Poset):
    def measure(t) -> StarMeasure:
        return StarMeasure(P, _alpha(t)[0], infix_word(t))

    return measure


@lru_cache(maxsize=None)
def orientation(P: Poset) -> RewriteSystem:
    rules = []
    for a, b in comparable_pairs(P):
        m = star(meet_up(P, a, b))
        rules.append((compose2(star(a), 1, star(b)), compose2(m, 2, m)))
    for a, b in comparable_pairs(P):
        if a != b:
            m = star(meet_up(P, a, b))
            rules.append((compose2(star(a), 2, star(b)), compose2(m, 2, m)))
    return RewriteSystem(tuple(rules), measure=star_measure(P))


# normal forms and dimensions

def _nf_by_root(P: Poset, n: int, memo: dict) -> dict[int, list]:
    """Normal forms with n leaves grouped by root label."""
    if n in memo:
        return memo[n]
    out: dict[int, list] = {a: [] for a in P.elements}
    for k in range(1, n):
        lefts = _nf_by_root(P, k, memo) if k > 1 else None
        rights = _nf_by_root(P, n - k, memo) if n - k > 1 else None
        for a in P.elements:
            if lefts is None:
                L = [LEAF]
            else:
                L = [t for b in P.elements if P.incomparable(a, b) for t in lefts[b]]
            if rights is None:
                R = [LEAF]
            else:
                R = [t for b in P.elements if b == a or P.incomparable(a, b) for t in rights[b]]
            g = star(a)
            out[a].extend(Node(g, (l, r)) for l in L for r in R)
    memo[n] = out
    return out


def normal_forms(P: Poset, n: int) -> list:
    if n < 1:
        return []
    if n == 1:
        return [LEAF]
    by_root = _nf_by_root(P, n, {})
    return sort_trees(t for a in P.elements for t in by_root[a])


def count_normal_forms(P: Poset, n: int) -> int:
    if n == 1:
        return 1
    return sum(len(v) for v in _nf_by_root(P, n, {}).values())


def dimension(P: Poset, n: int) -> int:
    if n < 1:
        raise ValueError("arity must be positive")
    if is_forest(P):
        return count_normal_forms(P, n)
    return quotient_dim(relations_star(P), n)


def hilbert_coeffs(P: Poset, N: int) -> list[int]:
    """Coefficients of t^1 .. t^N of the Hilbert series of As(P), P a forest."""
    if not is_forest(P):
        raise NotForest("the Hilbert series system holds for forest posets")
    t = [0, 1] + [0] * (N - 1)
    H = {a: [0] * (N + 1) for a in P.elements}
    for _ in range(N + 2):
        new = {}
        for a in P.elements:
            bar = [0] * (N + 1)
            for b in P.elements:
                if P.incomparable(a, b):
                    bar = series.add(bar, H[b])
            first = series.add(t, bar)
            new[a] = series.mul(first, series.add(first, H[a]), N)
        if new == H:
            break
        H = new
    total = series.add(t, *H.values()) if H else t
    return [int(c) for c in total[1 : N + 1]]


# associative elements

def associative_elements_check(P: Poset, coeffs: Mapping[int, Fraction]) -> bool:
    return all(
        not (coeffs.get(a, 0) and coeffs.get(b, 0))
        for a in P.elements
        for b in P.elements
        if P.incomparable(a, b)
    )


def associativity_defect(P: Poset, coeffs: Mapping[int, Fraction]) -> TreePoly:
    """x o_1 x - x o_2 x for x = sum coeffs[a] star_a."""
    terms = []
    for a, ca in coeffs.items():
        for b, cb in coeffs.items():
            if ca and cb:
                terms.append((compose2(star(a), 1, star(b)), Fraction(ca) * cb))
                terms.append((compose2(star(a), 2, star(b)), -Fraction(ca) * cb))
    return TreePoly(terms, 3)


def associative_by_oracle(P: Poset, coeffs: Mapping[int, Fraction]) -> bool:
    return ideal_component(relations_star(P), 3).contains(associativity_defect(P, coeffs))


# basicity

def is_basic(P: Poset, max_arity: int = 4) -> Verdict:
    """Bounded check that right compositions by basis elements are injective."""
    if max_arity < 3:
        raise ValueError("max_arity must be at least 3")
    pres = relations_star(P)
    quotients = {n: Quotient(pres, n) for n in range(2, max_arity + 1)}
    for target in range(3, max_arity + 1):
        for m in range(2, target):
            k = target - m + 1
            Qm, Qk, Qt = quotients[m], quotients[k], quotients[target]
            for y in Qk.basis:
                for i in range(1, m + 1):
                    images = [Qt.reduce(TreePoly({graft(x, i, y): 1})) for x in Qm.basis]
                    keys = sorted({key for img in images for key in img}, key=repr)
                    M = RatMatrix([[img.get(key, 0) for img in images] for key in keys], len(images))
                    if M.rank() < len(images):
                        kernel = [
                            TreePoly({x: c for x, c in zip(Qm.basis, v)})
                            for v in M.nullspace()
                        ]
                        return Verdict(
                            False,
                            {"source_arity": m, "operand_arity": k, "slot": i, "y": y, "kernel": kernel},
                        )
    return Verdict(True, {"max_arity": max_arity})


# morphisms

@dataclass(frozen=True)
class InducedMorphism:
    mapping: dict
    relations_preserved: bool


def induced_morphism(phi: PosetMorphism) -> InducedMorphism:
    if not is_morphism(phi):
        raise NotAMorphism("map is not order preserving")
    mapping = {star(x): star(phi(x)) for x in phi.source.elements}
    images = {g: {h: 1} for g, h in mapping.items()}
    comp = ideal_component(relations_star(phi.target), 3)
    ok = all(
        comp.contains(substitute_generators(r, images))
        for r in relation_family(phi.source)
    )
    return InducedMorphism(mapping, ok)


def check_functoriality(phi: PosetMorphism, psi: PosetMorphism) -> bool:
    """As(psi o phi) agrees with As(psi) o As(phi) on generators."""
    f = induced_morphism(phi).mapping
    g = induced_morphism(psi).mapping
    h = induced_morphism(phi.then(psi)).mapping
    return all(h[x] == g[f[x]] for x in f)

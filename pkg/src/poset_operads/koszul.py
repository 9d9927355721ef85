"""Koszul dual presentations of As(Q) and the thin forest duality.

Alphabets stay tagged: ``bar`` for the dual generators, ``barB`` and ``barA``
for the two changes of basis, ``triangle`` for the dual of the ``barB``
presentation.  The identification between a generator and its dual partner
is always written out as a basis change, never implied by equal labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from . import series
from .construction import hilbert_coeffs, relation_family, relations_star, star
from .errors import NotForest
from .linalg import RatMatrix
from .oracle import ideal_component
from .poset import Poset, require_standard, dual_leq, intervals_count, is_forest, thin_dual
from .presentation import Presentation
from .rewriting import Verdict
from .trees import (
    Generator,
    TreePoly,
    alphabet,
    annihilator,
    compose2,
    relabel_tree,
    substitute_generators,
)


def bar(a: int) -> Generator:
    return Generator("bar", a)


def retag(poly: TreePoly, tag: str) -> TreePoly:
    return TreePoly({relabel_tree(t, lambda g: Generator(tag, g.label)): c for t, c in poly.terms.items()}, poly.arity)


def dual_relations_annihilator(P: Poset) -> Presentation:
    stars = alphabet("star", P.elements)
    ann = annihilator(list(relations_star(P).relations), stars)
    return Presentation.from_family(alphabet("bar", P.elements), [retag(r, "bar") for r in ann])


def expected_dual_dimension(P: Poset) -> int:
    n = P.size
    return 2 * n * n + 3 * n - 4 * intervals_count(P)


def _incomparable_pairs(P: Poset) -> list[tuple[int, int]]:
    return [(c, d) for c in P.elements for d in P.elements if P.incomparable(c, d)]


def explicit_dual_family(P: Poset, tag: str = "bar") -> list[TreePoly]:
    g = lambda a: Generator(tag, a)
    family = []
    for a in P.elements:
        terms = [(compose2(g(a), 1, g(a)), 1), (compose2(g(a), 2, g(a)), -1)]
        for b in P.elements:
            if P.lt(a, b):
                terms += [
                    (compose2(g(b), 1, g(a)), 1),
                    (compose2(g(a), 1, g(b)), 1),
                    (compose2(g(b), 2, g(a)), -1),
                    (compose2(g(a), 2, g(b)), -1),
                ]
        family.append(TreePoly(terms, 3))
    for i in (1, 2):
        for c, d in _incomparable_pairs(P):
            family.append(TreePoly({compose2(g(c), i, g(d)): 1}))
    return family


def dual_relations_explicit(P: Poset) -> Presentation:
    return Presentation.from_family(alphabet("bar", P.elements), explicit_dual_family(P))


# basis changes

@dataclass(frozen=True)
class BasisChange:
    """Each new generator as a combination of old ones: rows[new] = {old: coeff}."""

    old_tag: str
    new_tag: str
    labels: tuple
    rows: Mapping[int, Mapping[int, Fraction]]

    def images(self) -> dict[Generator, dict[Generator, Fraction]]:
        return {
            Generator(self.new_tag, a): {Generator(self.old_tag, b): c for b, c in self.rows[a].items()}
            for a in self.labels
        }

    def matrix(self) -> RatMatrix:
        return RatMatrix([[self.rows[a].get(b, 0) for b in self.labels] for a in self.labels], len(self.labels))

    def is_invertible(self) -> bool:
        return self.matrix().rank() == len(self.labels)

    def then(self, other: "BasisChange") -> "BasisChange":
        """Express other's new generators over self's old ones."""
        if other.old_tag != self.new_tag:
            raise ValueError("basis changes do not chain")
        rows = {}
        for a in other.labels:
            acc: dict[int, Fraction] = {}
            for b, c in other.rows[a].items():
                for d, e in self.rows[b].items():
                    acc[d] = acc.get(d, 0) + Fraction(c) * e
            rows[a] = {k: v for k, v in acc.items() if v}
        return BasisChange(self.old_tag, other.new_tag, self.labels, rows)

    def push(self, poly: TreePoly) -> TreePoly:
        """Rewrite a polynomial in new generators over the old ones."""
        return substitute_generators(poly, self.images())

    def describe(self) -> dict[str, str]:
        out = {}
        for a in self.labels:
            parts = [
                (f"{c}*" if c != 1 else "") + f"{self.old_tag}{b}"
                for b, c in sorted(self.rows[a].items())
            ]
            out[f"{self.new_tag}{a}"] = " + ".join(parts)
        return out


def barB_basis(P: Poset) -> BasisChange:
    """barB_a = sum of bar_b over a <= b.  Defined for every poset."""
    rows = {a: {b: Fraction(1) for b in P.elements if P.leq(a, b)} for a in P.elements}
    return BasisChange("bar", "barB", tuple(P.elements), rows)


def _alternative_family(P: Poset, tag: str) -> list[TreePoly]:
    g = lambda a: Generator(tag, a)
    family = [TreePoly.binomial(compose2(g(a), 1, g(a)), compose2(g(a), 2, g(a))) for a in P.elements]
    for i in (1, 2):
        for c, d in _incomparable_pairs(P):
            family.append(TreePoly({compose2(g(c), i, g(d)): 1}))
    return family


def barB_presentation(P: Poset) -> tuple[BasisChange, Presentation]:
    if not is_forest(P):
        raise NotForest("the barB presentation is stated for forest posets")
    pres = Presentation.from_family(alphabet("barB", P.elements), _alternative_family(P, "barB"))
    return barB_basis(P), pres


def barB_pushforward_ok(P: Poset) -> bool:
    change, pres = barB_presentation(P)
    target = ideal_component(dual_relations_explicit(P), 3)
    return all(target.contains(change.push(r)) for r in pres.family)


def triangle_presentation(P: Poset) -> Presentation:
    if not is_forest(P):
        raise NotForest("the triangle presentation is stated for forest posets")
    g = lambda a: Generator("triangle", a)
    family = [TreePoly.binomial(compose2(g(a), 1, g(a)), compose2(g(a), 2, g(a))) for a in P.elements]
    for i in (1, 2):
        for a in P.elements:
            for b in P.elements:
                if a != b and P.comparable(a, b):
                    family.append(TreePoly({compose2(g(a), i, g(b)): 1}))
    return Presentation.from_family(alphabet("triangle", P.elements), family)


def barA_over_barB(P: Poset) -> BasisChange:
    require_standard(P)
    rows = {b: {a: Fraction(1) for a in P.elements if dual_leq(P, a, b)} for b in P.elements}
    return BasisChange("barB", "barA", tuple(P.elements), rows)


def barA_basis(P: Poset) -> BasisChange:
    """barA over bar, through barB."""
    return barB_basis(P).then(barA_over_barB(P))


# the duality isomorphism

def duality_map(P: Poset) -> dict[Generator, TreePoly]:
    """phi(star_b) for the generators of As(P^perp), as combinations of bar generators of P."""
    require_standard(P)
    images = {}
    for b in P.elements:
        acc: dict[int, int] = {}
        for a in P.elements:
            if dual_leq(P, a, b):
                for c in P.elements:
                    if P.leq(a, c):
                        acc[c] = acc.get(c, 0) + 1
        images[star(b)] = {bar(c): Fraction(v) for c, v in acc.items()}
    return images


def verify_duality_iso(P: Poset) -> Verdict:
    require_standard(P)
    D = thin_dual(P)
    phi = duality_map(P)
    labels = list(P.elements)
    M = RatMatrix([[phi[star(b)].get(bar(c), 0) for c in labels] for b in labels], len(labels))
    independent = M.rank() == P.size
    target = ideal_component(dual_relations_annihilator(P), 3)
    images_ok = all(target.contains(substitute_generators(r, phi)) for r in relation_family(D))
    dim_src = relations_star(D).dimension
    dim_dst = dual_relations_annihilator(P).dimension
    report = {
        "poset": P.to_doc(),
        "dual": D.to_doc(),
        "phi": {
            str(g): " + ".join(
                (f"{c}*" if c != 1 else "") + str(h) for h, c in sorted(img.items())
            )
            for g, img in sorted(phi.items())
        },
        "independent": independent,
        "relations_mapped": images_ok,
        "relation_dims": [dim_src, dim_dst],
        "dims_equal": dim_src == dim_dst,
    }
    ok = independent and images_ok and dim_src == dim_dst
    return Verdict(ok, report)


def hilbert_inversion(P: Poset, N: int) -> list[int]:
    """Coefficients of H_P(-H_dual(-t)) up to t^N (index = degree)."""
    require_standard(P)
    H = [0] + hilbert_coeffs(P, N)
    Hd = [0] + hilbert_coeffs(thin_dual(P), N)
    G = [-c for c in series.negate_argument(Hd)]
    return series.compose(H, G, N)


def hilbert_inversion_check(P: Poset, N: int) -> bool:
    return hilbert_inversion(P, N) == [0, 1] + [0] * (N - 1)

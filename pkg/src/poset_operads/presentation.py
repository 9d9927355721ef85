"""Binary quadratic presentations: an alphabet and a space of arity-3 relations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .trees import Generator, TreePoly, arity3_basis, reduced_basis


@dataclass(frozen=True)
class Presentation:
    alphabet: tuple
    relations: tuple  # reduced row echelon basis
    family: tuple = field(default=(), compare=False)  # generating family as built

    @classmethod
    def from_family(cls, alphabet: Iterable, family: Iterable[TreePoly]) -> "Presentation":
        alphabet = tuple(sorted(alphabet))
        family = tuple(p for p in family if p)
        for p in family:
            if p.arity != 3:
                raise ValueError("relations must have arity 3")
            if not p.labels() <= set(alphabet):
                raise ValueError("relation uses a generator outside the alphabet")
        basis = reduced_basis(list(family), arity3_basis(alphabet))
        return cls(alphabet, tuple(basis), family)

    @property
    def dimension(self) -> int:
        return len(self.relations)

    def is_binomial(self) -> bool:
        """Every generating relation is a difference of two trees."""
        return all(p.is_binomial() for p in self.family)

    def to_doc(self) -> dict:
        return {
            "alphabet": [str(g) for g in self.alphabet],
            "relations": [p.to_doc() for p in self.relations],
        }

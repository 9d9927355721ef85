"""Finite posets on {1, ..., n}.

A poset is stored as a dense boolean comparability matrix.  Elements are the
integers 1..n; the matrix itself is 0-indexed internally.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import (
    IncomparableElements,
    InvalidPoset,
    NotForest,
    NotStandardLabeling,
    NotThinForest,
)


@dataclass(frozen=True)
class Poset:
    size: int
    matrix: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        n = self.size
        m = self.matrix
        if len(m) != n or any(len(row) != n for row in m):
            raise InvalidPoset("comparability matrix must be n x n")
        for a in range(n):
            if not m[a][a]:
                raise InvalidPoset(f"relation is not reflexive at {a + 1}")
        for a in range(n):
            for b in range(n):
                if a != b and m[a][b] and m[b][a]:
                    raise InvalidPoset(f"cycle through {a + 1} and {b + 1}")
                if m[a][b]:
                    for c in range(n):
                        if m[b][c] and not m[a][c]:
                            raise InvalidPoset("relation is not transitive")

    # construction

    @classmethod
    def from_relations(cls, size: int, pairs: Iterable[Sequence[int]]) -> "Poset":
        """Reflexive-transitive closure of the given (lower, upper) pairs."""
        if size < 0:
            raise InvalidPoset("size must be nonnegative")
        m = [[a == b for b in range(size)] for a in range(size)]
        for pair in pairs:
            if len(pair) != 2:
                raise InvalidPoset(f"bad pair {pair!r}")
            a, b = pair
            if not (isinstance(a, int) and isinstance(b, int)):
                raise InvalidPoset(f"bad pair {pair!r}")
            if not (1 <= a <= size and 1 <= b <= size):
                raise InvalidPoset(f"element out of range in {pair!r}")
            m[a - 1][b - 1] = True
        # Warshall
        for k in range(size):
            for i in range(size):
                if m[i][k]:
                    row_k = m[k]
                    row_i = m[i]
                    for j in range(size):
                        if row_k[j]:
                            row_i[j] = True
        return cls(size, tuple(tuple(r) for r in m))

    from_covers = from_relations

    @classmethod
    def trivial(cls, size: int) -> "Poset":
        return cls.from_relations(size, [])

    @classmethod
    def chain(cls, size: int) -> "Poset":
        return cls.from_relations(size, [(a, a + 1) for a in range(1, size)])

    # queries

    @property
    def elements(self) -> range:
        return range(1, self.size + 1)

    def __len__(self) -> int:
        return self.size

    def leq(self, a: int, b: int) -> bool:
        return self.matrix[a - 1][b - 1]

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.matrix[a - 1][b - 1]

    def comparable(self, a: int, b: int) -> bool:
        return self.matrix[a - 1][b - 1] or self.matrix[b - 1][a - 1]

    def incomparable(self, a: int, b: int) -> bool:
        return not self.comparable(a, b)

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Cover pairs (a, b) with a < b and nothing strictly in between."""
        out = []
        for a in self.elements:
            for b in self.elements:
                if self.lt(a, b) and not any(
                    self.lt(a, c) and self.lt(c, b) for c in self.elements
                ):
                    out.append((a, b))
        return tuple(out)

    def lower_covers(self, b: int) -> list[int]:
        return [a for (a, c) in self.covers if c == b]

    def upper_covers(self, a: int) -> list[int]:
        return [c for (b, c) in self.covers if b == a]

    def minimal_elements(self) -> list[int]:
        return [a for a in self.elements if not any(self.lt(b, a) for b in self.elements)]

    def strict_pairs(self) -> list[tuple[int, int]]:
        return [(a, b) for a in self.elements for b in self.elements if self.lt(a, b)]

    def relabel(self, mapping: Mapping[int, int]) -> "Poset":
        """Poset whose element mapping[x] plays the role of x."""
        pairs = [(mapping[a], mapping[b]) for a, b in self.strict_pairs()]
        return Poset.from_relations(self.size, pairs)

    def to_doc(self) -> dict:
        return {"size": self.size, "covers": [list(c) for c in self.covers]}

    def __repr__(self) -> str:
        covers = " ".join(f"{a}<{b}" for a, b in self.covers)
        return f"Poset({self.size}: {covers})" if covers else f"Poset({self.size})"


def parse_poset(doc: Mapping) -> Poset:
    """Build a poset from ``{"size": n, "covers": [...]}`` or ``{"leq": [...]}``."""
    if not isinstance(doc, Mapping):
        raise InvalidPoset("poset document must be an object")
    pairs = doc.get("covers", doc.get("leq", []))
    if "size" in doc:
        size = doc["size"]
    else:
        size = max((max(p) for p in pairs), default=0)
    if not isinstance(size, int) or isinstance(size, bool):
        raise InvalidPoset("size must be an integer")
    if not isinstance(pairs, list):
        raise InvalidPoset("covers must be a list of pairs")
    return Poset.from_relations(size, [tuple(p) for p in pairs])


def meet_up(P: Poset, a: int, b: int) -> int:
    """The smaller of two comparable elements."""
    if P.leq(a, b):
        return a
    if P.leq(b, a):
        return b
    raise IncomparableElements(f"{a} and {b} are incomparable")


def intervals_count(P: Poset) -> int:
    return sum(row.count(True) for row in P.matrix)


# pattern checks

def _has_v_pattern(P: Poset) -> bool:
    # two incomparable elements below a common third
    for c in P.elements:
        below = [a for a in P.elements if P.lt(a, c)]
        for a, b in itertools.combinations(below, 2):
            if P.incomparable(a, b):
                return True
    return False


def is_forest(P: Poset) -> bool:
    return not _has_v_pattern(P)


def _has_two_chains(P: Poset) -> bool:
    pairs = P.strict_pairs()
    for (a, b), (c, d) in itertools.combinations(pairs, 2):
        if len({a, b, c, d}) < 4:
            continue
        if all(P.incomparable(x, y) for x in (a, b) for y in (c, d)):
            return True
    return False


def is_thin_forest(P: Poset) -> bool:
    return is_forest(P) and not _has_two_chains(P)


def is_trivial(P: Poset) -> bool:
    return not P.strict_pairs()


def is_total(P: Poset) -> bool:
    return all(P.comparable(a, b) for a in P.elements for b in P.elements)


# forests as rooted trees

def forest_children(P: Poset) -> dict[int, list[int]]:
    """Children of each element in the Hasse forest; key 0 holds the roots."""
    children: dict[int, list[int]] = {x: [] for x in range(P.size + 1)}
    for b in P.elements:
        low = P.lower_covers(b)
        if len(low) > 1:
            raise NotForest(f"{b} covers several elements")
        children[low[0] if low else 0].append(b)
    return children


def standard_labeling(P: Poset) -> Poset:
    """Relabel a thin forest in depth-first order, largest sibling subtree last."""
    if not is_thin_forest(P):
        raise NotThinForest("standard labeling needs a thin forest poset")
    children = forest_children(P)
    sizes: dict[int, int] = {}

    def size_of(x: int) -> int:
        if x not in sizes:
            sizes[x] = 1 + sum(size_of(y) for y in children[x])
        return sizes[x]

    order: list[int] = []

    def visit(x: int) -> None:
        if x:
            order.append(x)
        for y in sorted(children[x], key=lambda y: (size_of(y), y)):
            visit(y)

    visit(0)
    return P.relabel({old: new for new, old in enumerate(order, start=1)})


def is_standardly_labeled(P: Poset) -> bool:
    return is_thin_forest(P) and standard_labeling(P) == P


def require_standard(P: Poset) -> None:
    if not is_thin_forest(P):
        raise NotThinForest("expected a thin forest poset")
    if standard_labeling(P) != P:
        raise NotStandardLabeling("thin forest is not standardly labeled")


def dual_leq(P: Poset, a: int, b: int) -> bool:
    """a is below b in the dual of the thin forest P."""
    return a == b or (a < b and P.incomparable(a, b))


def thin_dual(P: Poset) -> Poset:
    require_standard(P)
    pairs = [(a, b) for a in P.elements for b in P.elements if a < b and P.incomparable(a, b)]
    return Poset.from_relations(P.size, pairs)


def _shift(P: Poset, k: int) -> list[tuple[int, int]]:
    return [(a + k, b + k) for a, b in P.strict_pairs()]


def _root_over(Q: Poset) -> Poset:
    pairs = _shift(Q, 1) + [(1, b + 1) for b in Q.elements]
    return Poset.from_relations(Q.size + 1, pairs)


def _singleton_plus(Q: Poset) -> Poset:
    return Poset.from_relations(Q.size + 1, _shift(Q, 1))


def thin_dual_recursive(P: Poset) -> Poset:
    """Dual computed by peeling element 1 off a standardly labeled thin forest."""
    require_standard(P)
    if P.size == 0:
        return P
    rest = Poset.from_relations(
        P.size - 1, [(a - 1, b - 1) for a, b in P.strict_pairs() if a != 1]
    )
    if all(P.leq(1, b) for b in P.elements):
        return _singleton_plus(thin_dual_recursive(rest)) if P.size > 1 else P
    return _root_over(thin_dual_recursive(rest))


def enumerate_thin_forests(n: int) -> list[Poset]:
    """All standardly labeled thin forests of size n."""
    if n <= 0:
        return [Poset.trivial(0)]
    level = [Poset.trivial(1)]
    for _ in range(n - 1):
        level = [f(Q) for Q in level for f in (_singleton_plus, _root_over)]
    return level


# exhaustive families

def canonical_form(P: Poset) -> tuple:
    """Isomorphism invariant key: lexicographically least relabeled matrix."""
    n = P.size
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(P.matrix[perm[i]][perm[j]] for i in range(n) for j in range(n))
        if best is None or key < best:
            best = key
    return (n, best)


def enumerate_posets(n: int, up_to_iso: bool = False) -> Iterator[Poset]:
    """Every labeled poset on n elements (or one per isomorphism class)."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    seen = set()
    for choice in itertools.product((0, 1, 2), repeat=len(pairs)):
        rel = []
        for (a, b), c in zip(pairs, choice):
            if c == 1:
                rel.append((a, b))
            elif c == 2:
                rel.append((b, a))
        try:
            P = Poset.from_relations(n, rel)
        except InvalidPoset:
            continue
        # closure may add pairs; keep only choices that were already closed
        if len(P.strict_pairs()) != len(rel):
            continue
        if up_to_iso:
            key = canonical_form(P)
            if key in seen:
                continue
            seen.add(key)
        yield P


def _rooted_forests(n: int, memo: dict = {}) -> list[tuple]:
    # unlabeled rooted forests as sorted tuples of trees; a tree is its forest of children
    if n in memo:
        return memo[n]
    if n == 0:
        memo[0] = [()]
        return memo[0]
    found = set()
    for k in range(1, n + 1):
        for sub in _rooted_forests(k - 1):
            for rest in _rooted_forests(n - k):
                found.add(tuple(sorted((sub,) + rest)))
    memo[n] = sorted(found)
    return memo[n]


def enumerate_forests(n: int) -> list[Poset]:
    """One forest poset per isomorphism class, labeled in preorder."""
    out = []
    for forest in _rooted_forests(n):
        pairs: list[tuple[int, int]] = []
        counter = [0]

        def place(tree: tuple, parent: int) -> None:
            counter[0] += 1
            me = counter[0]
            if parent:
                pairs.append((parent, me))
            for child in tree:
                place(child, me)

        for tree in forest:
            place(tree, 0)
        out.append(Poset.from_relations(n, pairs))
    return out


def random_poset(n: int, rng: random.Random, density: float = 0.3) -> Poset:
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    rel = [
        (perm[i], perm[j])
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < density
    ]
    return Poset.from_relations(n, rel)


# morphisms

@dataclass(frozen=True)
class PosetMorphism:
    source: Poset
    target: Poset
    mapping: tuple[int, ...]  # mapping[x - 1] is the image of x

    def __call__(self, x: int) -> int:
        return self.mapping[x - 1]

    @classmethod
    def from_function(cls, source: Poset, target: Poset, f: Callable[[int], int]):
        return cls(source, target, tuple(f(x) for x in source.elements))

    def then(self, other: "PosetMorphism") -> "PosetMorphism":
        """Composite: apply self, then other."""
        return PosetMorphism(self.source, other.target, tuple(other(self(x)) for x in self.source.elements))


def is_morphism(phi: PosetMorphism) -> bool:
    S, T = phi.source, phi.target
    if len(phi.mapping) != S.size or not all(1 <= y <= T.size for y in phi.mapping):
        return False
    return all(T.leq(phi(a), phi(b)) for a, b in S.strict_pairs())


def preserves_min(phi: PosetMorphism) -> bool:
    S, T = phi.source, phi.target
    for a in S.elements:
        for b in S.elements:
            if not S.comparable(a, b):
                continue
            fa, fb = phi(a), phi(b)
            if not T.comparable(fa, fb):
                return False
            if phi(meet_up(S, a, b)) != meet_up(T, fa, fb):
                return False
    return True

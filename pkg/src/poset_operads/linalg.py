"""Exact linear algebra over the rationals.

Two tools live here.  ``RatMatrix`` is a small dense matrix with rank,
reduced echelon form, nullspace and solve.  ``EchelonSpan`` grows a sparse
row-echelon basis one vector at a time using fraction-free integer updates;
it is what the ideal computations use, since their vectors are long and sparse.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Hashable, Iterable, Mapping, Sequence


class RatMatrix:
    def __init__(self, rows: Sequence[Sequence], ncols: int | None = None):
        self.entries = [[Fraction(x) for x in row] for row in rows]
        if ncols is None:
            ncols = len(self.entries[0]) if self.entries else 0
        if any(len(r) != ncols for r in self.entries):
            raise ValueError("ragged matrix")
        self.ncols = ncols

    @property
    def nrows(self) -> int:
        return len(self.entries)

    def rref(self) -> tuple[list[list[Fraction]], list[int]]:
        """Reduced row echelon form and the pivot columns."""
        rows = [r[:] for r in self.entries]
        pivots: list[int] = []
        r = 0
        for c in range(self.ncols):
            pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
            if pivot is None:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            lead = rows[r][c]
            rows[r] = [x / lead for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c] != 0:
                    f = rows[i][c]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
        return rows[:r], pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[list[Fraction]]:
        """Basis of {x : M x = 0}."""
        rows, pivots = self.rref()
        free = [c for c in range(self.ncols) if c not in pivots]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.ncols
            v[f] = Fraction(1)
            for row, p in zip(rows, pivots):
                v[p] = -row[f]
            basis.append(v)
        return basis

    def solve(self, b: Sequence) -> list[Fraction] | None:
        """Some x with M x = b, or None when the system is inconsistent."""
        aug = RatMatrix([row + [Fraction(v)] for row, v in zip(self.entries, b)], self.ncols + 1)
        rows, pivots = aug.rref()
        if self.ncols in pivots:
            return None
        x = [Fraction(0)] * self.ncols
        for row, p in zip(rows, pivots):
            x[p] = row[-1]
        return x


def _primitive(vec: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in vec.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = vec[min(vec)]
    if lead < 0:
        g = -g
    if g not in (0, 1):
        vec = {k: v // g for k, v in vec.items()}
    return vec


def _as_integer(vec: Mapping[int, Fraction | int]) -> dict[int, int]:
    den = 1
    for v in vec.values():
        d = Fraction(v).denominator
        den = den * d // gcd(den, d)
    return {k: int(Fraction(v) * den) for k, v in vec.items() if v != 0}


class EchelonSpan:
    """Sparse row-echelon basis of a growing subspace of Q^(columns).

    Columns are integers; the pivot of a row is its smallest column.  Rows are
    kept as primitive integer vectors (fraction-free elimination).
    """

    def __init__(self):
        self.rows: dict[int, dict[int, int]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def _reduce_int(self, vec: dict[int, int]) -> dict[int, int]:
        rows = self.rows
        while vec:
            hits = [c for c in vec if c in rows]
            if not hits:
                return vec
            c = min(hits)
            piv = rows[c]
            a, b = piv[c], vec[c]
            g = gcd(a, b)
            a //= g
            b //= g
            new = {k: a * v for k, v in vec.items()}
            for k, v in piv.items():
                w = new.get(k, 0) - b * v
                if w:
                    new[k] = w
                else:
                    new.pop(k, None)
            vec = _primitive(new) if new else new
        return vec

    def add(self, vec: Mapping[int, Fraction | int]) -> bool:
        """Insert a vector; return True when it enlarged the span."""
        v = self._reduce_int(_as_integer(vec))
        if not v:
            return False
        v = _primitive(v)
        self.rows[min(v)] = v
        return True

    def contains(self, vec: Mapping[int, Fraction | int]) -> bool:
        return not self._reduce_int(_as_integer(vec))

    def remainder(self, vec: Mapping[int, Fraction | int]) -> dict[int, Fraction]:
        """Canonical representative of vec modulo the span (no pivot columns)."""
        out = {k: Fraction(v) for k, v in vec.items() if v != 0}
        while True:
            hits = [c for c in out if c in self.rows]
            if not hits:
                return out
            c = min(hits)
            piv = self.rows[c]
            f = out[c] / piv[c]
            for k, v in piv.items():
                w = out.get(k, 0) - f * v
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)

    def pivots(self) -> list[int]:
        return sorted(self.rows)


class Indexer:
    """Stable map from hashable keys to consecutive column numbers."""

    def __init__(self, keys: Iterable[Hashable] = ()):
        self.index: dict[Hashable, int] = {}
        self.keys: list[Hashable] = []
        for k in keys:
            self(k)

    def __call__(self, key: Hashable) -> int:
        i = self.index.get(key)
        if i is None:
            i = self.index[key] = len(self.keys)
            self.keys.append(key)
        return i

    def __len__(self) -> int:
        return len(self.keys)

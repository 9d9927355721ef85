"""Truncated power series with exact coefficients, as lists indexed by degree."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def mul(f: Sequence, g: Sequence, order: int) -> list:
    out = [0] * (order + 1)
    for i, a in enumerate(f[: order + 1]):
        if not a:
            continue
        for j, b in enumerate(g[: order + 1 - i]):
            out[i + j] += a * b
    return out


def add(*fs: Sequence) -> list:
    n = max(len(f) for f in fs)
    return [sum(f[i] for f in fs if i < len(f)) for i in range(n)]


def compose(f: Sequence, g: Sequence, order: int) -> list:
    """f(g(t)) truncated at t^order; g must have no constant term."""
    if g and g[0]:
        raise ValueError("inner series must vanish at 0")
    out = [0] * (order + 1)
    power = [1] + [0] * order
    for k, a in enumerate(f[: order + 1]):
        if a:
            for i in range(order + 1):
                out[i] += a * power[i]
        power = mul(power, g, order)
    return out


def negate_argument(f: Sequence) -> list:
    """f(-t)."""
    return [c if i % 2 == 0 else -c for i, c in enumerate(f)]


def as_fractions(f: Sequence) -> list[Fraction]:
    return [Fraction(c) for c in f]

"""Ground tree rewriting: one-step rewriting, normalization, critical pairs.

Any object implementing :class:`Rewriter` can be fed to the functions of this
module.  :class:`RewriteSystem` covers finite lists of ground rules; the
Schröder contraction rule lives in :mod:`poset_operads.schroder`.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, NamedTuple, Optional, Sequence

from .errors import ArityMismatch, BudgetExceeded, NotTerminating
from .trees import (
    LEAF,
    Node,
    Position,
    Tree,
    arity,
    degree,
    fill,
    format_tree,
    match,
    parse_tree,
    positions,
    postorder_positions,
    put_at,
    subtree_at,
    tree_key,
    trees_by_degree,
)

STRATEGIES = ("leftmost-innermost", "rightmost-outermost")


class Verdict(NamedTuple):
    ok: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.ok


class Rewriter:
    """Interface shared by rule lists and schematic rules."""

    #: optional measure certifying termination; ``measure(s) < measure(t)`` for s -> t
    measure: Optional[Callable[[Tree], Any]] = None

    def apply_at(self, t: Tree, u: Position) -> Optional[Tree]:
        """Result of the first applicable rule at u, or None."""
        raise NotImplementedError

    def results_at(self, t: Tree, u: Position) -> list[Tree]:
        """All one-step results at position u."""
        raise NotImplementedError

    def critical_trees(self) -> Iterable[Tree]:
        raise NotImplementedError

    def context_trees(self, max_degree: int) -> Iterable[Tree]:
        raise NotImplementedError


@dataclass(frozen=True)
class RewriteSystem(Rewriter):
    rules: tuple[tuple[Tree, Tree], ...]
    measure: Optional[Callable[[Tree], Any]] = field(default=None, compare=False)

    def __post_init__(self):
        for lhs, rhs in self.rules:
            if arity(lhs) != arity(rhs):
                raise ArityMismatch(f"rule {format_tree(lhs)} -> {format_tree(rhs)} changes arity")
            if lhs == rhs:
                raise ValueError("a rule must change its left-hand side")
            if lhs is LEAF:
                raise ValueError("left-hand sides need an internal node")
        by_root = defaultdict(list)
        for lhs, rhs in self.rules:
            by_root[lhs.label].append((lhs, rhs))
        object.__setattr__(self, "_by_root", dict(by_root))

    @property
    def degree(self) -> int:
        return max((degree(l) for l, _ in self.rules), default=0)

    @property
    def signature(self) -> dict:
        sig: dict = {}

        def walk(t: Tree) -> None:
            if t is LEAF:
                return
            sig[t.label] = len(t.children)
            for c in t.children:
                walk(c)

        for lhs, rhs in self.rules:
            walk(lhs)
            walk(rhs)
        return sig

    def apply_at(self, t: Tree, u: Position) -> Optional[Tree]:
        sub = subtree_at(t, u)
        for lhs, rhs in self._by_root.get(sub.label, ()):
            caps = match(lhs, sub)
            if caps is not None:
                return put_at(t, u, fill(rhs, caps))
        return None

    def results_at(self, t: Tree, u: Position) -> list[Tree]:
        sub = subtree_at(t, u)
        out = []
        for lhs, rhs in self._by_root.get(sub.label, ()):
            caps = match(lhs, sub)
            if caps is not None:
                out.append(put_at(t, u, fill(rhs, caps)))
        return out

    def critical_trees(self) -> Iterator[Tree]:
        if not self.rules:
            return
        sig = self.signature
        for d in range(1, 2 * self.degree):
            yield from trees_by_degree(sig, d)

    def context_trees(self, max_degree: int) -> Iterator[Tree]:
        sig = self.signature
        for d in range(1, max_degree + 1):
            yield from trees_by_degree(sig, d)

    def to_doc(self) -> list[dict]:
        return [{"lhs": format_tree(l), "rhs": format_tree(r)} for l, r in self.rules]

    @classmethod
    def from_doc(cls, doc: Sequence[dict]) -> "RewriteSystem":
        return cls(tuple((parse_tree(d["lhs"]), parse_tree(d["rhs"])) for d in doc))


def one_step(R: Rewriter, t: Tree) -> set:
    out = set()
    for u in positions(t):
        out.update(R.results_at(t, u))
    return out


def _strategy_positions(t: Tree, strategy: str) -> list[Position]:
    if strategy == "leftmost-innermost":
        return postorder_positions(t)
    if strategy == "rightmost-outermost":
        # preorder with children visited right to left
        out: list[Position] = []

        def walk(s: Tree, u: Position) -> None:
            if s is LEAF:
                return
            out.append(u)
            for j in range(len(s.children), 0, -1):
                walk(s.children[j - 1], u + (j,))

        walk(t, ())
        return out
    raise ValueError(f"unknown strategy {strategy!r}")


def normalize(
    R: Rewriter,
    t: Tree,
    strategy: str = "leftmost-innermost",
    budget: Optional[int] = None,
    trace: Optional[list] = None,
) -> Tree:
    """Rewrite until no rule applies.  ``trace`` collects intermediate trees."""
    if budget is None:
        budget = 4 ** degree(t)
    steps = 0
    while True:
        for u in _strategy_positions(t, strategy):
            nxt = R.apply_at(t, u)
            if nxt is not None:
                break
        else:
            return t
        steps += 1
        if steps > budget:
            raise BudgetExceeded(f"no normal form within {budget} steps")
        t = nxt
        if trace is not None:
            trace.append(t)


def is_normal(R: Rewriter, t: Tree) -> bool:
    return all(R.apply_at(t, u) is None for u in positions(t))


def reachable_normal_forms(R: Rewriter, t: Tree, limit: int = 100_000) -> set:
    """Every normal form reachable from t (exhaustive search)."""
    seen = {t}
    stack = [t]
    found = set()
    while stack:
        s = stack.pop()
        nxt = one_step(R, s)
        if not nxt:
            found.add(s)
        for x in nxt:
            if x not in seen:
                seen.add(x)
                if len(seen) > limit:
                    raise BudgetExceeded("rewriting graph too large")
                stack.append(x)
    return found


def check_termination_measure(
    R: Rewriter, measure: Optional[Callable[[Tree], Any]] = None, max_degree: int = 4
) -> bool:
    """Bounded certificate: measure strictly increases along every step in small contexts."""
    measure = measure or R.measure
    if measure is None:
        raise ValueError("no measure given")
    for t in R.context_trees(max_degree):
        mt = measure(t)
        for s in one_step(R, t):
            if not mt < measure(s):
                return False
    return True


@dataclass(frozen=True)
class CriticalPair:
    peak: Tree
    left_result: Tree
    right_result: Tree
    joinable: bool
    joint: Optional[Tree] = None

    def to_doc(self) -> dict:
        return {
            "peak": format_tree(self.peak),
            "left": format_tree(self.left_result),
            "right": format_tree(self.right_result),
            "joinable": self.joinable,
            "joint": None if self.joint is None else format_tree(self.joint),
        }


def critical_pairs(R: Rewriter) -> list[CriticalPair]:
    out = []
    for peak in R.critical_trees():
        results = sorted(one_step(R, peak), key=tree_key)
        if len(results) < 2:
            continue
        nfs = {r: reachable_normal_forms(R, r) for r in results}
        for a, b in itertools.combinations(results, 2):
            common = nfs[a] & nfs[b]
            joint = min(common, key=tree_key) if common else None
            out.append(CriticalPair(peak, a, b, bool(common), joint))
    return out


def is_confluent(R: Rewriter, check_termination: bool = True) -> Verdict:
    if check_termination and R.measure is not None:
        if not check_termination_measure(R, R.measure):
            raise NotTerminating("registered measure does not decrease along the rules")
    for pair in critical_pairs(R):
        if not pair.joinable:
            return Verdict(False, pair)
    return Verdict(True, None)

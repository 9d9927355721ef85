"""Syntax trees, grafting, pattern occurrences and tree polynomials.

Trees are immutable: ``LEAF`` or ``Node(label, children)``.  Binary trees are
what the operads use; the rewriting machinery works for any arity, so
``Node`` does not insist on two children.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from functools import lru_cache
from typing import Any, Hashable, Iterable, Iterator, Mapping, NamedTuple, Sequence

from .errors import ArityMismatch, IndexOutOfRange, NotAnOccurrence, ParseError
from .linalg import RatMatrix

TAGS = ("star", "bar", "barB", "barA", "triangle")


class Generator(NamedTuple):
    tag: str
    label: int

    def __str__(self) -> str:
        return f"{self.tag}{self.label}"


def alphabet(tag: str, labels: Iterable[int]) -> list[Generator]:
    return [Generator(tag, a) for a in labels]


class _Leaf:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "LEAF"

    def __reduce__(self):
        return (_Leaf, ())


LEAF = _Leaf()


class Node(NamedTuple):
    label: Any
    children: tuple

    def __repr__(self) -> str:
        return format_tree(self)


Tree = Any  # LEAF or Node
Position = tuple[int, ...]


def node(label, *children) -> Node:
    return Node(label, tuple(children))


def corolla(label, k: int = 2) -> Node:
    return Node(label, (LEAF,) * k)


def is_leaf(t: Tree) -> bool:
    return t is LEAF


@lru_cache(maxsize=None)
def arity(t: Tree) -> int:
    if t is LEAF:
        return 1
    return sum(arity(c) for c in t.children)


@lru_cache(maxsize=None)
def degree(t: Tree) -> int:
    if t is LEAF:
        return 0
    return 1 + sum(degree(c) for c in t.children)


@lru_cache(maxsize=None)
def tree_key(t: Tree) -> tuple:
    """Sort key: leaf first, then label, then children left to right."""
    if t is LEAF:
        return (0,)
    return (1, t.label) + tuple(tree_key(c) for c in t.children)


def sort_trees(trees: Iterable[Tree]) -> list[Tree]:
    return sorted(trees, key=tree_key)


def graft(s: Tree, i: int, t: Tree) -> Tree:
    """s o_i t: plug the root of t into the i-th leaf of s."""
    if not 1 <= i <= arity(s):
        raise IndexOutOfRange(f"leaf {i} out of range for arity {arity(s)}")
    return _graft(s, i, t)


def _graft(s: Tree, i: int, t: Tree) -> Tree:
    if s is LEAF:
        return t
    kids = list(s.children)
    for j, c in enumerate(kids):
        k = arity(c)
        if i <= k:
            kids[j] = _graft(c, i, t)
            return Node(s.label, tuple(kids))
        i -= k
    raise IndexOutOfRange("leaf index out of range")


def compose2(x, i: int, y) -> Node:
    """Degree-2 tree x o_i y for two binary generators."""
    inner = corolla(y)
    return Node(x, (inner, LEAF)) if i == 1 else Node(x, (LEAF, inner))


@lru_cache(maxsize=None)
def _binary_trees(labels: tuple, n: int) -> tuple:
    if n == 1:
        return (LEAF,)
    out = []
    for k in range(1, n):
        lefts = _binary_trees(labels, k)
        rights = _binary_trees(labels, n - k)
        for a in labels:
            for l in lefts:
                for r in rights:
                    out.append(Node(a, (l, r)))
    return tuple(out)


def enumerate_trees(alphabet: Sequence, n: int) -> list[Tree]:
    """All binary trees with n leaves over the alphabet, in canonical order."""
    if n < 1:
        return []
    return sort_trees(_binary_trees(tuple(sorted(alphabet)), n))


def trees_by_degree(signature, d: int) -> list[Tree]:
    """All trees with exactly d internal nodes.

    ``signature`` maps label -> arity, or lists (label, arity) pairs when a
    label may appear with several arities.
    """
    pairs = signature.items() if isinstance(signature, Mapping) else signature
    return list(_by_degree(tuple(sorted(pairs, key=repr)), d))


@lru_cache(maxsize=None)
def _by_degree(sig: tuple, d: int) -> tuple:
    if d == 0:
        return (LEAF,)
    out = []
    for label, k in sig:
        for split in _compositions(d - 1, k):
            for kids in itertools.product(*(_by_degree(sig, m) for m in split)):
                out.append(Node(label, kids))
    return tuple(out)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    # weak compositions of total into the given number of parts
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# positions, occurrences, replacement

def subtree_at(t: Tree, u: Position) -> Tree:
    for step in u:
        t = t.children[step - 1]
    return t


def positions(t: Tree) -> list[Position]:
    """Positions of internal nodes in preorder."""
    out: list[Position] = []

    def walk(s: Tree, u: Position) -> None:
        if s is LEAF:
            return
        out.append(u)
        for j, c in enumerate(s.children, start=1):
            walk(c, u + (j,))

    walk(t, ())
    return out


def postorder_positions(t: Tree) -> list[Position]:
    """Positions of internal nodes, children before parents, left first."""
    out: list[Position] = []

    def walk(s: Tree, u: Position) -> None:
        if s is LEAF:
            return
        for j, c in enumerate(s.children, start=1):
            walk(c, u + (j,))
        out.append(u)

    walk(t, ())
    return out


def match(pattern: Tree, t: Tree) -> list[Tree] | None:
    """Subtrees of t sitting at the leaves of pattern, or None on mismatch."""
    captured: list[Tree] = []

    def go(p: Tree, s: Tree) -> bool:
        if p is LEAF:
            captured.append(s)
            return True
        if s is LEAF or s.label != p.label or len(s.children) != len(p.children):
            return False
        return all(go(pc, sc) for pc, sc in zip(p.children, s.children))

    return captured if go(pattern, t) else None


def fill(pattern: Tree, captured: Sequence[Tree]) -> Tree:
    """Inverse of match: put the given trees on the leaves of pattern."""
    it = iter(captured)

    def go(p: Tree) -> Tree:
        if p is LEAF:
            return next(it)
        return Node(p.label, tuple(go(c) for c in p.children))

    return go(pattern)


def put_at(t: Tree, u: Position, s: Tree) -> Tree:
    """t with the subtree at u replaced by s."""
    if not u:
        return s
    kids = list(t.children)
    kids[u[0] - 1] = put_at(kids[u[0] - 1], u[1:], s)
    return Node(t.label, tuple(kids))


def find_occurrences(t: Tree, pattern: Tree) -> list[Position]:
    return [u for u in positions(t) if match(pattern, subtree_at(t, u)) is not None]


def replace_at(t: Tree, u: Position, pattern: Tree, replacement: Tree) -> Tree:
    if arity(pattern) != arity(replacement):
        raise ArityMismatch("pattern and replacement differ in arity")
    try:
        sub = subtree_at(t, u)
    except (AttributeError, IndexError):
        raise NotAnOccurrence(f"no node at position {u}") from None
    captured = match(pattern, sub)
    if captured is None:
        raise NotAnOccurrence(f"pattern does not occur at {u}")
    return put_at(t, u, fill(replacement, captured))


def infix_word(t: Tree) -> tuple:
    if t is LEAF:
        return ()
    left, right = t.children
    return infix_word(left) + (t.label,) + infix_word(right)


def relabel_tree(t: Tree, f) -> Tree:
    if t is LEAF:
        return t
    return Node(f(t.label), tuple(relabel_tree(c, f) for c in t.children))


# text format

def _label_text(label) -> str:
    return str(label)


def format_tree(t: Tree) -> str:
    if t is LEAF:
        return "_"
    return "(" + " ".join([_label_text(t.label)] + [format_tree(c) for c in t.children]) + ")"


_TOKEN = re.compile(r"\(|\)|[^\s()]+")
_GEN = re.compile(r"^(star|barB|barA|bar|triangle)(\d+)$")


def _parse_label(tok: str):
    m = _GEN.match(tok)
    if m:
        return Generator(m.group(1), int(m.group(2)))
    if tok.lstrip("-").isdigit():
        return int(tok)
    return tok


def parse_tree(text: str) -> Tree:
    """Parse the s-expression format: ``_`` or ``(label child ...)``."""
    tokens = _TOKEN.findall(text)
    pos = 0

    def go() -> Tree:
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("unexpected end of tree text")
        tok = tokens[pos]
        pos += 1
        if tok == "_":
            return LEAF
        if tok != "(":
            raise ParseError(f"unexpected token {tok!r}")
        if pos >= len(tokens) or tokens[pos] in ("(", ")", "_"):
            raise ParseError("node without a label")
        label = _parse_label(tokens[pos])
        pos += 1
        kids = []
        while pos < len(tokens) and tokens[pos] != ")":
            kids.append(go())
        if pos >= len(tokens):
            raise ParseError("unbalanced parentheses")
        pos += 1
        if not kids:
            raise ParseError("node without children")
        return Node(label, tuple(kids))

    t = go()
    if pos != len(tokens):
        raise ParseError("trailing tokens after tree")
    return t


# linear combinations

class TreePoly:
    """Finite rational combination of trees of one arity."""

    __slots__ = ("arity", "terms")

    def __init__(self, terms: Mapping[Tree, Any] | Iterable[tuple[Tree, Any]] = (), arity_: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Tree, Fraction] = {}
        for t, c in items:
            c = Fraction(c)
            if c:
                acc[t] = acc.get(t, Fraction(0)) + c
        self.terms = {t: c for t, c in acc.items() if c}
        arities = {arity(t) for t in self.terms}
        if len(arities) > 1:
            raise ArityMismatch("trees of different arities in one polynomial")
        if arities:
            found = arities.pop()
            if arity_ is not None and arity_ != found:
                raise ArityMismatch("declared arity disagrees with the trees")
            arity_ = found
        self.arity = arity_

    @classmethod
    def of(cls, *pairs) -> "TreePoly":
        """TreePoly.of(c1, t1, c2, t2, ...)."""
        return cls(zip(pairs[1::2], pairs[0::2]))

    @classmethod
    def binomial(cls, s: Tree, t: Tree) -> "TreePoly":
        return cls([(s, 1), (t, -1)])

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self):
        return iter(self.items())

    def items(self) -> list[tuple[Tree, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: tree_key(kv[0]))

    def __add__(self, other: "TreePoly") -> "TreePoly":
        return TreePoly(list(self.terms.items()) + list(other.terms.items()), self.arity or other.arity)

    def __neg__(self) -> "TreePoly":
        return TreePoly({t: -c for t, c in self.terms.items()}, self.arity)

    def __sub__(self, other: "TreePoly") -> "TreePoly":
        return self + (-other)

    def scale(self, c) -> "TreePoly":
        return TreePoly({t: c * v for t, v in self.terms.items()}, self.arity)

    def __eq__(self, other) -> bool:
        return isinstance(other, TreePoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def normalized(self) -> "TreePoly":
        """Scaled so that the first term (canonical order) has coefficient 1."""
        if not self.terms:
            return self
        lead = self.items()[0][1]
        return self.scale(1 / lead)

    def is_binomial(self) -> bool:
        return len(self.terms) == 2 and sorted(self.terms.values()) == [-1, 1]

    def labels(self) -> set:
        out = set()
        for t in self.terms:
            stack = [t]
            while stack:
                s = stack.pop()
                if s is not LEAF:
                    out.add(s.label)
                    stack.extend(s.children)
        return out

    def to_doc(self) -> list[dict]:
        return [{"coeff": _frac_text(c), "tree": format_tree(t)} for t, c in self.items()]

    @classmethod
    def from_doc(cls, doc: Sequence[Mapping]) -> "TreePoly":
        try:
            return cls([(parse_tree(d["tree"]), Fraction(d["coeff"])) for d in doc])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad polynomial document: {exc}") from None

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for t, c in self.items():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            coef = "" if mag == 1 else f"{_frac_text(mag)}*"
            parts.append(f"{sign} {coef}{format_tree(t)}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[1:]

    __repr__ = __str__


def _frac_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def substitute_generators(poly: TreePoly, images: Mapping[Any, Mapping[Any, Any]]) -> TreePoly:
    """Replace each generator by a linear combination of generators, multilinearly."""
    acc: list[tuple[Tree, Fraction]] = []

    def expand(t: Tree) -> list[tuple[Tree, Fraction]]:
        if t is LEAF:
            return [(LEAF, Fraction(1))]
        options = [expand(c) for c in t.children]
        out = []
        for g, cg in images[t.label].items():
            for combo in itertools.product(*options):
                coeff = Fraction(cg)
                for _, c in combo:
                    coeff *= c
                out.append((Node(g, tuple(s for s, _ in combo)), coeff))
        return out

    for t, c in poly.terms.items():
        acc.extend((s, c * v) for s, v in expand(t))
    return TreePoly(acc, poly.arity)


# Koszul scalar product on arity 3

def _shape(t: Tree) -> tuple:
    # (x, y, i) for t = x o_i y
    left, right = t.children
    if left is not LEAF:
        return (t.label, left.label, 1)
    return (t.label, right.label, 2)


def _check_arity3(t: Tree) -> None:
    if t is LEAF or degree(t) != 2 or arity(t) != 3:
        raise ArityMismatch("scalar product is defined on binary trees of arity 3")


def tree_pairing(s: Tree, t: Tree) -> int:
    _check_arity3(s)
    _check_arity3(t)
    a, b = _shape(s), _shape(t)
    if a != b:
        return 0
    return 1 if a[2] == 1 else -1


def scalar_product(u: TreePoly, v: TreePoly) -> Fraction:
    for p in (u, v):
        if p.arity not in (None, 3):
            raise ArityMismatch("scalar product needs arity 3 polynomials")
    total = Fraction(0)
    for t, c in u.terms.items():
        d = v.terms.get(t)
        if d:
            total += c * d * tree_pairing(t, t)
    return total


def arity3_basis(alphabet: Sequence) -> list[Node]:
    return enumerate_trees(alphabet, 3)


def annihilator(space: Sequence[TreePoly], alphabet: Sequence) -> list[TreePoly]:
    """Basis of the orthogonal of span(space) in Free(alphabet)(3)."""
    basis = arity3_basis(alphabet)
    if not space:
        return [TreePoly({t: 1}) for t in basis]
    # <r, v> = sum_t r_t v_t sign(t): the rows are r_t * sign(t)
    rows = [[r.terms.get(t, 0) * tree_pairing(t, t) for t in basis] for r in space]
    null = RatMatrix(rows, len(basis)).nullspace()
    return [TreePoly(dict(zip(basis, v))) for v in null]


def span_rank(polys: Sequence[TreePoly], basis: Sequence[Tree] | None = None) -> int:
    if basis is None:
        basis = sort_trees({t for p in polys for t in p.terms})
    if not polys or not basis:
        return 0
    return RatMatrix([[p.terms.get(t, 0) for t in basis] for p in polys], len(basis)).rank()


def reduced_basis(polys: Sequence[TreePoly], basis: Sequence[Tree] | None = None) -> list[TreePoly]:
    """Reduced row echelon basis of span(polys), columns in canonical tree order."""
    if basis is None:
        basis = sort_trees({t for p in polys for t in p.terms})
    if not polys or not basis:
        return []
    rows, _ = RatMatrix([[p.terms.get(t, 0) for t in basis] for p in polys], len(basis)).rref()
    return [TreePoly(dict(zip(basis, r))) for r in rows]


def in_span(x: TreePoly, polys: Sequence[TreePoly]) -> bool:
    if not x:
        return True
    basis = sort_trees({t for p in list(polys) + [x] for t in p.terms})
    return span_rank(list(polys) + [x], basis) == span_rank(list(polys), basis)

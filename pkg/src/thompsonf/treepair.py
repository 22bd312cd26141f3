"""Reduced tree-pair diagrams.

A binary tree is either ``LEAF`` (``None``) or a pair ``(left, right)``.  The
leaf at path ``p`` (left = 0, right = 1) stands for the standard dyadic
interval of [0,1] whose binary expansion starts with ``p``.  A pair
``(dom, ran)`` is the map sending the i-th leaf interval of ``dom`` linearly
onto the i-th leaf interval of ``ran``.  With this orientation

    ((*,*),*) -> (*,(*,*))

is x0: [0,1/4] -> [0,1/2], [1/4,1/2] -> [1/2,3/4], [1/2,1] -> [3/4,1].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import plmap
from .dyadic import ONE, ZERO, Dyadic
from .plmap import UNIT, PLMap

__all__ = [
    "LEAF",
    "TreePair",
    "LeafCountMismatch",
    "leaves",
    "leaf_count",
    "parse_tree",
    "tree_str",
    "to_map",
    "from_map",
    "multiply",
    "reduce",
    "inverse",
    "add_caret",
    "X0",
    "X1",
]

LEAF = None
Tree = Optional[tuple]


class LeafCountMismatch(ValueError):
    pass


def leaf_count(t: Tree) -> int:
    if t is LEAF:
        return 1
    return leaf_count(t[0]) + leaf_count(t[1])


def leaves(t: Tree, lo: Dyadic = ZERO, width_exp: int = 0) -> list[tuple[Dyadic, Dyadic]]:
    """Leaf intervals ``(lo, hi)`` in left-to-right order."""
    out = []

    def walk(t, lo, e):
        if t is LEAF:
            out.append((lo, lo + Dyadic(1, e)))
        else:
            walk(t[0], lo, e + 1)
            walk(t[1], lo + Dyadic(1, e + 1), e + 1)

    walk(t, lo, width_exp)
    return out


def partition(t: Tree) -> list[Dyadic]:
    ivs = leaves(t)
    return [iv[0] for iv in ivs] + [ONE]


def tree_str(t: Tree) -> str:
    if t is LEAF:
        return "*"
    return f"({tree_str(t[0])},{tree_str(t[1])})"


def parse_tree(text: str) -> Tree:
    s = text.replace(" ", "")
    pos = 0

    def node():
        nonlocal pos
        if pos >= len(s):
            raise ValueError(f"unexpected end of tree {text!r}")
        if s[pos] == "*":
            pos += 1
            return LEAF
        if s[pos] != "(":
            raise ValueError(f"unexpected {s[pos]!r} at {pos} in {text!r}")
        pos += 1
        left = node()
        if pos >= len(s) or s[pos] != ",":
            raise ValueError(f"expected ',' at {pos} in {text!r}")
        pos += 1
        right = node()
        if pos >= len(s) or s[pos] != ")":
            raise ValueError(f"expected ')' at {pos} in {text!r}")
        pos += 1
        return (left, right)

    t = node()
    if pos != len(s):
        raise ValueError(f"trailing input at {pos} in {text!r}")
    return t


@dataclass(frozen=True)
class TreePair:
    dom: Tree
    ran: Tree

    def __post_init__(self):
        if leaf_count(self.dom) != leaf_count(self.ran):
            raise LeafCountMismatch(
                f"{leaf_count(self.dom)} leaves in domain tree, {leaf_count(self.ran)} in range tree"
            )

    def __str__(self):
        return f"{tree_str(self.dom)} -> {tree_str(self.ran)}"

    @classmethod
    def parse(cls, text: str) -> "TreePair":
        dom, sep, ran = text.partition("->")
        if not sep:
            raise ValueError(f"expected 'dom -> ran', got {text!r}")
        return cls(parse_tree(dom), parse_tree(ran))

    def __mul__(self, other):
        return multiply(self, other)

    @property
    def size(self) -> int:
        return leaf_count(self.dom)


def to_map(p: TreePair) -> PLMap:
    pts = list(zip(partition(p.dom), partition(p.ran)))
    return plmap.make(UNIT, pts)


def _is_standard(lo: Dyadic, hi: Dyadic) -> bool:
    # [lo, hi] = [j/2^n, (j+1)/2^n]
    w = hi - lo
    if w.num != 1:
        return False
    return lo.exp <= w.exp


def _build_tree(intervals: list, lo: Dyadic, e: int) -> Tree:
    """Tree whose leaves are the given standard intervals covering [lo, lo + 2^-e]."""
    if len(intervals) == 1:
        return LEAF
    mid = lo + Dyadic(1, e + 1)
    k = next(i for i, iv in enumerate(intervals) if iv[0] >= mid)
    return (_build_tree(intervals[:k], lo, e + 1), _build_tree(intervals[k:], mid, e + 1))


def from_map(f: PLMap) -> TreePair:
    """Reduced tree pair of a map of [0,1]."""
    if f.domain != UNIT:
        raise plmap.DomainMismatch("tree pairs represent maps of [0,1] only")
    images = []

    def split(lo: Dyadic, e: int) -> Tree:
        hi = lo + Dyadic(1, e)
        # linear on [lo, hi] iff no breakpoint strictly inside
        i = plmap._segment_right(f, lo)
        linear = f.xs[i + 1] >= hi
        ylo, yhi = plmap.evaluate(f, lo), plmap.evaluate(f, hi)
        if linear and _is_standard(ylo, yhi):
            images.append((ylo, yhi))
            return LEAF
        mid = lo + Dyadic(1, e + 1)
        return (split(lo, e + 1), split(mid, e + 1))

    dom = split(ZERO, 0)
    ran = _build_tree(images, ZERO, 0)
    return reduce(TreePair(dom, ran))


def _caret_indices(t: Tree) -> set[int]:
    """Leaf indices i such that leaves i and i+1 are siblings."""
    out = set()
    count = 0

    def walk(t):
        nonlocal count
        if t is LEAF:
            count += 1
            return
        if t[0] is LEAF and t[1] is LEAF:
            out.add(count)
            count += 2
            return
        walk(t[0])
        walk(t[1])

    walk(t)
    return out


def _collapse(t: Tree, i: int) -> Tree:
    """Replace the caret over leaves i, i+1 by a single leaf."""
    count = 0

    def walk(t):
        nonlocal count
        if t is LEAF:
            count += 1
            return t
        if t[0] is LEAF and t[1] is LEAF and count == i:
            count += 2
            return LEAF
        return (walk(t[0]), walk(t[1]))

    return walk(t)


def reduce(p: TreePair) -> TreePair:
    dom, ran = p.dom, p.ran
    while True:
        common = _caret_indices(dom) & _caret_indices(ran)
        if not common:
            return TreePair(dom, ran)
        # collapse from the right so earlier indices stay valid
        for i in sorted(common, reverse=True):
            dom, ran = _collapse(dom, i), _collapse(ran, i)


def add_caret(p: TreePair, i: int) -> TreePair:
    """Hang a caret under leaf i of both trees (an unreduced equivalent pair)."""

    def grow(t):
        count = 0

        def walk(t):
            nonlocal count
            if t is LEAF:
                count += 1
                return (LEAF, LEAF) if count - 1 == i else LEAF
            return (walk(t[0]), walk(t[1]))

        return walk(t)

    return TreePair(grow(p.dom), grow(p.ran))


def _union(s: Tree, t: Tree) -> Tree:
    if s is LEAF:
        return t
    if t is LEAF:
        return s
    return (_union(s[0], t[0]), _union(s[1], t[1]))


def _subtrees_under(t: Tree, u: Tree) -> list[Tree]:
    """For each leaf of t (u refines t), the subtree of u hanging at that leaf."""
    if t is LEAF:
        return [u]
    if u is LEAF:
        raise ValueError("second tree does not refine the first")
    return _subtrees_under(t[0], u[0]) + _subtrees_under(t[1], u[1])


def _graft(t: Tree, subtrees: list[Tree]) -> Tree:
    it = iter(subtrees)

    def walk(t):
        if t is LEAF:
            return next(it)
        return (walk(t[0]), walk(t[1]))

    return walk(t)


def multiply(p: TreePair, q: TreePair) -> TreePair:
    """Right-action product: to_map(multiply(p, q)) == compose(to_map(p), to_map(q))."""
    u = _union(p.ran, q.dom)
    dom = _graft(p.dom, _subtrees_under(p.ran, u))
    ran = _graft(q.ran, _subtrees_under(q.dom, u))
    return reduce(TreePair(dom, ran))


def inverse(p: TreePair) -> TreePair:
    return TreePair(p.ran, p.dom)


IDENTITY = TreePair(LEAF, LEAF)
X0 = TreePair.parse("((*,*),*) -> (*,(*,*))")
X1 = TreePair.parse("(*,((*,*),*)) -> (*,(*,(*,*)))")

"""Explicit subdigons and tubdigons as plane trees, with exhaustive
enumeration by exact type.

A subdivided roofed polygon is equivalent to a plane tree: the null
subdigon is a leaf, and a subdivision whose central face sits on the roof
of ``k`` child subdivisions is a node with ``k`` ordered children.  A
node of arity ``k`` stands for a ``(k+1)``-gon face, so subdigons are the
trees with no unary nodes and tubdigons (2-gons allowed) are arbitrary
plane trees.  Equality, hashing and enumeration are all structural.

Enumeration works by exact face budgets: children receive every ordered
split of the remaining budget, so no shape is ever generated and then
rejected.  Results are memoized per budget; all shapes are immutable.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator

from .errors import BoundExceededError
from .typevectors import TubType, TypeVector

__all__ = [
    "Shape",
    "LEAF",
    "build",
    "type_of",
    "accounting_monomial",
    "encode_shape",
    "enumerate_subdigons",
    "enumerate_tubdigons",
    "count_by_enumeration",
]

DEFAULT_MAX_EDGES = 25
DEFAULT_MAX_GRADE = 20


class Shape:
    """A plane tree; ``children == ()`` is the null shape (leaf).

    Children are ordered: the faces hang off the central polygon
    counterclockwise, so ``Shape((a, b))`` and ``Shape((b, a))`` are
    different shapes of the same type.
    """

    __slots__ = ("_children", "_hash")

    def __init__(self, children: Iterable["Shape"] = ()):
        children = tuple(children)
        for child in children:
            if not isinstance(child, Shape):
                raise TypeError("children must be Shape instances")
        self._children = children
        self._hash = hash(children)

    @property
    def children(self) -> tuple["Shape", ...]:
        return self._children

    @property
    def arity(self) -> int:
        return len(self._children)

    def is_leaf(self) -> bool:
        return not self._children

    def __eq__(self, other) -> bool:
        if not isinstance(other, Shape):
            return NotImplemented
        return self._children == other._children

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"<Shape {encode_shape(self)}>"


LEAF = Shape()


def build(arity: int, children: Iterable[Shape], *, bigons: bool = True) -> Shape:
    """Compose ``arity`` child shapes under a new central ``(arity+1)``-gon.

    With ``bigons=False`` (subdigon mode) arity 1 is rejected, since
    subdigons have no 2-gon faces.
    """
    children = tuple(children)
    if arity < 1:
        raise ValueError(f"arity must be >= 1, got {arity}")
    if arity == 1 and not bigons:
        raise ValueError("arity 1 (a 2-gon) is not allowed in subdigon mode")
    if len(children) != arity:
        raise ValueError(f"arity {arity} given {len(children)} children")
    return Shape(children)


def type_of(s: Shape) -> TubType:
    """The type of a shape: arity-``k`` nodes counted as ``(k+1)``-gons."""
    counts: dict[int, int] = {}
    stack = [s]
    while stack:
        node = stack.pop()
        if node.is_leaf():
            continue
        counts[node.arity] = counts.get(node.arity, 0) + 1
        stack.extend(node.children)
    return TubType.from_arity_counts(counts)


# The exponent vector of a shape's accounting monomial is exactly its type.
accounting_monomial = type_of


def encode_shape(s: Shape) -> str:
    """Canonical text encoding: leaf is ``|``, a node is ``(k: c1 ... ck)``."""
    if s.is_leaf():
        return "|"
    inner = " ".join(encode_shape(c) for c in s.children)
    return f"({s.arity}: {inner})"


def enumerate_subdigons(m: TypeVector, *, max_edges: int = DEFAULT_MAX_EDGES) -> Iterator[Shape]:
    """Yield every subdigon of exactly type ``m``, each once, in a fixed
    deterministic order.  Fails fast when the type has more than
    ``max_edges`` edges."""
    edges = m.edge_count()
    if edges > max_edges:
        raise BoundExceededError(f"type {m!r} has {edges} edges, bound is {max_edges}")
    yield from _shapes_of_budget(TubType(0, m))


def enumerate_tubdigons(t: TubType, *, max_grade: int = DEFAULT_MAX_GRADE) -> Iterator[Shape]:
    """Yield every tubdigon of exactly type ``t``, each once, in a fixed
    deterministic order.  Fails fast when the edge grade exceeds
    ``max_grade``."""
    grade = t.edge_grade()
    if grade > max_grade:
        raise BoundExceededError(f"type {t} has edge grade {grade}, bound is {max_grade}")
    yield from _shapes_of_budget(t)


def count_by_enumeration(t: TubType, *, max_grade: int = DEFAULT_MAX_GRADE) -> int:
    """Count tubdigons of type ``t`` by actually producing them.

    The brute-force oracle against the closed-form counts.
    """
    return sum(1 for _ in enumerate_tubdigons(t, max_grade=max_grade))


_BUDGET_CACHE: dict[TubType, tuple[Shape, ...]] = {}


def _shapes_of_budget(budget: TubType) -> tuple[Shape, ...]:
    """All shapes whose node-arity counts equal ``budget`` exactly."""
    cached = _BUDGET_CACHE.get(budget)
    if cached is not None:
        return cached
    if budget.is_null():
        shapes: tuple[Shape, ...] = (LEAF,)
    else:
        acc = []
        for arity in budget.support:
            remaining = _remove_one(budget, arity)
            for child_budgets in _ordered_splits(remaining, arity):
                pools = [_shapes_of_budget(b) for b in child_budgets]
                for children in itertools.product(*pools):
                    acc.append(Shape(children))
        shapes = tuple(acc)
    _BUDGET_CACHE[budget] = shapes
    return shapes


def _remove_one(budget: TubType, arity: int) -> TubType:
    counts = {i: budget.count(i) for i in budget.support}
    counts[arity] -= 1
    return TubType.from_arity_counts({i: c for i, c in counts.items() if c})


def _ordered_splits(budget: TubType, k: int) -> Iterator[tuple[TubType, ...]]:
    """All ways to split ``budget`` into ``k`` ordered child budgets, in
    lexicographic order of the per-arity compositions."""
    keys = budget.support
    per_key = [_compositions(budget.count(i), k) for i in keys]
    for combo in itertools.product(*per_key):
        yield tuple(
            TubType.from_arity_counts(
                {key: parts[child] for key, parts in zip(keys, combo) if parts[child]}
            )
            for child in range(k)
        )


def _compositions(total: int, k: int) -> list[tuple[int, ...]]:
    """Ordered k-tuples of non-negative integers summing to ``total``,
    ascending lexicographically."""
    if k == 1:
        return [(total,)]
    return [
        (first,) + rest
        for first in range(total + 1)
        for rest in _compositions(total - first, k - 1)
    ]

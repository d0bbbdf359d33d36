"""Face-count type vectors for subdivided polygons.

A subdivided roofed polygon (a *subdigon*) is described by its type
``[m2, m3, m4, ...]``: it contains ``m2`` triangles, ``m3`` quadrilaterals
and in general ``m_i`` faces with ``i + 1`` sides.  Allowing 2-gon faces as
well (a *tubdigon*) prepends a count ``m1``, written ``[m1; m2, m3, ...]``.

:class:`TypeVector` holds the subdigon part (indices start at gonality 2),
:class:`TubType` the full vector with the 2-gon count.  Both are immutable
sparse maps: zero counts are never stored, so a type with one huge face
costs one entry.  All arithmetic is plain Python integers, hence exact at
any size.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

__all__ = [
    "TypeVector",
    "TubType",
    "NULL_TYPE",
    "parse_type",
    "type_vectors_of_grade",
]


def _canonical_entries(counts, min_index: int) -> tuple[tuple[int, int], ...]:
    if isinstance(counts, Mapping):
        items = counts.items()
    else:
        items = ((i, c) for i, c in enumerate(counts, start=min_index))
    out = {}
    for index, count in items:
        if not isinstance(index, int) or not isinstance(count, int):
            raise TypeError("gonality indices and counts must be integers")
        if index < min_index:
            raise ValueError(f"gonality index {index} below minimum {min_index}")
        if count < 0:
            raise ValueError(f"negative face count {count} for index {index}")
        if count:
            out[index] = out.get(index, 0) + count
    return tuple(sorted(out.items()))


class TypeVector:
    """Sparse face-count vector ``[m2, m3, ...]`` of a subdigon.

    Accepts either a mapping from gonality index (>= 2) to count, or a
    dense iterable starting at index 2.  Zero counts are dropped, so two
    vectors are equal exactly when they describe the same subdivision
    type::

        TypeVector([2, 1]) == TypeVector({2: 2, 3: 1})
    """

    __slots__ = ("_entries", "_hash")

    def __init__(self, counts: Mapping[int, int] | Iterable[int] = ()):
        self._entries = _canonical_entries(counts, min_index=2)
        self._hash = hash(self._entries)

    @property
    def entries(self) -> tuple[tuple[int, int], ...]:
        """Sorted ``(gonality_index, count)`` pairs; counts are positive."""
        return self._entries

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self._entries)

    def count(self, index: int) -> int:
        for i, c in self._entries:
            if i == index:
                return c
        return 0

    def is_empty(self) -> bool:
        return not self._entries

    def vertex_count(self) -> int:
        """Vertices of any subdigon of this type: ``2 + sum (i-1)*m_i``."""
        return 2 + sum((i - 1) * c for i, c in self._entries)

    def edge_count(self) -> int:
        """Edges of any subdigon of this type: ``1 + sum i*m_i``."""
        return 1 + sum(i * c for i, c in self._entries)

    def face_count(self) -> int:
        """Faces of any subdigon of this type: ``sum m_i``."""
        return sum(c for _, c in self._entries)

    def __add__(self, other: "TypeVector") -> "TypeVector":
        if not isinstance(other, TypeVector):
            return NotImplemented
        merged = dict(self._entries)
        for i, c in other._entries:
            merged[i] = merged.get(i, 0) + c
        return TypeVector(merged)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TypeVector):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __repr__(self) -> str:
        return f"TypeVector({dict(self._entries)!r})"


class TubType:
    """Full type ``[m1; m2, m3, ...]`` of a tubdigon.

    ``m1`` counts 2-gon faces; ``rest`` is the subdigon part.  A
    :class:`TubType` with ``m1 == 0`` carries exactly the information of
    its :class:`TypeVector`.  Instances double as monomial exponent
    vectors for the generating series (index 1 is the 2-gon variable), so
    ``a + b`` performs the exponent addition of a monomial product.
    """

    __slots__ = ("_m1", "_rest", "_hash")

    def __init__(self, m1: int = 0, rest: TypeVector | Mapping[int, int] | Iterable[int] = ()):
        if not isinstance(m1, int):
            raise TypeError("2-gon count m1 must be an integer")
        if m1 < 0:
            raise ValueError(f"negative 2-gon count {m1}")
        if not isinstance(rest, TypeVector):
            rest = TypeVector(rest)
        self._m1 = m1
        self._rest = rest
        self._hash = hash((m1, rest))

    @classmethod
    def from_arity_counts(cls, counts: Mapping[int, int]) -> "TubType":
        """Build from a map keyed by gonality index, key 1 meaning 2-gons."""
        m1 = counts.get(1, 0)
        rest = {i: c for i, c in counts.items() if i != 1}
        return cls(m1, TypeVector(rest))

    @property
    def m1(self) -> int:
        return self._m1

    @property
    def rest(self) -> TypeVector:
        return self._rest

    @property
    def support(self) -> tuple[int, ...]:
        base = self._rest.support
        return ((1,) + base) if self._m1 else base

    def count(self, index: int) -> int:
        if index == 1:
            return self._m1
        return self._rest.count(index)

    def is_null(self) -> bool:
        return self._m1 == 0 and self._rest.is_empty()

    def vertex_count(self) -> int:
        """2-gons add no vertices, so this is the subdigon vertex count."""
        return self._rest.vertex_count()

    def edge_count(self) -> int:
        return self._m1 + self._rest.edge_count()

    def face_count(self) -> int:
        return self._m1 + self._rest.face_count()

    def counts(self) -> tuple[int, int, int]:
        """``(vertices, edges, faces)`` of any tubdigon of this type."""
        return self.vertex_count(), self.edge_count(), self.face_count()

    def edge_grade(self) -> int:
        """Edge count minus one: the additive grading used for series truncation.

        Zero exactly for the null type; a monomial product of types adds
        grades, which is what makes truncation by grade consistent.
        """
        return self.edge_count() - 1

    def dense(self, length: int) -> tuple[int, ...]:
        """Counts for gonality indices ``1..length`` as a dense tuple."""
        return tuple(self.count(i) for i in range(1, length + 1))

    def sort_key(self) -> tuple:
        """Graded key: edge grade first, then lexicographic with larger
        low-gonality exponents first (the order layer listings print in)."""
        grade = self.edge_grade()
        return (grade, tuple(-c for c in self.dense(grade)))

    def literal(self) -> str:
        """Canonical text form ``m1;m2,m3,...`` with no trailing zeros."""
        if self._rest.is_empty():
            return f"{self._m1};"
        top = self._rest.support[-1]
        dense = ",".join(str(self._rest.count(i)) for i in range(2, top + 1))
        return f"{self._m1};{dense}"

    def monomial(self, var: str = "u") -> str:
        """Render as a monomial, e.g. ``u1^3 u2``; the null type is ``1``."""
        factors = []
        if self._m1:
            factors.append((1, self._m1))
        factors.extend(self._rest.entries)
        if not factors:
            return "1"
        return " ".join(
            f"{var}{i}" if c == 1 else f"{var}{i}^{c}" for i, c in factors
        )

    def __add__(self, other: "TubType") -> "TubType":
        if not isinstance(other, TubType):
            return NotImplemented
        return TubType(self._m1 + other._m1, self._rest + other._rest)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TubType):
            return NotImplemented
        return self._m1 == other._m1 and self._rest == other._rest

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return self.literal()

    def __repr__(self) -> str:
        return f"TubType({self._m1}, {self._rest!r})"


NULL_TYPE = TubType()


def parse_type(text: str) -> TubType:
    """Parse a type literal into a :class:`TubType`.

    Grammar: ``<m1> ';' <m2> (',' <mi>)*`` with non-negative decimal
    integers; the ``m1;`` prefix may be omitted (meaning no 2-gons), and
    the list after the semicolon may be empty.  Trailing zeros are
    accepted and canonicalized away, so ``parse_type("0;2,1,0")`` equals
    ``parse_type("2,1")``.
    """
    text = text.strip()
    if ";" in text:
        head, _, tail = text.partition(";")
        if ";" in tail:
            raise ValueError(f"type literal {text!r} has more than one semicolon")
        m1 = _parse_count(head, text)
    else:
        m1, tail = 0, text
    tail = tail.strip()
    counts = [_parse_count(tok, text) for tok in tail.split(",")] if tail else []
    return TubType(m1, TypeVector(counts))


def _parse_count(token: str, literal: str) -> int:
    token = token.strip()
    if not token.isdigit():
        raise ValueError(f"bad count {token!r} in type literal {literal!r}")
    return int(token)


def type_vectors_of_grade(grade: int, max_gonality: int) -> Iterator[TypeVector]:
    """Yield every :class:`TypeVector` with edge grade exactly ``grade``.

    The grade of a pure subdigon type is ``sum i*m_i``, so these are the
    partitions of ``grade`` into parts between 2 and ``max_gonality``,
    read as face-gonality multiplicities.  Yielded in canonical order
    (larger triangle counts first, see :meth:`TubType.sort_key`).
    """
    if grade < 0:
        return
    for entries in _graded_entries(grade, 2, max_gonality):
        yield TypeVector(dict(entries))


def _graded_entries(remaining: int, part: int, max_part: int):
    # Descending multiplicity of the smallest part first: canonical order.
    if remaining == 0:
        yield ()
        return
    if part > remaining or part > max_part:
        return
    for k in range(remaining // part, -1, -1):
        head = ((part, k),) if k else ()
        for tail in _graded_entries(remaining - k * part, part + 1, max_part):
            yield head + tail

"""Exact closed-form counting: binomials, hyper-Catalan and tubdigon
numbers, integer partitions, and both sides of Fine's identity.

Everything here is arbitrary-precision integer arithmetic; no floating
point enters at any stage.  The factorial-quotient formulas always divide
exactly for valid inputs, which the implementations assert.
"""

from __future__ import annotations

import math
from typing import Iterator, Sequence

from .errors import BoundExceededError
from .typevectors import TubType, TypeVector, _graded_entries

__all__ = [
    "binomial",
    "multinomial",
    "hyper_catalan",
    "tubdigon_count",
    "tubdigon_count_factorial",
    "Partition",
    "partitions_of",
    "partitions_into",
    "fine_lhs",
    "fine_rhs",
    "fine_row_sum",
]

DEFAULT_PARTITION_BOUND = 200


def binomial(n: int, k: int) -> int:
    """Binomial coefficient ``C(n, k)``; zero outside ``0 <= k <= n``."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def multinomial(n: int, parts: Sequence[int]) -> int:
    """Multinomial coefficient ``n! / (parts[0]! * parts[1]! * ...)``.

    ``parts`` must sum to ``n`` exactly; passing ``n`` explicitly catches
    bookkeeping slips at the call site instead of silently normalizing.
    """
    if n < 0:
        raise ValueError(f"multinomial needs n >= 0, got {n}")
    if any(p < 0 for p in parts):
        raise ValueError(f"negative part in {list(parts)}")
    if sum(parts) != n:
        raise ValueError(f"parts {list(parts)} sum to {sum(parts)}, expected {n}")
    result = math.factorial(n)
    for p in parts:
        result //= math.factorial(p)
    return result


def hyper_catalan(m: TypeVector) -> int:
    """Number of subdigons of type ``m``.

    Closed form ``(E - 1)! / ((V - 1)! * m2! * m3! * ...)`` where ``V``
    and ``E`` are the vertex and edge counts determined by the type.
    ``hyper_catalan(TypeVector([n]))`` is the ordinary Catalan number,
    counting the triangulations of a roofed (n + 2)-gon.
    """
    numerator = math.factorial(m.edge_count() - 1)
    denominator = math.factorial(m.vertex_count() - 1)
    for _, count in m.entries:
        denominator *= math.factorial(count)
    quotient, remainder = divmod(numerator, denominator)
    assert remainder == 0, f"hyper-Catalan quotient not integral for {m!r}"
    return quotient


def tubdigon_count(t: TubType) -> int:
    """Number of tubdigons of type ``t = [m1; m]``.

    Counted as stars-and-bars placement of the ``m1`` doubling edges onto
    the ``E_m`` edges of each underlying subdigon:
    ``C(m1 + E_m - 1, m1) * hyper_catalan(m)``.  Agrees with the direct
    factorial form (checked here whenever asserts are enabled).
    """
    edges = t.rest.edge_count()
    result = binomial(t.m1 + edges - 1, t.m1) * hyper_catalan(t.rest)
    assert result == tubdigon_count_factorial(t), f"count forms disagree for {t}"
    return result


def tubdigon_count_factorial(t: TubType) -> int:
    """Tubdigon count as a single factorial quotient.

    ``(E - 1)! / ((V - 1)! * m1! * m2! * ...)`` using the tubdigon vertex
    and edge counts; an independent route to :func:`tubdigon_count`.
    """
    numerator = math.factorial(t.edge_count() - 1)
    denominator = math.factorial(t.vertex_count() - 1) * math.factorial(t.m1)
    for _, count in t.rest.entries:
        denominator *= math.factorial(count)
    quotient, remainder = divmod(numerator, denominator)
    assert remainder == 0, f"tubdigon quotient not integral for {t}"
    return quotient


class Partition:
    """Integer partition stored by part multiplicities.

    ``multiplicities`` is a sorted tuple of ``(part_size, multiplicity)``
    pairs with positive multiplicities.  ``n`` is the partitioned number,
    ``r`` the number of parts::

        Partition.from_parts([1, 3]).multiplicities == ((1, 1), (3, 1))
    """

    __slots__ = ("_mult", "_hash")

    def __init__(self, multiplicities=()):
        out = {}
        for part, mult in (
            multiplicities.items() if hasattr(multiplicities, "items") else multiplicities
        ):
            if part < 1 or mult < 0:
                raise ValueError(f"bad partition entry ({part}, {mult})")
            if mult:
                out[part] = out.get(part, 0) + mult
        self._mult = tuple(sorted(out.items()))
        self._hash = hash(self._mult)

    @classmethod
    def from_parts(cls, parts) -> "Partition":
        mult: dict[int, int] = {}
        for p in parts:
            mult[p] = mult.get(p, 0) + 1
        return cls(mult)

    @property
    def multiplicities(self) -> tuple[tuple[int, int], ...]:
        return self._mult

    @property
    def n(self) -> int:
        return sum(part * mult for part, mult in self._mult)

    @property
    def r(self) -> int:
        return sum(mult for _, mult in self._mult)

    def multiplicity(self, part: int) -> int:
        for p, m in self._mult:
            if p == part:
                return m
        return 0

    def parts(self) -> tuple[int, ...]:
        return tuple(p for p, m in self._mult for _ in range(m))

    def as_tub_type(self) -> TubType:
        """Read the partition as a tubdigon type: part size i with
        multiplicity k becomes k faces of gonality index i."""
        return TubType.from_arity_counts(dict(self._mult))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self._mult == other._mult

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Partition.from_parts({list(self.parts())!r})"


def partitions_of(n: int, *, bound: int = DEFAULT_PARTITION_BOUND) -> Iterator[Partition]:
    """Yield every partition of ``n`` exactly once, deterministically.

    Order is graded-lexicographic on dense multiplicity vectors, largest
    count of 1-parts first: for ``n = 4`` that is ``1+1+1+1``, ``1+1+2``,
    ``1+3``, ``2+2``, ``4``.  The count of partitions yielded is ``p(n)``.
    """
    if n < 0:
        raise ValueError(f"cannot partition negative {n}")
    if n > bound:
        raise BoundExceededError(f"partitions of {n} exceed bound {bound}")
    for entries in _graded_entries(n, 1, n if n else 1):
        yield Partition(dict(entries))


def partitions_into(n: int, r: int, *, bound: int = DEFAULT_PARTITION_BOUND) -> Iterator[Partition]:
    """Yield the partitions of ``n`` with exactly ``r`` parts.

    Infeasible combinations (``r > n``, ``r < 0``, or ``r = 0`` with
    ``n > 0``) yield nothing rather than raising.
    """
    if n < 0:
        raise ValueError(f"cannot partition negative {n}")
    if r < 0 or r > n or (r == 0 and n > 0):
        return
    for p in partitions_of(n, bound=bound):
        if p.r == r:
            yield p


def fine_lhs(n: int, r: int) -> int:
    """Left side of Fine's identity: the sum of multinomial coefficients
    ``C(r; k1, k2, ...)`` over all partitions of ``n`` into ``r`` parts,
    where ``k_i`` is the multiplicity of part size ``i``.

    Computed by direct partition enumeration, never via the identity
    itself, so comparing against :func:`fine_rhs` is a real check.
    """
    _require_fine_range(n, r)
    return sum(
        multinomial(r, [mult for _, mult in p.multiplicities])
        for p in partitions_into(n, r)
    )


def fine_rhs(n: int, r: int) -> int:
    """Right side of Fine's identity: ``C(n - 1, r - 1)``."""
    _require_fine_range(n, r)
    return binomial(n - 1, r - 1)


def fine_row_sum(n: int) -> int:
    """Sum of :func:`fine_lhs` over all part counts ``r = 1..n``.

    Summing the identity over a row of Pascal's triangle, this equals
    ``2**(n-1)``; computing it from the left side keeps the check honest.
    """
    if n < 1:
        raise ValueError(f"row sum needs n >= 1, got {n}")
    return sum(fine_lhs(n, r) for r in range(1, n + 1))


def _require_fine_range(n: int, r: int) -> None:
    if n < 1 or r < 1 or r > n:
        raise ValueError(f"need 1 <= r <= n, got n={n} r={r}")

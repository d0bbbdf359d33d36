"""Graded sparse multivariate series over exact rationals, and the
generating-series computations built on them.

Monomials are :class:`~hypercatalan.typevectors.TubType` exponent vectors
in the variables ``t1, t2, t3, ...`` (``t_k`` marks a ``(k+1)``-gon face).
Series are truncated by *edge grade*, ``edge_count - 1``: the grade of a
monomial product is the sum of the grades, and ``t_k`` itself has grade
``k``, so the subdivision fixed-point maps strictly raise grade and a
truncated iteration provably stabilizes.  Coefficients are
``fractions.Fraction`` throughout; floats are rejected.

The module provides two independent constructions of the tubdigon series
(a fixed-point iteration and a geometric-series/multinomial expansion),
the product and partition-sum sides of Fine's lemma, the bivariate
exponential identity behind it, and the edge-layer listing whose layer
sizes are the partition numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

from .counting import (
    DEFAULT_PARTITION_BOUND,
    binomial,
    hyper_catalan,
    multinomial,
    partitions_of,
)
from .typevectors import NULL_TYPE, TubType, type_vectors_of_grade

__all__ = [
    "GradedSeries",
    "BiSeries",
    "FineExpReport",
    "solve_subdigon_series",
    "solve_tubdigon_series",
    "tubdigon_series_via_geometric",
    "fine_lemma_product",
    "fine_lemma_partition_sum",
    "fine_exp_identity_check",
    "edge_layers",
    "serialize_series",
]


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"exact coefficient required, got {type(value).__name__}")


class GradedSeries:
    """Formal series truncated at a fixed edge grade.

    ``order`` is the truncation grade ``N``: coefficients of monomials
    with grade ``<= N`` are exact, anything beyond is unknown and never
    stored.  Instances are immutable; arithmetic returns new series and
    carries ``order = min`` of the operands.  Integers and ``Fraction``
    values mix in as constants (``1 + series``, ``Fraction(1, 2) * series``).
    """

    __slots__ = ("_order", "_terms")

    def __init__(self, order: int, terms: Mapping[TubType, Fraction] = ()):
        if order < 0:
            raise ValueError(f"truncation order must be >= 0, got {order}")
        stored: dict[TubType, Fraction] = {}
        for key, value in terms.items() if hasattr(terms, "items") else terms:
            if not isinstance(key, TubType):
                raise TypeError("series keys must be TubType monomials")
            if key.edge_grade() > order:
                raise ValueError(
                    f"term {key} has grade {key.edge_grade()} beyond order {order}"
                )
            value = _as_fraction(value)
            if value:
                stored[key] = value
        self._order = order
        self._terms = stored

    @classmethod
    def zero(cls, order: int) -> "GradedSeries":
        return cls(order)

    @classmethod
    def one(cls, order: int) -> "GradedSeries":
        return cls(order, {NULL_TYPE: Fraction(1)})

    @classmethod
    def variable(cls, k: int, order: int) -> "GradedSeries":
        """The single monomial ``t_k``; the zero series if its grade ``k``
        already exceeds ``order``."""
        if k < 1:
            raise ValueError(f"variable index must be >= 1, got {k}")
        key = TubType(1) if k == 1 else TubType(0, {k: 1})
        if key.edge_grade() > order:
            return cls(order)
        return cls(order, {key: Fraction(1)})

    @property
    def order(self) -> int:
        return self._order

    def coefficient(self, t: TubType) -> Fraction:
        """Exact coefficient of the monomial ``t``.

        Raises ``ValueError`` when the grade of ``t`` exceeds the
        truncation order: that coefficient is unknown, not zero.
        """
        if t.edge_grade() > self._order:
            raise ValueError(
                f"grade {t.edge_grade()} of {t} exceeds truncation order {self._order}"
            )
        return self._terms.get(t, Fraction(0))

    def sorted_terms(self) -> list[tuple[TubType, Fraction]]:
        """Terms in canonical graded order (see ``TubType.sort_key``)."""
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def truncate(self, order: int) -> "GradedSeries":
        if order >= self._order:
            return self
        return GradedSeries(
            order, {k: v for k, v in self._terms.items() if k.edge_grade() <= order}
        )

    def substitute(self, values: Mapping[int, Fraction]) -> Fraction:
        """Evaluate by assigning a rational to each variable index.

        Indices missing from ``values`` are set to zero, matching the
        formal-series convention of finitely many active variables.
        """
        total = Fraction(0)
        for key, coeff in self._terms.items():
            term = coeff
            for index in key.support:
                exponent = key.count(index)
                value = values.get(index)
                if value is None or value == 0:
                    term = Fraction(0)
                    break
                term *= _as_fraction(value) ** exponent
            total += term
        return total

    def _coerced(self, other) -> "GradedSeries | None":
        if isinstance(other, GradedSeries):
            return other
        if isinstance(other, (int, Fraction)):
            value = _as_fraction(other)
            terms = {NULL_TYPE: value} if value else {}
            return GradedSeries(self._order, terms)
        return None

    def __add__(self, other) -> "GradedSeries":
        rhs = self._coerced(other)
        if rhs is None:
            return NotImplemented
        order = min(self._order, rhs._order)
        merged: dict[TubType, Fraction] = {}
        for source in (self._terms, rhs._terms):
            for key, value in source.items():
                if key.edge_grade() <= order:
                    merged[key] = merged.get(key, Fraction(0)) + value
        return GradedSeries(order, merged)

    __radd__ = __add__

    def __neg__(self) -> "GradedSeries":
        return GradedSeries(self._order, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other) -> "GradedSeries":
        rhs = self._coerced(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other) -> "GradedSeries":
        rhs = self._coerced(other)
        if rhs is None:
            return NotImplemented
        return rhs + (-self)

    def __mul__(self, other) -> "GradedSeries":
        rhs = self._coerced(other)
        if rhs is None:
            return NotImplemented
        order = min(self._order, rhs._order)
        product: dict[TubType, Fraction] = {}
        for ka, va in self._terms.items():
            grade_a = ka.edge_grade()
            if grade_a > order:
                continue
            for kb, vb in rhs._terms.items():
                if grade_a + kb.edge_grade() > order:
                    continue
                key = ka + kb
                product[key] = product.get(key, Fraction(0)) + va * vb
        return GradedSeries(order, product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "GradedSeries":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("series powers need a non-negative integer exponent")
        result = GradedSeries.one(self._order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return self._order == other._order and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._order, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"<GradedSeries order={self._order} with {len(self._terms)} terms>"


def serialize_series(series: GradedSeries) -> str:
    """Bit-exact text form: one ``<type literal> TAB <num>/<den>`` line per
    term, in canonical graded order.  Integer coefficients keep ``/1``."""
    return "\n".join(
        f"{key.literal()}\t{value.numerator}/{value.denominator}"
        for key, value in series.sorted_terms()
    )


def _clamped_gonality(order: int, max_gonality: int | None) -> int:
    # t_k has grade k, so gonalities above order + 1 cannot contribute.
    if max_gonality is None:
        return order + 1
    if max_gonality < 1:
        raise ValueError(f"max gonality must be >= 1, got {max_gonality}")
    return min(max_gonality, order + 1)


def _solve_fixed_point(order: int, min_arity: int, max_gonality: int | None) -> GradedSeries:
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    g = _clamped_gonality(order, max_gonality)
    variables = {k: GradedSeries.variable(k, order) for k in range(min_arity, g + 1)}
    series = GradedSeries.one(order)
    # Each pass fixes one more grade, so `order` passes are always enough.
    for _ in range(order):
        acc = GradedSeries.one(order)
        power = series
        for k in range(min_arity, g + 1):
            if k > min_arity:
                power = power * series
            acc = acc + variables[k] * power
        series = acc
    return series


def solve_subdigon_series(order: int, max_gonality: int | None = None) -> GradedSeries:
    """The subdigon series ``S``: unique fixed point of
    ``S = 1 + t2*S^2 + t3*S^3 + ...`` through the given grade.

    The coefficient of each type monomial is its hyper-Catalan number.
    """
    return _solve_fixed_point(order, 2, max_gonality)


def solve_tubdigon_series(order: int, max_gonality: int | None = None) -> GradedSeries:
    """The tubdigon series ``T``: fixed point of
    ``T = 1 + t1*T + t2*T^2 + ...`` through the given grade.

    The coefficient of ``t1^m1 * t^m`` is the tubdigon count of
    ``[m1; m]``.
    """
    return _solve_fixed_point(order, 1, max_gonality)


def tubdigon_series_via_geometric(order: int, max_gonality: int | None = None) -> GradedSeries:
    """The tubdigon series computed without its fixed-point equation.

    Treats the 2-gon variable as a polynomial shift: solving the
    subdivision equation with ``1 - t1`` in the linear slot gives
    ``T = sum_m C_m * (1 + t1 + t1^2 + ...)^{E_m} * t^m``, and each
    geometric-series power is expanded by the multinomial theorem.
    Must agree with :func:`solve_tubdigon_series` term for term; the two
    routes share no code beyond basic counting.
    """
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    g = _clamped_gonality(order, max_gonality)
    terms: dict[TubType, Fraction] = {}
    for sub_grade in range(order + 1):
        for m in type_vectors_of_grade(sub_grade, g):
            c_m = hyper_catalan(m)
            edges = m.edge_count()
            for m1 in range(order - sub_grade + 1):
                weight = _geometric_power_coefficient(edges, m1)
                terms[TubType(m1, m)] = Fraction(c_m * weight)
    return GradedSeries(order, terms)


def _geometric_power_coefficient(edges: int, m1: int) -> int:
    """Coefficient of ``t1^m1`` in ``(1 + t1 + t1^2 + ...)^edges`` via the
    multinomial theorem: a sum over partitions of ``m1`` into at most
    ``edges`` parts, the unused slots absorbing the constant terms."""
    total = 0
    for p in partitions_of(m1):
        if p.r <= edges:
            counts = [edges - p.r] + [mult for _, mult in p.multiplicities]
            total += multinomial(edges, counts)
    return total


def _validated_tables(
    tables: Mapping[int, Sequence[Fraction]], order: int
) -> dict[int, list[Fraction]]:
    clean: dict[int, list[Fraction]] = {}
    for j in range(1, order + 1):
        if j not in tables:
            raise ValueError(f"missing coefficient table for series index {j}")
        needed = order // j + 1
        table = list(tables[j])
        if len(table) < needed:
            raise ValueError(
                f"table {j} has {len(table)} entries, needs {needed} for order {order}"
            )
        clean[j] = [_as_fraction(v) for v in table[:needed]]
    return clean


def fine_lemma_product(
    tables: Mapping[int, Sequence[Fraction]], order: int
) -> list[Fraction]:
    """Left side of Fine's lemma for a finite family of series.

    Table ``j`` holds the coefficients of a series ``S_j``; the result is
    the coefficient list of ``prod_j S_j(q^j)`` through ``q^order``,
    computed by straight truncated multiplication.
    """
    tables = _validated_tables(tables, order)
    acc = [Fraction(0)] * (order + 1)
    acc[0] = Fraction(1)
    for j in range(1, order + 1):
        table = tables[j]
        out = [Fraction(0)] * (order + 1)
        for power in range(order + 1):
            if acc[power]:
                for k in range(0, (order - power) // j + 1):
                    if table[k]:
                        out[power + j * k] += acc[power] * table[k]
        acc = out
    return acc


def fine_lemma_partition_sum(
    tables: Mapping[int, Sequence[Fraction]], order: int
) -> list[Fraction]:
    """Right side of Fine's lemma: coefficient ``n`` sums, over the
    partitions of ``n``, the product of each table's entry at its part's
    multiplicity (entry 0 for part sizes the partition does not use)."""
    tables = _validated_tables(tables, order)
    out = []
    for n in range(order + 1):
        total = Fraction(0)
        for p in partitions_of(n):
            product = Fraction(1)
            for j in range(1, order + 1):
                product *= tables[j][p.multiplicity(j)]
                if not product:
                    break
            total += product
        out.append(total)
    return out


class BiSeries:
    """Bivariate truncated series in ``t`` and ``q`` with exact rational
    coefficients; terms live in the box ``t^(<=t_order) q^(<=q_order)``."""

    __slots__ = ("_t_order", "_q_order", "_terms")

    def __init__(
        self,
        t_order: int,
        q_order: int,
        terms: Mapping[tuple[int, int], Fraction] = (),
    ):
        if t_order < 0 or q_order < 0:
            raise ValueError("truncation orders must be >= 0")
        stored: dict[tuple[int, int], Fraction] = {}
        for (i, j), value in terms.items() if hasattr(terms, "items") else terms:
            if i < 0 or j < 0 or i > t_order or j > q_order:
                raise ValueError(f"exponent pair ({i}, {j}) outside truncation box")
            value = _as_fraction(value)
            if value:
                stored[(i, j)] = value
        self._t_order = t_order
        self._q_order = q_order
        self._terms = stored

    @classmethod
    def one(cls, t_order: int, q_order: int) -> "BiSeries":
        return cls(t_order, q_order, {(0, 0): Fraction(1)})

    @property
    def orders(self) -> tuple[int, int]:
        return self._t_order, self._q_order

    def coefficient(self, t_power: int, q_power: int) -> Fraction:
        if t_power > self._t_order or q_power > self._q_order:
            raise ValueError("exponent outside truncation box")
        return self._terms.get((t_power, q_power), Fraction(0))

    def sorted_terms(self) -> list[tuple[tuple[int, int], Fraction]]:
        return sorted(self._terms.items())

    def __mul__(self, other: "BiSeries") -> "BiSeries":
        if not isinstance(other, BiSeries):
            return NotImplemented
        t_order = min(self._t_order, other._t_order)
        q_order = min(self._q_order, other._q_order)
        product: dict[tuple[int, int], Fraction] = {}
        for (ia, ja), va in self._terms.items():
            for (ib, jb), vb in other._terms.items():
                i, j = ia + ib, ja + jb
                if i <= t_order and j <= q_order:
                    product[(i, j)] = product.get((i, j), Fraction(0)) + va * vb
        return BiSeries(t_order, q_order, product)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiSeries):
            return NotImplemented
        return (
            self._t_order == other._t_order
            and self._q_order == other._q_order
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self._t_order, self._q_order, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return (
            f"<BiSeries box=({self._t_order}, {self._q_order}) "
            f"with {len(self._terms)} terms>"
        )


@dataclass(frozen=True)
class FineExpReport:
    """Outcome of the exponential-route identity check."""

    lhs: BiSeries
    rhs: BiSeries
    mismatches: tuple[tuple[int, int], ...]

    @property
    def equal(self) -> bool:
        return not self.mismatches


def fine_exp_identity_check(t_order: int, q_order: int) -> FineExpReport:
    """Verify the exponential form of Fine's identity in a truncation box.

    Builds ``prod_j exp(t q^j)`` by term-by-term multiplication and,
    independently, ``1 + sum_r (t^r / r!) sum_n C(n-1, r-1) q^n``; reports
    exact per-coefficient equality for all ``t^(<=t_order) q^(<=q_order)``.
    """
    lhs = BiSeries.one(t_order, q_order)
    for j in range(1, q_order + 1):
        factor = BiSeries(
            t_order,
            q_order,
            {
                (k, j * k): Fraction(1, factorial(k))
                for k in range(0, min(t_order, q_order // j) + 1)
            },
        )
        lhs = lhs * factor

    rhs_terms: dict[tuple[int, int], Fraction] = {(0, 0): Fraction(1)}
    for r in range(1, t_order + 1):
        for n in range(1, q_order + 1):
            c = binomial(n - 1, r - 1)
            if c:
                rhs_terms[(r, n)] = Fraction(c, factorial(r))
    rhs = BiSeries(t_order, q_order, rhs_terms)

    keys = set()
    for side in (lhs, rhs):
        keys.update(key for key, _ in side.sorted_terms())
    mismatches = tuple(
        sorted(k for k in keys if lhs.coefficient(*k) != rhs.coefficient(*k))
    )
    return FineExpReport(lhs=lhs, rhs=rhs, mismatches=mismatches)


def edge_layers(
    max_grade: int, *, bound: int = DEFAULT_PARTITION_BOUND
) -> dict[int, list[TubType]]:
    """Monomials of the all-types series grouped by edge grade.

    Layer ``n`` lists, in canonical order, every type whose shapes have
    ``n + 1`` edges; these correspond exactly to the partitions of ``n``
    (part size = gonality index), so layer sizes run through the
    partition numbers 1, 1, 2, 3, 5, 7, ...
    """
    if max_grade < 0:
        raise ValueError(f"max grade must be >= 0, got {max_grade}")
    return {
        n: [p.as_tub_type() for p in partitions_of(n, bound=bound)]
        for n in range(max_grade + 1)
    }

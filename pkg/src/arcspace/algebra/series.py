"""Power series in ``t`` truncated at an explicit precision.

A :class:`TruncSeries` of precision ``N`` stands for a class in
``k[[t]] / (t^N)``. Nothing below ``t^N`` is ever rounded; everything at or
above it is unknown. Valuations are therefore reported as a
:class:`Finite` value or an :class:`AtLeast` lower bound.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from ..errors import FieldMismatch, NonUnit
from .fields import Field
from .poly import MultiPoly

DEFAULT_PRECISION = 24


@dataclass(frozen=True, order=True)
class Finite:
    value: int

    def __str__(self):
        return f"Finite({self.value})"


@dataclass(frozen=True, order=True)
class AtLeast:
    bound: int

    def __str__(self):
        return f"AtLeast({self.bound})"


ValOrBound = Union[Finite, AtLeast]


def min_valuation(vals: Iterable[ValOrBound]) -> ValOrBound:
    """Minimum in which any Finite value beats every AtLeast bound.

    A Finite value is always below the precision that produced it, so it is
    the true minimum even when some other term is only bounded.
    """
    vals = list(vals)
    finite = [v.value for v in vals if isinstance(v, Finite)]
    if finite:
        return Finite(min(finite))
    bounds = [v.bound for v in vals if isinstance(v, AtLeast)]
    return AtLeast(min(bounds))


class TruncSeries:
    __slots__ = ("field", "coeffs", "precision")

    def __init__(self, field: Field, coeffs: Iterable, precision: int):
        if precision < 1:
            raise ValueError(f"precision must be positive, got {precision}")
        cs = [field(c) for c in coeffs][:precision]
        cs.extend(field.zero for _ in range(precision - len(cs)))
        self.field = field
        self.coeffs = tuple(cs)
        self.precision = precision

    @classmethod
    def _make(cls, field, coeffs, precision):
        # coefficients already reduced field elements of the right length
        obj = object.__new__(cls)
        obj.field = field
        obj.coeffs = tuple(coeffs)
        obj.precision = precision
        return obj

    @classmethod
    def zero(cls, field, precision):
        return cls(field, (), precision)

    @classmethod
    def one(cls, field, precision):
        return cls(field, (1,), precision)

    @classmethod
    def monomial(cls, field, degree, precision, coeff=1):
        return cls(field, [0] * degree + [coeff], precision)

    def _check(self, other: TruncSeries):
        if self.field != other.field:
            raise FieldMismatch(f"series over {self.field} and {other.field}")

    def _coerce(self, other):
        if isinstance(other, TruncSeries):
            self._check(other)
            return other
        return TruncSeries(self.field, (other,), self.precision)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.precision, other.precision)
        return TruncSeries._make(self.field,
                                 [a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])], n)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries._make(self.field, [-c for c in self.coeffs], self.precision)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            c = self.field(other)
            return TruncSeries._make(self.field, [a * c for a in self.coeffs], self.precision)
        self._check(other)
        n = min(self.precision, other.precision)
        a, b = self.coeffs, other.coeffs
        zero = self.field.zero
        lo_a = next((i for i in range(n) if a[i]), n)
        lo_b = next((i for i in range(n) if b[i]), n)
        out = [zero] * n
        for i in range(lo_a, n):
            ai = a[i]
            if not ai:
                continue
            for j in range(lo_b, n - i):
                bj = b[j]
                if bj:
                    out[i + j] = out[i + j] + ai * bj
        return TruncSeries._make(self.field, out, n)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = TruncSeries.one(self.field, self.precision)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.field == other.field and self.precision == other.precision
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.coeffs, self.precision))

    def val(self) -> ValOrBound:
        for i, c in enumerate(self.coeffs):
            if c:
                return Finite(i)
        return AtLeast(self.precision)

    def is_indistinguishable_from_zero(self) -> bool:
        return not any(self.coeffs)

    def constant_term(self):
        return self.coeffs[0]

    def inverse(self) -> TruncSeries:
        a0 = self.coeffs[0]
        if not a0:
            raise NonUnit("series with zero constant term is not a unit")
        inv0 = self.field.one / a0
        n = self.precision
        out = [inv0]
        for k in range(1, n):
            s = self.field.zero
            for j in range(1, k + 1):
                if self.coeffs[j]:
                    s = s + self.coeffs[j] * out[k - j]
            out.append(-s * inv0)
        return TruncSeries(self.field, out, n)

    def div_t_power(self, k: int) -> TruncSeries:
        """Quotient by ``t^k`` as an element of ``k[t]/(t^N)``.

        The low ``k`` coefficients must vanish. The result keeps precision
        ``N`` by taking the polynomial representative (top ``k`` coefficients
        zero); any representative works because the quotient is only ever
        multiplied back by ``t^k``.
        """
        if any(self.coeffs[:k]):
            raise ValueError(f"series is not divisible by t^{k}")
        return TruncSeries(self.field, self.coeffs[k:], self.precision)

    def shift_up(self, k: int) -> TruncSeries:
        return TruncSeries(self.field, [0] * k + list(self.coeffs), self.precision)

    def with_precision(self, n: int) -> TruncSeries:
        """Truncate, or pad with zeros (choosing the polynomial representative)."""
        return TruncSeries(self.field, self.coeffs, n)

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            cs = str(c)
            if mono and cs == "1":
                terms.append(mono)
            elif mono and cs == "-1":
                terms.append(f"-{mono}")
            elif mono:
                terms.append(f"{cs}*{mono}")
            else:
                terms.append(cs)
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"{body} + O(t^{self.precision})"

    def __repr__(self):
        return f"TruncSeries({self})"


def poly_eval_series(p: MultiPoly, args: Sequence[TruncSeries]) -> TruncSeries:
    """Evaluate ``p`` along the series ``args`` with all arithmetic truncated."""
    if len(args) != p.nvars:
        raise ValueError(f"polynomial in {p.nvars} variables given {len(args)} series")
    if not args:
        raise ValueError("cannot infer precision for a polynomial in no variables")
    n = min(a.precision for a in args)
    for a in args:
        if a.field != p.field:
            raise FieldMismatch(f"series over {a.field}, polynomial over {p.field}")
    args = [a.with_precision(n) if a.precision != n else a for a in args]
    return p.evaluate(args, TruncSeries.one(p.field, n), TruncSeries.zero(p.field, n))


def series_val(s: TruncSeries) -> ValOrBound:
    return s.val()


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a * b


def series_invert(a: TruncSeries) -> TruncSeries:
    return a.inverse()


def poly_partial(p: MultiPoly, var_index: int) -> MultiPoly:
    return p.partial(var_index)

"""Truncated formal power series over Q or an imaginary quadratic field."""

from __future__ import annotations

from fractions import Fraction
from itertools import islice
from typing import Iterable, NamedTuple, Sequence

from .arith import AlgNum, FieldMismatchError, Field, WeilNum, algnum_to_json, algnum_from_json, common_field, to_rat

DEFAULT_ORDER = 16
DEFAULT_DEPTH = 64


def join_fields(f: Field, g: Field) -> Field:
    if f is None or f == g:
        return g
    if g is None:
        return f
    raise FieldMismatchError(f"{f.label()} vs {g.label()}")


def _coerce(x, field: Field):
    if field is None:
        return to_rat(x)
    return AlgNum.coerce(x, field)


def _zero(field: Field):
    return Fraction(0) if field is None else AlgNum(field, 0)


class PowerSeries:
    """Coefficients of t^0 .. t^order.

    Binary operations between two series truncate at the smaller order.
    Coefficients are Fractions over Q and :class:`AlgNum` otherwise.
    """

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Sequence, field: Field = None):
        if not coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        if field is None:
            field = common_field(*coeffs)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(_coerce(c, field) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("PowerSeries is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, c, order: int, field: Field = None) -> "PowerSeries":
        field = field if field is not None else common_field(c)
        return cls([c] + [_zero(field)] * order, field)

    @classmethod
    def one(cls, order: int, field: Field = None) -> "PowerSeries":
        return cls.constant(1, order, field)

    @classmethod
    def from_poly(cls, coeffs: Sequence, order: int, field: Field = None) -> "PowerSeries":
        coeffs = list(coeffs)[: order + 1]
        field = field if field is not None else common_field(*coeffs)
        coeffs += [_zero(field)] * (order + 1 - len(coeffs))
        return cls(coeffs, field)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        terms = ", ".join(str(c) for c in self.coeffs)
        return f"PowerSeries([{terms}])"

    def __eq__(self, other):
        if isinstance(other, PowerSeries):
            n = min(self.order, other.order)
            return all(a == b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1]))
        return NotImplemented

    __hash__ = None

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return PowerSeries(self.coeffs[: order + 1], self.field)

    def promote(self, field: Field) -> "PowerSeries":
        if field == self.field:
            return self
        return PowerSeries(self.coeffs, field)

    def _align(self, other: "PowerSeries"):
        field = join_fields(self.field, other.field)
        n = min(self.order, other.order)
        return self.promote(field).coeffs[: n + 1], other.promote(field).coeffs[: n + 1], field

    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            return self + PowerSeries.constant(other, self.order, self.field)
        a, b, field = self._align(other)
        return PowerSeries([x + y for x, y in zip(a, b)], field)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs], self.field)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return ps_mul(self, other)
        return PowerSeries([c * other for c in self.coeffs], join_fields(self.field, common_field(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            return ps_mul(self, ps_inv(other))
        return self * (1 / other)

    def scale(self, c) -> "PowerSeries":
        """The series f(c*t)."""
        out, p = [], 1
        for x in self.coeffs:
            out.append(x * p)
            p = p * c
        return PowerSeries(out)

    def inv(self) -> "PowerSeries":
        return ps_inv(self)

    def log(self) -> "PowerSeries":
        return ps_log(self)

    def exp(self) -> "PowerSeries":
        return ps_exp(self)

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [algnum_to_json(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, d: dict) -> "PowerSeries":
        coeffs = [algnum_from_json(c) for c in d["coeffs"]]
        if len(coeffs) != d["order"] + 1:
            raise ValueError("order does not match coefficient count")
        return cls(coeffs)


def ps_mul(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    a, b, field = f._align(g)
    n = len(a)
    out = []
    for k in range(n):
        s = _zero(field)
        for i in range(k + 1):
            s = s + a[i] * b[k - i]
        out.append(s)
    return PowerSeries(out, field)


def ps_inv(f: PowerSeries) -> PowerSeries:
    a = f.coeffs
    if not a[0]:
        raise ZeroDivisionError("series with zero constant term has no inverse")
    c = 1 / a[0]
    out = [c]
    for k in range(1, len(a)):
        s = _zero(f.field)
        for i in range(1, k + 1):
            s = s + a[i] * out[k - i]
        out.append(-s * c)
    return PowerSeries(out, f.field)


def ps_log(f: PowerSeries) -> PowerSeries:
    """log f for constant term 1, through log f = integral of f'/f."""
    a = f.coeffs
    if a[0] != 1:
        raise ValueError("log needs constant term 1")
    n = len(a)
    # k*L_k = k*a_k - sum_{j=1}^{k-1} j*L_j*a_{k-j}
    out = [_zero(f.field)]
    for k in range(1, n):
        s = k * a[k]
        for j in range(1, k):
            s = s - j * out[j] * a[k - j]
        out.append(s / k)
    return PowerSeries(out, f.field)


def ps_exp(g: PowerSeries) -> PowerSeries:
    b = g.coeffs
    if b[0]:
        raise ValueError("exp needs constant term 0")
    n = len(b)
    out = [_coerce(1, g.field)]
    for k in range(1, n):
        s = _zero(g.field)
        for j in range(1, k + 1):
            s = s + j * b[j] * out[k - j]
        out.append(s / k)
    return PowerSeries(out, g.field)


class Factor(NamedTuple):
    """The factor (1 - gamma*t)**exponent with exponent in {+1, -1}."""

    gamma: WeilNum
    exponent: int


def _gamma_value(gamma):
    return gamma.value if isinstance(gamma, WeilNum) else gamma


def _apply_factor(coeffs: list, gamma, exponent: int) -> list:
    if exponent == 1:
        # multiply by (1 - gamma t)
        return [coeffs[0]] + [coeffs[k] - gamma * coeffs[k - 1] for k in range(1, len(coeffs))]
    if exponent == -1:
        # divide by (1 - gamma t): g_k = f_k + gamma g_{k-1}
        out = [coeffs[0]]
        for k in range(1, len(coeffs)):
            out.append(coeffs[k] + gamma * out[-1])
        return out
    raise ValueError(f"factor exponent must be +1 or -1, got {exponent}")


def ps_geom_factor(gamma, e: int, order: int) -> PowerSeries:
    """Expansion of (1 - gamma*t)**e to the given order."""
    value = _gamma_value(gamma)
    field = common_field(value)
    coeffs = [_coerce(1, field)] + [_zero(field)] * order
    return PowerSeries(_apply_factor(coeffs, value, e), field)


def ps_partial_product(stream: Iterable[Factor], depth: int, order: int) -> PowerSeries:
    """Product of the first ``depth`` factors of ``stream``, truncated at ``order``.

    Factors are applied in stream order; a stream shorter than ``depth`` is
    consumed completely.
    """
    factors = [(_gamma_value(f.gamma), f.exponent) for f in islice(stream, depth)]
    field = common_field(*(g for g, _ in factors))
    coeffs = [_coerce(1, field)] + [_zero(field)] * order
    for gamma, e in factors:
        coeffs = _apply_factor(coeffs, _coerce(gamma, field), e)
    return PowerSeries(coeffs, field)


def series_from_traces(traces: Sequence, order: int) -> PowerSeries:
    """exp(sum_{v=1}^{order} traces[v-1] * t^v / v)."""
    if len(traces) < order:
        raise ValueError(f"need {order} trace values, got {len(traces)}")
    field = common_field(*traces[:order])
    logs = [_zero(field)] + [_coerce(traces[v - 1], field) / v for v in range(1, order + 1)]
    return ps_exp(PowerSeries(logs, field))

"""Exact arithmetic: rationals, imaginary quadratic fields and weight-tagged Weil numbers.

Rationals are :class:`fractions.Fraction`.  A quadratic field is
``Q[x]/(x^2 - a x + q)`` with negative discriminant; its elements are stored
as ``c0 + c1*alpha`` where ``alpha`` is the class of ``x`` and
``beta = a - alpha`` is the Galois conjugate.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Optional, Union

Rat = Fraction


class FieldMismatchError(ValueError):
    """Operands live in different coefficient fields."""


def is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
        p += 1
    return True


def as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


@dataclass(frozen=True)
class QuadField:
    """The field Q[x]/(x^2 - a x + q); requires a^2 - 4q < 0."""

    a: int
    q: int

    def __post_init__(self):
        if not is_prime_power(self.q):
            raise ValueError(f"q={self.q} is not a prime power")
        if self.a * self.a - 4 * self.q >= 0:
            raise ValueError(
                f"x^2-{self.a}x+{self.q} has discriminant {self.a * self.a - 4 * self.q} >= 0"
            )

    @property
    def alpha(self) -> "AlgNum":
        return AlgNum(self, 0, 1)

    @property
    def beta(self) -> "AlgNum":
        return AlgNum(self, self.a, -1)

    def embed_alpha(self) -> complex:
        return complex(self.a / 2, math.sqrt(4 * self.q - self.a * self.a) / 2)

    def label(self) -> str:
        return f"x^2-{self.a}x+{self.q}"

    @classmethod
    def from_label(cls, label: str) -> "QuadField":
        m = re.fullmatch(r"x\^2-(-?\d+)x\+(\d+)", label)
        if m is None:
            raise ValueError(f"bad field label {label!r}")
        return cls(int(m.group(1)), int(m.group(2)))


Field = Optional[QuadField]  # None stands for Q


def _field_of(x) -> Field:
    return x.field if isinstance(x, AlgNum) else None


def common_field(*xs) -> Field:
    field: Field = None
    for x in xs:
        f = _field_of(x)
        if f is None:
            continue
        if field is None:
            field = f
        elif f != field:
            raise FieldMismatchError(f"{field.label()} vs {f.label()}")
    return field


class AlgNum:
    """Immutable element ``c0 + c1*alpha`` of Q or of a :class:`QuadField`.

    Stored as integers ``(n0 + n1*alpha) / den`` in lowest terms, den > 0.
    """

    __slots__ = ("field", "_n0", "_n1", "_den")

    def __init__(self, field: Field, c0=0, c1=0):
        c0 = as_rat(c0)
        c1 = as_rat(c1)
        if field is None and c1 != 0:
            raise ValueError("rational elements have c1 = 0")
        den = c0.denominator * c1.denominator // math.gcd(c0.denominator, c1.denominator)
        self._set(field, c0.numerator * (den // c0.denominator), c1.numerator * (den // c1.denominator), den)

    def _set(self, field, n0, n1, den):
        g = math.gcd(math.gcd(n0, n1), den)
        if g != 1:
            n0 //= g
            n1 //= g
            den //= g
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_n0", n0)
        object.__setattr__(self, "_n1", n1)
        object.__setattr__(self, "_den", den)

    @classmethod
    def _raw(cls, field, n0, n1, den) -> "AlgNum":
        x = object.__new__(cls)
        if den < 0:
            n0, n1, den = -n0, -n1, -den
        x._set(field, n0, n1, den)
        return x

    def __setattr__(self, name, value):
        raise AttributeError("AlgNum is immutable")

    @property
    def c0(self) -> Fraction:
        return Fraction(self._n0, self._den)

    @property
    def c1(self) -> Fraction:
        return Fraction(self._n1, self._den)

    @classmethod
    def coerce(cls, x, field: Field) -> "AlgNum":
        if isinstance(x, AlgNum):
            if x.field == field:
                return x
            if x.field is None:
                return cls._raw(field, x._n0, 0, x._den)
            raise FieldMismatchError(f"{x.field.label()} vs {field.label() if field else 'Q'}")
        x = as_rat(x)
        return cls._raw(field, x.numerator, 0, x.denominator)

    def _pair(self, other):
        if isinstance(other, AlgNum):
            if other.field is self.field or other.field == self.field:
                return self, other
            field = common_field(self, other)
        elif isinstance(other, (int, Fraction)):
            field = self.field
        else:
            return None, None
        return AlgNum.coerce(self, field), AlgNum.coerce(other, field)

    def __add__(self, other):
        x, y = self._pair(other)
        if x is None:
            return NotImplemented
        return AlgNum._raw(x.field, x._n0 * y._den + y._n0 * x._den, x._n1 * y._den + y._n1 * x._den,
                           x._den * y._den)

    __radd__ = __add__

    def __neg__(self):
        return AlgNum._raw(self.field, -self._n0, -self._n1, self._den)

    def __sub__(self, other):
        x, y = self._pair(other)
        if x is None:
            return NotImplemented
        return AlgNum._raw(x.field, x._n0 * y._den - y._n0 * x._den, x._n1 * y._den - y._n1 * x._den,
                           x._den * y._den)

    def __rsub__(self, other):
        x, y = self._pair(other)
        if x is None:
            return NotImplemented
        return y - x

    def __mul__(self, other):
        x, y = self._pair(other)
        if x is None:
            return NotImplemented
        return nf_mul(x, y)

    __rmul__ = __mul__

    def __truediv__(self, other):
        x, y = self._pair(other)
        if x is None:
            return NotImplemented
        return nf_mul(x, nf_inv(y))

    def __rtruediv__(self, other):
        x, y = self._pair(other)
        if x is None:
            return NotImplemented
        return nf_mul(y, nf_inv(x))

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else nf_inv(self)
        n = abs(n)
        result = AlgNum._raw(self.field, 1, 0, 1)
        while n:
            if n & 1:
                result = nf_mul(result, base)
            n >>= 1
            if n:
                base = nf_mul(base, base)
        return result

    def __eq__(self, other):
        if isinstance(other, AlgNum):
            if self._n1 == 0 and other._n1 == 0:
                return self._n0 == other._n0 and self._den == other._den
            return (self.field == other.field and self._n0 == other._n0
                    and self._n1 == other._n1 and self._den == other._den)
        if isinstance(other, (int, Fraction)):
            return self._n1 == 0 and Fraction(self._n0, self._den) == other
        return NotImplemented

    def __hash__(self):
        if self._n1 == 0:
            return hash(Fraction(self._n0, self._den))
        return hash((self.field, self._n0, self._n1, self._den))

    def __bool__(self):
        return self._n0 != 0 or self._n1 != 0

    def __repr__(self):
        if self.field is None:
            return f"AlgNum(Q, {self.c0})"
        return f"AlgNum({self.field.label()}, {self.c0}, {self.c1})"

    def __str__(self):
        if self._n1 == 0:
            return str(self.c0)
        if self._n0 == 0:
            return f"({self.c1})*alpha"
        return f"{self.c0} + ({self.c1})*alpha"

    def conj(self) -> "AlgNum":
        return nf_conj(self)

    def norm(self) -> Fraction:
        """Field norm x*conj(x); equals |x|^2 under any complex embedding."""
        n0, n1 = self._n0, self._n1
        if self.field is None:
            return Fraction(n0 * n0, self._den * self._den)
        a, q = self.field.a, self.field.q
        return Fraction(n0 * n0 + a * n0 * n1 + q * n1 * n1, self._den * self._den)

    def to_complex(self) -> complex:
        if self.field is None:
            return complex(self.c0)
        return float(self.c0) + float(self.c1) * self.field.embed_alpha()


Scalar = Union[Fraction, AlgNum]


def nf_mul(a: AlgNum, b: AlgNum) -> AlgNum:
    if a.field != b.field:
        raise FieldMismatchError("nf_mul operands in different fields")
    den = a._den * b._den
    if a.field is None:
        return AlgNum._raw(None, a._n0 * b._n0, 0, den)
    fa, fq = a.field.a, a.field.q
    cc = a._n1 * b._n1
    return AlgNum._raw(a.field, a._n0 * b._n0 - fq * cc, a._n0 * b._n1 + a._n1 * b._n0 + fa * cc, den)


def nf_inv(a: AlgNum) -> AlgNum:
    if not a:
        raise ZeroDivisionError("inverse of zero field element")
    if a.field is None:
        return AlgNum._raw(None, a._den, 0, a._n0)
    # (n0 + n1 alpha)^-1 = den * conj / (n0^2 + a n0 n1 + q n1^2)
    n0, n1 = a._n0, a._n1
    fa, fq = a.field.a, a.field.q
    norm = n0 * n0 + fa * n0 * n1 + fq * n1 * n1
    return AlgNum._raw(a.field, a._den * (n0 + fa * n1), -a._den * n1, norm)


def nf_conj(a: AlgNum) -> AlgNum:
    if a.field is None:
        return a
    return AlgNum._raw(a.field, a._n0 + a.field.a * a._n1, -a._n1, a._den)


def is_rational(a) -> Optional[Fraction]:
    if not isinstance(a, AlgNum):
        return as_rat(a)
    return a.c0 if a._n1 == 0 else None


def to_rat(x) -> Fraction:
    """Like :func:`is_rational` but raises when ``x`` is irrational."""
    r = is_rational(x)
    if r is None:
        raise ValueError(f"{x!r} is not rational")
    return r


def scalar_norm(x) -> Fraction:
    if isinstance(x, AlgNum):
        return x.norm()
    x = as_rat(x)
    return x * x


def simplify(x) -> Scalar:
    """Collapse an AlgNum with c1 == 0 to a Fraction."""
    if isinstance(x, AlgNum):
        return x.c0 if x._n1 == 0 else x
    return as_rat(x)


class WeilNum:
    """A field element together with its exact weight.

    Every complex conjugate of ``value`` has absolute value ``q**(weight/2)``.
    Weights add under multiplication.
    """

    __slots__ = ("value", "weight")

    def __init__(self, value, weight):
        object.__setattr__(self, "value", simplify(value))
        object.__setattr__(self, "weight", as_rat(weight))

    def __setattr__(self, name, value):
        raise AttributeError("WeilNum is immutable")

    @classmethod
    def q_power(cls, q: int, k: int = 1) -> "WeilNum":
        return cls(Fraction(q) ** k, 2 * k)

    @classmethod
    def one(cls) -> "WeilNum":
        return cls(Fraction(1), 0)

    def __mul__(self, other):
        if not isinstance(other, WeilNum):
            return NotImplemented
        return WeilNum(self.value * other.value, self.weight + other.weight)

    def inverse(self) -> "WeilNum":
        return WeilNum(1 / self.value, -self.weight)

    def __truediv__(self, other):
        if not isinstance(other, WeilNum):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n: int):
        return WeilNum(self.value ** n, self.weight * n)

    def __eq__(self, other):
        if not isinstance(other, WeilNum):
            return NotImplemented
        return self.value == other.value and self.weight == other.weight

    def __hash__(self):
        return hash((self.value, self.weight))

    def __repr__(self):
        return f"WeilNum({self.value}, weight={self.weight})"

    @property
    def field(self) -> Field:
        return _field_of(self.value)

    def magnitude_error(self, q: int) -> float:
        """Float diagnostic | |value| - q^(weight/2) |; never used for decisions."""
        value = self.value.to_complex() if isinstance(self.value, AlgNum) else complex(self.value)
        return abs(abs(value) - q ** (float(self.weight) / 2))


def frobenius_roots(field: QuadField) -> tuple[WeilNum, WeilNum]:
    """The weight-1 roots alpha, beta of x^2 - a x + q."""
    return WeilNum(field.alpha, 1), WeilNum(field.beta, 1)


# -- JSON encoding ------------------------------------------------------------


def rat_to_str(x) -> str:
    x = as_rat(x)
    return f"{x.numerator}/{x.denominator}"


def algnum_to_json(x) -> dict:
    if isinstance(x, AlgNum):
        label = x.field.label() if x.field is not None else "Q"
        return {"field": label, "c0": rat_to_str(x.c0), "c1": rat_to_str(x.c1)}
    return {"field": "Q", "c0": rat_to_str(x), "c1": "0/1"}


def algnum_from_json(d: dict) -> Scalar:
    c0, c1 = Fraction(d["c0"]), Fraction(d["c1"])
    if d["field"] == "Q":
        if c1 != 0:
            raise ValueError("rational element with nonzero c1")
        return c0
    return AlgNum(QuadField.from_label(d["field"]), c0, c1)


def weilnum_to_json(w: WeilNum) -> dict:
    d = algnum_to_json(w.value)
    d["weight"] = rat_to_str(w.weight)
    return d


def weilnum_from_json(d: dict) -> WeilNum:
    return WeilNum(algnum_from_json(d), Fraction(d["weight"]))


"""The closed catalog of stacks over F_q and their groupoid point counts.

``cv(stack, v)`` is the sum over isomorphism classes of F_{q^v}-points of
1/#Aut.  Classifying stacks of connected groups use that every torsor over a
finite field is trivial, so ``c_v(BG) = 1/#G(F_{q^v})``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Union

from .arith import is_prime_power
from .groups import GroupTable, count_bg_finite


def _check_q(q: int) -> None:
    if not is_prime_power(q):
        raise ValueError(f"q={q} is not a prime power")


def count_gl(n: int, q: int, v: int) -> int:
    """#GL_n(F_{q^v}) = prod_{i<n} (q^{vn} - q^{vi})."""
    if n < 1 or v < 1:
        raise ValueError("need n >= 1 and v >= 1")
    Q = q ** v
    out = 1
    for i in range(n):
        out *= Q ** n - Q ** i
    return out


def frobenius_power_sums(q: int, a: int, v: int) -> int:
    """alpha^v + beta^v for the roots of x^2 - a x + q, by s_{k+1} = a s_k - q s_{k-1}."""
    s_prev, s = 2, a
    if v == 0:
        return 2
    for _ in range(v - 1):
        s_prev, s = s, a * s - q * s_prev
    return s


def count_elliptic(q: int, a: int, v: int) -> int:
    """#E(F_{q^v}) = 1 - (alpha^v + beta^v) + q^v."""
    return 1 - frobenius_power_sums(q, a, v) + q ** v


def count_norm_torus(q: int, v: int) -> int:
    """Points of the norm-one torus of F_{q^2}/F_q over F_{q^v}: q^v - (-1)^v."""
    return q ** v - (-1) ** v


class Stack:
    """Base for catalog descriptors; every variant carries the base field size q."""

    q: int
    expect_rational = False
    affine_stabilizers = True

    @property
    def name(self) -> str:
        return type(self).__name__

    @property
    def dim(self) -> Fraction:
        raise NotImplementedError

    def cv(self, v: int) -> Fraction:
        raise NotImplementedError

    def params(self) -> dict:
        return {"q": self.q}

    def to_json(self) -> dict:
        return {"kind": self.name, **self.params()}


@dataclass(frozen=True)
class Point(Stack):
    q: int
    expect_rational = True

    def __post_init__(self):
        _check_q(self.q)

    @property
    def dim(self):
        return Fraction(0)

    def cv(self, v):
        return Fraction(1)


@dataclass(frozen=True)
class Gm(Stack):
    q: int
    expect_rational = True

    def __post_init__(self):
        _check_q(self.q)

    @property
    def dim(self):
        return Fraction(1)

    def cv(self, v):
        return Fraction(self.q ** v - 1)


@dataclass(frozen=True)
class AffineLine(Stack):
    q: int
    expect_rational = True

    def __post_init__(self):
        _check_q(self.q)

    @property
    def name(self):
        return "A1"

    @property
    def dim(self):
        return Fraction(1)

    def cv(self, v):
        return Fraction(self.q ** v)


@dataclass(frozen=True)
class P1(Stack):
    q: int
    expect_rational = True

    def __post_init__(self):
        _check_q(self.q)

    @property
    def dim(self):
        return Fraction(1)

    def cv(self, v):
        return Fraction(self.q ** v + 1)


@dataclass(frozen=True)
class GL(Stack):
    n: int
    q: int
    expect_rational = True

    def __post_init__(self):
        _check_q(self.q)
        if self.n < 1:
            raise ValueError("GL_n needs n >= 1")

    @property
    def name(self):
        return f"GL{self.n}"

    @property
    def dim(self):
        return Fraction(self.n * self.n)

    def cv(self, v):
        return Fraction(count_gl(self.n, self.q, v))

    def params(self):
        return {"q": self.q, "n": self.n}


@dataclass(frozen=True)
class BConnectedGroup(Stack):
    """B of a connected group; ``group`` is a catalog group scheme (Gm or GL).

    ``borel`` optionally overrides the transgressive generator data used by the
    cohomology model; by default it is derived from ``group``.
    """

    group: Union[Gm, GL]
    borel: Optional[Any] = field(default=None, compare=False)

    @property
    def q(self):
        return self.group.q

    @property
    def name(self):
        return "BGm" if isinstance(self.group, Gm) else f"B{self.group.name}"

    @property
    def dim(self):
        return -self.group.dim

    def cv(self, v):
        return 1 / self.group.cv(v)

    def params(self):
        return self.group.params()


def BGm(q: int) -> BConnectedGroup:
    return BConnectedGroup(Gm(q))


def BGL(n: int, q: int) -> BConnectedGroup:
    return BConnectedGroup(GL(n, q))


@dataclass(frozen=True)
class BElliptic(Stack):
    """B of an elliptic curve whose Frobenius has trace a."""

    q: int
    a: int
    affine_stabilizers = False

    def __post_init__(self):
        _check_q(self.q)
        if self.a * self.a - 4 * self.q >= 0:
            raise ValueError(f"BE needs a^2 - 4q < 0, got a={self.a}, q={self.q}")

    @property
    def name(self):
        return "BE"

    @property
    def dim(self):
        return Fraction(-1)

    def cv(self, v):
        return Fraction(1, count_elliptic(self.q, self.a, v))

    def params(self):
        return {"q": self.q, "a": self.a}


@dataclass(frozen=True)
class BFiniteGroup(Stack):
    table: GroupTable
    q: int
    label: str = field(default="G", compare=False)
    expect_rational = True

    def __post_init__(self):
        _check_q(self.q)

    @property
    def name(self):
        return "BFinite"

    @property
    def dim(self):
        return Fraction(0)

    def cv(self, v):
        return count_bg_finite(self.table, v)

    def params(self):
        return {"q": self.q, "group": self.label, "table": self.table.to_json()}


@dataclass(frozen=True)
class BNormTorus(Stack):
    """The nontrivial form of BGm: B of the norm-one torus of F_{q^2}/F_q."""

    q: int

    def __post_init__(self):
        _check_q(self.q)

    @property
    def name(self):
        return "FormOfBGm"

    @property
    def dim(self):
        return Fraction(-1)

    def cv(self, v):
        return Fraction(1, count_norm_torus(self.q, v))


@dataclass(frozen=True)
class QuotientP1Gm(Stack):
    """[P^1/Gm] with Gm scaling A^1 and fixing infinity.

    Counted through its orbits: the open orbit is a point and the two fixed
    points each have stabilizer Gm.
    """

    q: int

    def __post_init__(self):
        _check_q(self.q)

    @property
    def dim(self):
        return Fraction(0)

    def strata(self) -> tuple:
        return (Point(self.q), BGm(self.q), BGm(self.q))

    def cv(self, v):
        return sum((s.cv(v) for s in self.strata()), Fraction(0))


@dataclass(frozen=True)
class DisjointUnion(Stack):
    parts: tuple

    def __post_init__(self):
        if not self.parts:
            raise ValueError("empty disjoint union")
        if len({p.q for p in self.parts}) != 1:
            raise ValueError("all components must live over the same F_q")

    @property
    def q(self):
        return self.parts[0].q

    @property
    def name(self):
        return "DisjointUnion(" + ",".join(p.name for p in self.parts) + ")"

    @property
    def expect_rational(self):
        return all(p.expect_rational for p in self.parts)

    @property
    def affine_stabilizers(self):
        return all(p.affine_stabilizers for p in self.parts)

    @property
    def dim(self):
        return max(p.dim for p in self.parts)

    def cv(self, v):
        return sum((p.cv(v) for p in self.parts), Fraction(0))

    def to_json(self):
        return {"kind": "DisjointUnion", "q": self.q, "parts": [p.to_json() for p in self.parts]}


def cv(stack: Stack, v: int) -> Fraction:
    if v < 1:
        raise ValueError("v must be >= 1")
    return stack.cv(v)


def count_ratio(stack: Stack, v: int) -> Fraction:
    """c_v / c_{v+1}; tends to q^-d for a d-dimensional variety."""
    return stack.cv(v) / stack.cv(v + 1)

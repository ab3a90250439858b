"""Independent brute-force oracles used by the tests.

Nothing here imports the package: finite fields are built from scratch and
series are expanded by the most naive algorithm available.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import factorial


# -- finite fields F_{p^k} as polynomials mod an irreducible --------------------


def _poly_mulmod(a, b, mod, p):
    k = len(mod) - 1
    out = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    # mod is monic of degree k: x^k = -sum mod[i] x^i
    for deg in range(len(out) - 1, k - 1, -1):
        c = out[deg]
        if c:
            out[deg] = 0
            for i in range(k):
                out[deg - k + i] = (out[deg - k + i] - c * mod[i]) % p
    return tuple(out[:k])


def _is_primitive(mod, p):
    """True when t has order p^k - 1 mod ``mod``; the quotient is then a field."""
    k = len(mod) - 1
    if k == 1:
        return True
    if mod[0] == 0:
        return False
    one = tuple([1] + [0] * (k - 1))
    t = tuple([0, 1] + [0] * (k - 2))
    x, n = t, 1
    while x != one:
        x = _poly_mulmod(x, t, mod, p)
        n += 1
        if n > p ** k - 1:
            return False
    return n == p ** k - 1


class GF:
    """F_{p^k}; elements are coefficient tuples of length k."""

    def __init__(self, p: int, k: int):
        self.p, self.k = p, k
        for tail in product(range(p), repeat=k):
            mod = tuple(tail) + (1,)
            if _is_primitive(mod, p):
                self.mod = mod
                break
        self.elements = list(product(range(p), repeat=k))
        self.zero = tuple([0] * k)
        self.one = tuple([1] + [0] * (k - 1))

    def size(self) -> int:
        return self.p ** self.k

    def const(self, c: int):
        return tuple([c % self.p] + [0] * (self.k - 1))

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def mul(self, a, b):
        return _poly_mulmod(a, b, self.mod, self.p)

    def pow(self, a, e: int):
        out, base = self.one, a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def squares(self) -> dict:
        """Map x -> number of y with y^2 = x."""
        out: dict = {}
        for y in self.elements:
            s = self.mul(y, y)
            out[s] = out.get(s, 0) + 1
        return out


def count_short_weierstrass(F: GF, A: int, B: int) -> int:
    """#E(F) for y^2 = x^3 + A x + B, including the point at infinity."""
    sq = F.squares()
    total = 1
    for x in F.elements:
        rhs = F.add(F.add(F.mul(F.mul(x, x), x), F.mul(F.const(A), x)), F.const(B))
        total += sq.get(rhs, 0)
    return total


def find_curve_with_trace(p: int, a: int):
    """Some (A, B) with #E(F_p) = p + 1 - a (p odd, p > 3)."""
    F = GF(p, 1)
    for A, B in product(range(p), repeat=2):
        if (4 * A ** 3 + 27 * B ** 2) % p == 0:
            continue
        if count_short_weierstrass(F, A, B) == p + 1 - a:
            return A, B
    raise ValueError("no curve found")


def count_norm_one(F: GF, s: int, n: int) -> int:
    """#{(x0, x1) in F^2 : x0^2 + s x0 x1 + n x1^2 = 1}."""
    S, N = F.const(s), F.const(n)
    total = 0
    for x0 in F.elements:
        for x1 in F.elements:
            val = F.add(F.add(F.mul(x0, x0), F.mul(S, F.mul(x0, x1))), F.mul(N, F.mul(x1, x1)))
            if val == F.one:
                total += 1
    return total


def norm_kernel_size(p: int, k: int, v: int) -> int:
    """#{x in F_{q^{2v}}^* : x^{q^v + 1} = 1} for q = p^k."""
    F = GF(p, 2 * k * v)
    e = p ** (k * v) + 1
    return sum(1 for x in F.elements if any(x) and F.pow(x, e) == F.one)


def irreducible_quadratic(p: int):
    """(s, n) with y^2 - s y + n irreducible over F_p."""
    for s, n in product(range(p), repeat=2):
        if all((y * y - s * y + n) % p for y in range(p)):
            return s, n
    raise ValueError


def count_invertible_matrices(n: int, p: int) -> int:
    """Brute-force #GL_n(F_p) by Gaussian elimination on every matrix."""

    def rank(rows):
        rows = [list(r) for r in rows]
        r = 0
        for c in range(n):
            piv = next((i for i in range(r, n) if rows[i][c] % p), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = pow(rows[r][c], -1, p)
            rows[r] = [(x * inv) % p for x in rows[r]]
            for i in range(n):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
            r += 1
        return r

    count = 0
    for entries in product(range(p), repeat=n * n):
        rows = [entries[i * n:(i + 1) * n] for i in range(n)]
        if rank(rows) == n:
            count += 1
    return count


# -- naive series ----------------------------------------------------------------


def naive_mul(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        for j, y in enumerate(b[: order + 1 - i]):
            out[i + j] += x * y
    return out


def naive_exp(g, order):
    """sum_k g^k / k! for g with zero constant term."""
    assert g[0] == 0
    out = [Fraction(0)] * (order + 1)
    power = [Fraction(1)] + [Fraction(0)] * order
    for k in range(order + 1):
        for i in range(order + 1):
            out[i] += power[i] / factorial(k)
        power = naive_mul(power, g, order)
    return out


def geometric_product(exps, order):
    """Coefficients of prod_e (1 - x^e)^{-1} by repeated multiplication."""
    out = [1] + [0] * order
    for e in exps:
        geo = [1 if k % e == 0 else 0 for k in range(order + 1)]
        new = [0] * (order + 1)
        for i, x in enumerate(out):
            if x:
                for j in range(order + 1 - i):
                    new[i + j] += x * geo[j]
        out = new
    return out

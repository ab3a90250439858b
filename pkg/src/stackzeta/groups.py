"""Finite groups as multiplication tables, with a Frobenius automorphism."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from pathlib import Path
from typing import Iterator, Sequence


class InvalidGroupError(ValueError):
    pass


@dataclass(frozen=True)
class GroupTable:
    """Group on {0..n-1}: ``mul[g][h]`` is the index of g*h.

    ``sigma`` is the action of Frobenius and must be an automorphism.
    """

    n: int
    mul: tuple
    inv: tuple
    sigma: tuple
    identity: int = 0

    @classmethod
    def build(cls, mul: Sequence[Sequence[int]], sigma: Sequence[int] | None = None) -> "GroupTable":
        n = len(mul)
        mul = tuple(tuple(int(x) for x in row) for row in mul)
        if n == 0 or any(len(row) != n for row in mul):
            raise InvalidGroupError("multiplication table must be a non-empty square")
        if any(not 0 <= x < n for row in mul for x in row):
            raise InvalidGroupError("table entry out of range")
        ids = [e for e in range(n) if all(mul[e][g] == g and mul[g][e] == g for g in range(n))]
        if not ids:
            raise InvalidGroupError("no identity element")
        e = ids[0]
        for g, h, k in product(range(n), repeat=3):
            if mul[mul[g][h]][k] != mul[g][mul[h][k]]:
                raise InvalidGroupError(f"not associative at ({g}, {h}, {k})")
        inv = []
        for g in range(n):
            hs = [h for h in range(n) if mul[g][h] == e]
            if not hs:
                raise InvalidGroupError(f"element {g} has no inverse")
            inv.append(hs[0])
        sigma = tuple(range(n)) if sigma is None else tuple(int(x) for x in sigma)
        table = cls(n, mul, tuple(inv), sigma, e)
        if not table.is_automorphism(sigma):
            raise InvalidGroupError("sigma is not an automorphism of the table")
        return table

    def is_automorphism(self, phi: Sequence[int]) -> bool:
        if sorted(phi) != list(range(self.n)):
            return False
        m = self.mul
        return all(phi[m[g][h]] == m[phi[g]][phi[h]] for g in range(self.n) for h in range(self.n))

    def with_sigma(self, sigma: Sequence[int]) -> "GroupTable":
        return GroupTable.build(self.mul, sigma)

    def sigma_power(self, v: int) -> tuple:
        phi = tuple(range(self.n))
        for _ in range(v):
            phi = tuple(self.sigma[x] for x in phi)
        return phi

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul[x][g]
            k += 1
        return k

    def to_json(self) -> dict:
        return {"n": self.n, "mul": [list(r) for r in self.mul], "sigma": list(self.sigma)}

    @classmethod
    def from_json(cls, d: dict) -> "GroupTable":
        table = cls.build(d["mul"], d.get("sigma"))
        if "n" in d and d["n"] != table.n:
            raise InvalidGroupError(f"declared n={d['n']} but table has {table.n} rows")
        return table

    @classmethod
    def load(cls, path) -> "GroupTable":
        return cls.from_json(json.loads(Path(path).read_text()))


def twisted_orbits(G: GroupTable, v: int) -> list[tuple[int, int]]:
    """Orbit representatives and stabilizer sizes for h: g -> sigma^v(h)^-1 g h."""
    phi = G.sigma_power(v)
    m, inv = G.mul, G.inv
    seen = set()
    out = []
    for g in range(G.n):
        if g in seen:
            continue
        orbit = set()
        stab = 0
        for h in range(G.n):
            x = m[m[inv[phi[h]]][g]][h]
            orbit.add(x)
            if x == g:
                stab += 1
        seen |= orbit
        out.append((g, stab))
    return out


def count_bg_finite(G: GroupTable, v: int) -> Fraction:
    """Groupoid count of BG over F_{q^v}: sum over twisted orbits of 1/#Stab."""
    if v < 1:
        raise ValueError("v must be >= 1")
    return sum((Fraction(1, stab) for _, stab in twisted_orbits(G, v)), Fraction(0))


# -- standard groups ------------------------------------------------------------


def _from_elements(elements: list, op) -> GroupTable:
    index = {x: i for i, x in enumerate(elements)}
    return GroupTable.build([[index[op(x, y)] for y in elements] for x in elements])


def cyclic(n: int) -> GroupTable:
    return GroupTable.build([[(i + j) % n for j in range(n)] for i in range(n)])


def direct_product(G: GroupTable, H: GroupTable) -> GroupTable:
    elements = [(g, h) for g in range(G.n) for h in range(H.n)]
    return _from_elements(elements, lambda x, y: (G.mul[x[0]][y[0]], H.mul[x[1]][y[1]]))


def symmetric(k: int) -> GroupTable:
    elements = list(permutations(range(k)))
    # identity permutation comes first in lexicographic order
    return _from_elements(elements, lambda p, r: tuple(p[r[i]] for i in range(k)))


def dihedral(k: int) -> GroupTable:
    """Symmetries of a k-gon, order 2k; elements (s, r) meaning x^s y^r."""
    elements = [(s, r) for s in (0, 1) for r in range(k)]

    def op(x, y):
        s1, r1 = x
        s2, r2 = y
        return ((s1 + s2) % 2, ((-r1 if s2 else r1) + r2) % k)

    return _from_elements(elements, op)


def quaternion() -> GroupTable:
    # unit quaternions +-1, +-i, +-j, +-k as (sign, axis), axis 0 = real part
    basis = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 1): (-1, 0), (2, 2): (-1, 0), (3, 3): (-1, 0),
        (1, 2): (1, 3), (2, 3): (1, 1), (3, 1): (1, 2),
        (2, 1): (-1, 3), (3, 2): (-1, 1), (1, 3): (-1, 2),
        (1, 0): (1, 1), (2, 0): (1, 2), (3, 0): (1, 3),
    }
    elements = [(s, a) for s in (1, -1) for a in range(4)]

    def op(x, y):
        sign, axis = basis[(x[1], y[1])]
        return (x[0] * y[0] * sign, axis)

    return _from_elements(elements, op)


def small_groups(max_order: int = 8) -> list[tuple[str, GroupTable]]:
    """One table per isomorphism class of groups of order <= max_order (max 8)."""
    if max_order > 8:
        raise ValueError("only orders up to 8 are tabulated")
    groups = [(f"Z{n}", cyclic(n)) for n in range(1, max_order + 1)]
    if max_order >= 4:
        groups.append(("Z2xZ2", direct_product(cyclic(2), cyclic(2))))
    if max_order >= 6:
        groups.append(("S3", symmetric(3)))
    if max_order >= 8:
        groups.append(("Z2xZ4", direct_product(cyclic(2), cyclic(4))))
        groups.append(("Z2xZ2xZ2", direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2))))
        groups.append(("D4", dihedral(4)))
        groups.append(("Q8", quaternion()))
    return groups


def _generators(G: GroupTable) -> list[int]:
    gens: list[int] = []
    span = {G.identity}
    for g in sorted(range(G.n), key=lambda x: -G.element_order(x)):
        if g in span:
            continue
        gens.append(g)
        frontier = list(span)
        span = set(span)
        while frontier:
            x = frontier.pop()
            for s in gens:
                y = G.mul[x][s]
                if y not in span:
                    span.add(y)
                    frontier.append(y)
        if len(span) == G.n:
            break
    return gens


def automorphisms(G: GroupTable) -> Iterator[tuple]:
    """All automorphisms, found by extending every admissible image of a generating set."""
    gens = _generators(G)
    candidates = [[h for h in range(G.n) if G.element_order(h) == G.element_order(g)] for g in gens]
    for images in product(*candidates):
        phi = {G.identity: G.identity}
        frontier = [G.identity]
        ok = True
        while frontier and ok:
            x = frontier.pop()
            for s, t in zip(gens, images):
                y = G.mul[x][s]
                fy = G.mul[phi[x]][t]
                if y in phi:
                    if phi[y] != fy:
                        ok = False
                        break
                else:
                    phi[y] = fy
                    frontier.append(y)
        if not ok or len(phi) != G.n:
            continue
        perm = tuple(phi[x] for x in range(G.n))
        if G.is_automorphism(perm):
            yield perm

"""Flag counts over finite fields, the factor gamma(w), necklaces and zeta values.

``gamma_e(n, m)`` counts complete flags of ``F_q^n`` and ``gamma_o(n, m)``
complete flags of ``F_{q^2}^n`` that are self-dual for the Hermitian form
``sum u_i v_i^q``, both with ``q = p^m`` and returned as polynomials in ``p``.
The brute-force oracles enumerate subspaces directly and are only meant for
tiny instances.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import comb, prod

from .final import fragments_and_orbits, final_type_of, is_final
from .polyp import P, PolyP
from .weyl import SignedPerm

__all__ = [
    "gamma_e", "gamma_o", "gamma_of", "GF", "flag_count_oracle",
    "selfdual_flag_count_oracle", "necklace_count", "bernoulli", "zeta_neg_odd",
    "hm_degree", "OracleTooLarge",
]

ORACLE_LIMIT = 10 ** 7


class OracleTooLarge(ValueError):
    pass


# -- gamma factors -------------------------------------------------------------

@lru_cache(maxsize=None)
def gamma_e(n: int, m: int) -> PolyP:
    q = P ** m
    out = PolyP.const(1)
    for k in range(2, n + 1):
        out = out * (q ** k - 1).exact_div(q - 1)
    return out


@lru_cache(maxsize=None)
def gamma_o(n: int, m: int) -> PolyP:
    """Peel off an isotropic line and its orthogonal at each step."""
    q = P ** m
    out = PolyP.const(1)
    for d in range(n, 1, -2):
        num = (q ** d - (-1) ** d) * (q ** (d - 1) - (-1) ** (d - 1))
        out = out * num.exact_div(q ** 2 - 1)
    return out


def gamma_of(w: SignedPerm) -> PolyP:
    """Number of final flags refining the canonical flag of type ``w``."""
    if not is_final(w):
        raise ValueError(f"{w} is not final")
    out = PolyP.const(1)
    for orbit in fragments_and_orbits(final_type_of(w)).orbits:
        if orbit.odd:
            out = out * gamma_o(orbit.length, orbit.size // 2)
        else:
            out = out * gamma_e(orbit.length, orbit.size)
    return out


# -- small finite fields ---------------------------------------------------------

def _prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1:
                break
            return p, k
    raise ValueError(f"{q} is not a prime power")


def _polymod(a: list[int], m: list[int], p: int) -> list[int]:
    a = a[:]
    while len(a) >= len(m):
        c = a[-1] % p
        if c:
            shift = len(a) - len(m)
            for i, b in enumerate(m):
                a[shift + i] = (a[shift + i] - c * b) % p
        a.pop()
    return [x % p for x in a]


def _irreducible(p: int, k: int) -> list[int]:
    """Least monic irreducible polynomial of degree ``k`` over F_p (ascending)."""
    if k == 1:
        return [0, 1]
    small = [list(c) + [1] for d in range(1, k // 2 + 1)
             for c in itertools.product(range(p), repeat=d)]
    for c in itertools.product(range(p), repeat=k):
        f = list(c) + [1]
        if f[0] == 0:
            continue
        if all(any(_polymod(f, h, p)) for h in small):
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class GF:
    """The field with ``q`` elements; elements are integers ``0..q-1``."""

    def __init__(self, q: int):
        p, k = _prime_power(q)
        self.q, self.p, self.k = q, p, k
        mod = _irreducible(p, k)

        def digits(x):
            return [(x // p ** i) % p for i in range(k)]

        def number(ds):
            return sum(d * p ** i for i, d in enumerate(ds))

        self.add = [[number([(a + b) % p for a, b in zip(digits(x), digits(y))])
                     for y in range(q)] for x in range(q)]
        self.mul = []
        for x in range(q):
            row = []
            for y in range(q):
                dx, dy = digits(x), digits(y)
                prodc = [0] * (2 * k - 1)
                for i, a in enumerate(dx):
                    for j, b in enumerate(dy):
                        prodc[i + j] += a * b
                row.append(number((_polymod(prodc, mod, p) + [0] * k)[:k]))
            self.mul.append(row)
        self.neg = [next(y for y in range(q) if self.add[x][y] == 0) for x in range(q)]

    def power(self, x: int, n: int) -> int:
        out = 1
        for _ in range(n):
            out = self.mul[out][x]
        return out

    def vectors(self, n: int):
        return itertools.product(range(self.q), repeat=n)


def _span(field: GF, basis: list[tuple[int, ...]], n: int) -> frozenset:
    vecs = {tuple([0] * n)}
    for b in basis:
        new = set()
        for v in vecs:
            for c in range(field.q):
                new.add(tuple(field.add[x][field.mul[c][y]] for x, y in zip(v, b)))
        vecs = new
    return frozenset(vecs)


def _guard(q: int, n: int) -> None:
    if q ** (n * n) > ORACLE_LIMIT:
        raise OracleTooLarge(f"instance q={q}, n={n} exceeds the oracle size limit")


def flag_count_oracle(n: int, q: int) -> int:
    """Number of complete flags in ``F_q^n``, by enumerating subspaces."""
    _guard(q, n)
    if n <= 1:
        return 1
    field = GF(q)
    allv = list(field.vectors(n))

    @lru_cache(maxsize=None)
    def extend(space: frozenset, basis: tuple) -> int:
        if len(basis) == n - 1:
            return 1
        seen = set()
        total = 0
        for v in allv:
            if v in space:
                continue
            bigger = _span(field, list(basis) + [v], n)
            if bigger in seen:
                continue
            seen.add(bigger)
            total += extend(bigger, basis + (v,))
        return total

    return extend(frozenset({tuple([0] * n)}), ())


def selfdual_flag_count_oracle(n: int, q: int) -> int:
    """Complete flags in ``F_{q^2}^n`` self-dual for ``sum u_i v_i^q``.

    Such a flag is a chain of totally isotropic subspaces of dimensions
    ``1..n//2`` (the rest is forced by taking orthogonals).
    """
    _guard(q, n)
    if n <= 1:
        return 1
    field = GF(q * q)
    conj = [field.power(x, q) for x in range(field.q)]
    allv = list(field.vectors(n))

    def herm(u, v):
        acc = 0
        for a, b in zip(u, v):
            acc = field.add[acc][field.mul[a][conj[b]]]
        return acc

    isotropic = [v for v in allv if any(v) and herm(v, v) == 0]

    @lru_cache(maxsize=None)
    def extend(space: frozenset, basis: tuple) -> int:
        if len(basis) == n // 2:
            return 1
        seen = set()
        total = 0
        for v in isotropic:
            if v in space or any(herm(v, b) for b in basis):
                continue
            bigger = _span(field, list(basis) + [v], n)
            if bigger in seen:
                continue
            seen.add(bigger)
            total += extend(bigger, basis + (v,))
        return total

    return extend(frozenset({tuple([0] * n)}), ())


# -- necklaces -----------------------------------------------------------------

@lru_cache(maxsize=None)
def necklace_count(g: int) -> int:
    """Necklaces of sets of ``g`` labelled beads: a(n) = 1 + sum C(n,j) a(j)."""
    if g < 0:
        raise ValueError("g must be non-negative")
    if g == 0:
        return 1
    return 1 + sum(comb(g, j) * necklace_count(j) for j in range(g))


# -- Bernoulli numbers and zeta values ----------------------------------------------

@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """``B_n`` with ``B_1 = -1/2``, from ``sum_{k<=m} C(m+1,k) B_k = 0``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return Fraction(1)
    return -sum(comb(n + 1, k) * bernoulli(k) for k in range(n)) / (n + 1)


def zeta_neg_odd(j: int) -> Fraction:
    """``zeta(1-2j) = -B_{2j}/(2j)``."""
    return -bernoulli(2 * j) / (2 * j)


def hm_degree(g: int) -> Fraction:
    """Degree of ``lambda_1 ... lambda_g`` on the moduli stack."""
    if g < 1:
        raise ValueError("g must be positive")
    sign = -1 if (g * (g + 1) // 2) % 2 else 1
    return sign * prod((zeta_neg_odd(j) / 2 for j in range(1, g + 1)), start=Fraction(1))

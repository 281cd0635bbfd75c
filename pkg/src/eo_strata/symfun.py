"""Symmetric functions, Schur determinants, Pfaffians and Q-tilde polynomials.

The determinant and Pfaffian helpers are generic: entries only need ring
arithmetic, and the caller supplies the zero and one of the ring.
"""

from __future__ import annotations

import itertools
from typing import Callable, Sequence

from .multipoly import MultiPoly

__all__ = [
    "elementary", "complete", "det", "pfaffian", "schur_delta", "qtilde",
    "qtilde_beta", "chern_seq", "CoinvariantReducer",
]


def elementary(k: int, names: Sequence[str], positions: Sequence[int] | None = None) -> MultiPoly:
    """``e_k`` of the variables at ``positions`` (default: all of ``names``)."""
    names = tuple(names)
    pos = list(positions) if positions is not None else list(range(len(names)))
    if k < 0 or k > len(pos):
        return MultiPoly.zero(names)
    terms = {}
    for sub in itertools.combinations(pos, k):
        e = [0] * len(names)
        for s in sub:
            e[s] = 1
        terms[tuple(e)] = 1
    return MultiPoly(names, terms)


def complete(k: int, names: Sequence[str], positions: Sequence[int] | None = None) -> MultiPoly:
    """``h_k`` of the variables at ``positions``; ``h_0 = 1`` and ``h_{k<0} = 0``."""
    names = tuple(names)
    pos = list(positions) if positions is not None else list(range(len(names)))
    if k < 0:
        return MultiPoly.zero(names)
    terms = {}
    for sub in itertools.combinations_with_replacement(pos, k):
        e = [0] * len(names)
        for s in sub:
            e[s] += 1
        terms[tuple(e)] = 1
    return MultiPoly(names, terms)


def det(m: Sequence[Sequence], zero, one):
    """Laplace expansion along the first row (matrices here are tiny)."""
    n = len(m)
    if n == 0:
        return one
    if n == 1:
        return m[0][0]
    total = zero
    for j in range(n):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * det(minor, zero, one)
        total = total + term if j % 2 == 0 else total - term
    return total


def pfaffian(a: Sequence[Sequence], zero, one):
    """Pfaffian of an antisymmetric matrix, expanding along the first row."""
    n = len(a)
    if n % 2:
        raise ValueError("Pfaffian of an odd-dimensional matrix")
    if n == 0:
        return one
    total = zero
    for j in range(1, n):
        if not a[0][j]:
            continue
        keep = [k for k in range(1, n) if k != j]
        minor = [[a[r][c] for c in keep] for r in keep]
        term = a[0][j] * pfaffian(minor, zero, one)
        total = total + term if j % 2 == 1 else total - term
    return total


def chern_seq(c: Sequence, zero) -> Callable[[int], object]:
    """Index a Chern sequence ``c[0], c[1], ...`` with zero outside its range."""
    def get(k: int):
        if 0 <= k < len(c):
            return c[k]
        return zero
    return get


def schur_delta(mu: Sequence[int], c: Sequence, zero, one):
    """``det(c_{mu_i + j - i})`` for the parts of ``mu`` (zero parts dropped)."""
    parts = [m for m in mu if m > 0]
    get = chern_seq(c, zero)
    r = len(parts)
    mat = [[get(parts[i] + j - i) for j in range(r)] for i in range(r)]
    return det(mat, zero, one)


def qtilde(i: int, j: int, a: Sequence, zero):
    """``a_i a_j + 2 sum_{k=1}^{j} (-1)^k a_{i+k} a_{j-k}``."""
    get = chern_seq(a, zero)
    out = get(i) * get(j)
    for k in range(1, j + 1):
        term = get(i + k) * get(j - k)
        out = out + 2 * term if k % 2 == 0 else out - 2 * term
    return out


def qtilde_beta(beta: Sequence[int], a: Sequence, zero, one):
    """Pfaffian of ``(Q_{beta_i, beta_j})``, with ``beta`` padded by a 0 to even length."""
    b = list(beta)
    if any(x <= y for x, y in zip(b, b[1:])) or (b and b[-1] < 0):
        raise ValueError(f"malformed index sequence {beta}")
    if not b:
        return one
    if len(b) % 2:
        b.append(0)
    n = len(b)
    mat = [[zero] * n for _ in range(n)]
    for r in range(n):
        for s in range(r + 1, n):
            q = qtilde(b[r], b[s], a, zero)
            mat[r][s] = q
            mat[s][r] = -q
    return pfaffian(mat, zero, one)


class CoinvariantReducer:
    """Normal forms in ``Z[z_1..z_n]/(e_1(z^2), ..., e_n(z^2))``.

    The ideal is generated by ``h_{n-i+1}(z_1^2, ..., z_i^2)`` for ``i = 1..n``,
    a Groebner basis for lex order with ``z_n`` largest, with leading terms
    ``z_i^{2(n-i+1)}``.  Normal monomials have ``a_i < 2(n-i+1)``; there are
    ``2^n n!`` of them.
    """

    def __init__(self, n: int):
        self.n = n
        self.bounds = tuple(2 * (n - i) for i in range(n))   # 0-based: 2(n-i+1) for i=1..n
        self._tails = []
        for i in range(n):
            k = n - i
            tail = []
            for sub in itertools.combinations_with_replacement(range(i + 1), k):
                e = [0] * n
                for s in sub:
                    e[s] += 2
                if e[i] != 2 * k:
                    tail.append(tuple(e))
            self._tails.append(tail)
        self._memo: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {}

    def is_normal(self, e: Sequence[int]) -> bool:
        return all(a < b for a, b in zip(e, self.bounds))

    def monomial(self, e: tuple[int, ...]) -> dict[tuple[int, ...], int]:
        memo = self._memo
        hit = memo.get(e)
        if hit is not None:
            return hit
        for i, b in enumerate(self.bounds):
            if e[i] >= b:
                base = list(e)
                base[i] -= b
                res: dict = {}
                for m in self._tails[i]:
                    for ne, c in self.monomial(tuple(x + y for x, y in zip(base, m))).items():
                        v = res.get(ne, 0) - c
                        if v:
                            res[ne] = v
                        else:
                            res.pop(ne, None)
                memo[e] = res
                return res
        res = {e: 1}
        memo[e] = res
        return res

    def reduce(self, terms: dict) -> dict:
        """Normal form of a polynomial given as ``{exponent: coefficient}``."""
        out: dict = {}
        for e, c in terms.items():
            for ne, k in self.monomial(e).items():
                add = c * k if k != 1 else c
                v = out.get(ne)
                out[ne] = add if v is None else v + add
        return {e: c for e, c in out.items() if c}

    def basis(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(b) for b in self.bounds)))

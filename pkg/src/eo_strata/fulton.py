"""Fulton's degeneracy polynomials for symplectic flags.

The seed is ``prod_{i+j<=g} (x_i - y_j) * Delta_{(g,...,1)}(c)`` with
``c_k = e_k(x) + e_k(y)``.  Divided differences act on the ``x`` variables:
``d_i`` (``i < g``) divides by ``x_i - x_{i+1}`` and ``d_g`` negates ``x_g``
and divides by ``2 x_g``.

Operator order: for ``w = s_{a_1} ... s_{a_l}`` (reduced) the polynomial is
``d_{a_l}( ... d_{a_1}(seed))``, so ``P_{w s_j} = d_j P_w`` whenever the
length goes up.  This order reproduces the full g=2 table.  The Chern
sequence keeps ``c_0 = e_0(x) + e_0(y) = 2``: with ``c_0 = 1`` the g=2 table
still matches but the g=3 E-O classes do not.

Polynomials may be reduced modulo ``(e_k(x^2), e_k(y^2))``: that ideal is
stable under every ``d_i`` and dies after the substitution
``x_i = -l_i, y_j = p l_j``, so reduction never changes the final class.
"""

from __future__ import annotations

import threading
from functools import lru_cache
from typing import Sequence

from .multipoly import MultiPoly, divided_difference
from .symfun import CoinvariantReducer, elementary, schur_delta
from .weyl import SignedPerm, apply_word, simple

__all__ = ["FultonEngine", "fulton_seed", "fulton_P", "engine", "C0", "xy_names"]

#: constant term of the Chern sequence fed into the Schur determinant
C0 = 2


def xy_names(g: int) -> tuple[str, ...]:
    return tuple([f"x{i}" for i in range(1, g + 1)] + [f"y{i}" for i in range(1, g + 1)])


def apply_dd(f: MultiPoly, i: int, g: int) -> MultiPoly:
    return divided_difference(f, i, "A" if i < g else "C", positions=range(g))


class FultonEngine:
    """Seed and memoized ``P_w`` for one ``g``."""

    def __init__(self, g: int, reduce: bool = True, c0: int = C0):
        self.g = g
        self.reduce = reduce
        self.c0 = c0
        self.names = xy_names(g)
        self._red = CoinvariantReducer(g) if reduce else None
        self._memo: dict[SignedPerm, MultiPoly] = {}
        self._lock = threading.Lock()
        self._seed: MultiPoly | None = None

    # -- reduction ----------------------------------------------------------
    def _reduce(self, f: MultiPoly) -> MultiPoly:
        if self._red is None:
            return f
        g, red = self.g, self._red
        out: dict = {}
        for e, c in f.terms.items():
            xs = red.monomial(e[:g])
            ys = red.monomial(e[g:])
            for xa, k1 in xs.items():
                for yb, k2 in ys.items():
                    key = xa + yb
                    add = c * k1 * k2
                    v = out.get(key)
                    out[key] = add if v is None else v + add
        return MultiPoly(self.names, out)

    def _mul(self, a: MultiPoly, b: MultiPoly) -> MultiPoly:
        return self._reduce(a * b)

    # -- seed -----------------------------------------------------------------
    def seed(self) -> MultiPoly:
        if self._seed is None:
            g, names = self.g, self.names
            xs, ys = range(g), range(g, 2 * g)
            c = [MultiPoly.const(names, self.c0)]
            c += [elementary(k, names, xs) + elementary(k, names, ys) for k in range(1, g + 1)]
            zero, one = MultiPoly.zero(names), MultiPoly.const(names, 1)
            out = self._reduce(schur_delta(list(range(g, 0, -1)), c, zero, one))
            for i in range(1, g + 1):
                for j in range(1, g + 1 - i):
                    factor = MultiPoly.var(names, i - 1) - MultiPoly.var(names, g + j - 1)
                    out = self._mul(out, factor)
            self._seed = out
        return self._seed

    # -- chains ---------------------------------------------------------------
    def along(self, word: Sequence[int]) -> MultiPoly:
        """Apply the operators of a reduced word literally, first letter first."""
        g = self.g
        w = apply_word(word, g)
        if len(word) != w.length:
            raise ValueError(f"word {tuple(word)} is not reduced")
        f = self.seed()
        for i in word:
            f = self._reduce(apply_dd(f, i, g))
        return f

    def poly(self, w: SignedPerm) -> MultiPoly:
        """``P_w``, memoized; built from ``P_{w s_j}`` for the least right descent ``j``."""
        if w.g != self.g:
            raise ValueError("element of the wrong W_g")
        if w.is_identity():
            return self.seed()
        hit = self._memo.get(w)
        if hit is not None:
            return hit
        n = w.length
        j = next(j for j in range(1, self.g + 1) if (w * simple(j, self.g)).length < n)
        f = self._reduce(apply_dd(self.poly(w * simple(j, self.g)), j, self.g))
        with self._lock:
            return self._memo.setdefault(w, f)


@lru_cache(maxsize=None)
def engine(g: int) -> FultonEngine:
    return FultonEngine(g)


def fulton_seed(g: int) -> MultiPoly:
    return engine(g).seed()


def fulton_P(word: Sequence[int], g: int, reduce: bool = True) -> MultiPoly:
    if reduce:
        return engine(g).along(word)
    return FultonEngine(g, reduce=False).along(word)


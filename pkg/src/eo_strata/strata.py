"""Cycle classes of the strata on the flag space and on the base.

``class_u(w)`` is the Fulton polynomial of ``w`` under ``x_i = -l_i``,
``y_j = p l_j``; ``push_u`` is its Gysin image and ``class_v`` divides that
by ``gamma(w)`` for final ``w``.  Closed formulas for the p-rank and a-number
strata, the Pieri product, the map ``tau`` and the strata-basis expansions
live here as well.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .counting import gamma_of
from .final import YoungDiagram, final_of_young, is_final, young_of
from .fulton import FultonEngine, engine
from .multipoly import MultiPoly
from .polyp import P, PolyP, RatP
from .rings import (
    BaseClass, FlagClass, L, base_lam, bareiss_det, ell, flag_ring, gysin_full,
    lam, lambda_embed, solve_in_basis,
)
from .symfun import det, qtilde_beta
from .weyl import SignedPerm, bruhat_leq, enumerate_weyl, make_perm

__all__ = [
    "class_u", "push_u", "class_v", "schubert_class", "prank_class", "anumber_class",
    "excess", "intertwining", "kt_class", "pieri_class", "pieri_expand",
    "chevalley_expand", "pieri_support", "simple_root_coefficient", "expand_in_strata", "tau_of", "strata_basis",
    "basis_determinant_at_zero", "fulton_to_flag", "as_final", "InconsistencyError",
]


class InconsistencyError(ArithmeticError):
    """A computed class contradicts a structural statement (exactness, support...)."""


def fulton_to_flag(f: MultiPoly, g: int, p_value=P) -> FlagClass:
    """Substitute ``x_i = -l_i`` and ``y_j = p l_j`` and take the normal form."""
    out: dict = {}
    for e, c in f.terms.items():
        a, b = e[:g], e[g:]
        coef = c * (-1) ** sum(a) * p_value ** sum(b) if sum(b) else c * (-1) ** sum(a)
        if not coef:
            continue
        key = tuple(x + y for x, y in zip(a, b))
        v = out.get(key)
        out[key] = coef if v is None else v + coef
    return FlagClass.from_terms(g, out)


def as_final(x, g: int | None = None) -> SignedPerm:
    """Accept a final ``SignedPerm`` or a ``YoungDiagram``."""
    if isinstance(x, YoungDiagram):
        return final_of_young(x)
    if isinstance(x, SignedPerm):
        if not is_final(x):
            raise ValueError(f"{x} is not final")
        return x
    raise TypeError(f"expected a final element or a Young diagram, got {x!r}")


# -- Fulton classes and pushdowns ---------------------------------------------

@lru_cache(maxsize=None)
def class_u(w: SignedPerm) -> FlagClass:
    c = fulton_to_flag(engine(w.g).poly(w), w.g)
    if c and c.degree != w.codim:
        raise InconsistencyError(f"class of {w} has degree {c.degree}, expected {w.codim}")
    return c


@lru_cache(maxsize=None)
def push_u(w: SignedPerm) -> BaseClass:
    return gysin_full(class_u(w))


@lru_cache(maxsize=None)
def _class_v(w: SignedPerm) -> BaseClass:
    gm = gamma_of(w)
    out = {}
    for k, c in push_u(w).terms.items():
        if not isinstance(c, PolyP):
            raise InconsistencyError(f"pushdown of {w} has non-polynomial coefficients")
        q, r = c.divmod_poly(gm)
        if r:
            raise InconsistencyError(f"pushdown of {w} is not divisible by gamma = {gm}")
        out[k] = q
    return BaseClass(w.g, out)


def class_v(x) -> BaseClass:
    """E-O class of a final element (or of its Young diagram)."""
    return _class_v(as_final(x))


@lru_cache(maxsize=None)
def _schubert_engine(g: int) -> FultonEngine:
    return FultonEngine(g)


@lru_cache(maxsize=None)
def schubert_class(w: SignedPerm) -> FlagClass:
    """The Fulton polynomial at ``y = 0``, ``x_i = -l_i``: the classical Schubert class."""
    g = w.g
    f = _schubert_engine(g).poly(w)
    zero_y = MultiPoly(f.names, {e: c for e, c in f.terms.items() if not any(e[g:])})
    return fulton_to_flag(zero_y, g)


# -- closed formulas -----------------------------------------------------------

def prank_class(f: int, g: int) -> BaseClass:
    """``(p-1)(p^2-1)...(p^{g-f}-1) lambda_{g-f}``."""
    if not 0 <= f <= g:
        raise ValueError(f"p-rank {f} out of range 0..{g}")
    c = PolyP.const(1)
    for k in range(1, g - f + 1):
        c = c * (P ** k - 1)
    return base_lam(g - f, g).scale(c)


def _chern_twist(g: int, kind: str) -> list[BaseClass]:
    """Chern classes of ``E^(p)`` (``p^k lambda_k``) or ``E^*`` (``(-1)^k lambda_k``)."""
    out = []
    for k in range(g + 1):
        c = P ** k if kind == "frobenius" else PolyP.const((-1) ** k)
        out.append(base_lam(k, g).scale(c))
    return out


def anumber_class(a: int, g: int) -> BaseClass:
    """``sum_beta Q_beta(E^(p)) Q_{rho(a) - beta}(E^*)`` over ``beta`` inside ``{a,...,1}``."""
    if not 1 <= a <= g:
        raise ValueError(f"a-number {a} out of range 1..{g}")
    zero, one = BaseClass(g, {}), BaseClass.const(g, 1)
    cp, cd = _chern_twist(g, "frobenius"), _chern_twist(g, "dual")
    rho = list(range(a, 0, -1))
    total = zero
    for r in range(a + 1):
        for beta in itertools.combinations(rho, r):
            rest = [k for k in rho if k not in beta]
            total = total + qtilde_beta(beta, cp, zero, one) * qtilde_beta(rest, cd, zero, one)
    return total


def excess(xi: YoungDiagram) -> int:
    r = len(xi.parts)
    return xi.area - r * (r + 1) // 2


def intertwining(xi: YoungDiagram | tuple, eta: YoungDiagram | tuple) -> int:
    """``sum_i i * #{j : xi_i > eta_j > xi_{i+1}}`` (with ``xi_k = 0`` past the end)."""
    a = xi.parts if isinstance(xi, YoungDiagram) else tuple(xi)
    b = eta.parts if isinstance(eta, YoungDiagram) else tuple(eta)
    if set(a) & set(b):
        raise ValueError("intertwining number needs disjoint partitions")
    padded = list(a) + [0]
    return sum(i * sum(1 for y in b if padded[i - 1] > y > padded[i]) for i in range(1, len(a) + 1))


def kt_class(xi: YoungDiagram, interpretation: str = "truncated") -> BaseClass:
    """Experimental double sum for ``[V_Y]``; not validated in general.

    The sub-bundle Chern classes ``c(E^*_{g - xi'_j})`` have no intrinsic
    meaning on the base.  ``interpretation="full"`` uses ``c(E^*)`` for all of
    them and ``"truncated"`` drops the Chern classes above the rank
    ``g - xi'_j``.
    """
    if interpretation not in ("full", "truncated"):
        raise ValueError(f"unknown interpretation {interpretation!r}")
    g = xi.g
    zero, one = BaseClass(g, {}), BaseClass.const(g, 1)
    cp, cd = _chern_twist(g, "frobenius"), _chern_twist(g, "dual")
    xp = xi.complement().parts
    rho = list(range(g, 0, -1))
    sign0 = (-1) ** (excess(xi) + sum(xp))
    total = zero

    def c_sub(k: int, rank: int) -> BaseClass:
        if k < 0 or (interpretation == "truncated" and k > rank):
            return zero
        return cd[k] if k <= g else zero

    for ra in range(g + 1):
        for alpha in itertools.combinations(rho, ra):
            free = [k for k in rho if k not in alpha]
            qa = None
            for beta in itertools.combinations(free, len(xp)):
                if any(b < x for b, x in zip(beta, xp)):
                    continue
                union = set(alpha) | set(beta)
                rest = [k for k in rho if k not in union]
                n = len(xp)
                mat = [[c_sub(beta[i] - xp[j], g - xp[j]) for j in range(n)] for i in range(n)]
                d = det(mat, zero, one)
                if not d:
                    continue
                if qa is None:
                    qa = qtilde_beta(alpha, cp, zero, one)
                term = qa * qtilde_beta(rest, cd, zero, one) * d
                total = total + (term if intertwining(alpha, beta) % 2 == 0 else -term)
    return total.scale(sign0)


# -- strata bases --------------------------------------------------------------

def strata_basis(g: int, kind: str = "u", degree: int | None = None) -> list[tuple[SignedPerm, object]]:
    """``(w, class)`` pairs of the ``u`` (all of W_g) or ``v`` (finals) family."""
    if kind == "u":
        items = [(w, class_u(w)) for w in enumerate_weyl(g) if degree is None or w.codim == degree]
    elif kind == "v":
        items = [(w, class_v(w)) for w in enumerate_weyl(g, "final")
                 if degree is None or young_of(w).area == degree]
    else:
        raise ValueError(f"unknown basis {kind!r}")
    return items


def expand_in_strata(c, kind: str = "u") -> dict[SignedPerm, RatP]:
    """Coordinates of a homogeneous class in the ``u`` or ``v`` strata basis."""
    if kind == "u" and isinstance(c, BaseClass):
        c = lambda_embed(c)
    if kind == "v" and not isinstance(c, BaseClass):
        raise TypeError("the v basis lives in the base ring")
    if c.is_zero():
        return {}
    basis = strata_basis(c.g, kind, c.degree)
    xs = solve_in_basis(c.terms, [b.terms for _, b in basis])
    out = {}
    for (w, _), x in zip(basis, xs):
        if x:
            if kind == "u" and not x.in_zp_local():
                raise InconsistencyError(f"coefficient {x} of {w} is not in the local ring")
            out[w] = x
    return out


def basis_determinant_at_zero(g: int) -> int:
    """Determinant of the Schubert classes against the normal monomial basis."""
    ring = flag_ring(g)
    monos = ring.basis()
    index = {m: k for k, m in enumerate(monos)}
    rows = []
    for w in enumerate_weyl(g):
        row = [0] * len(monos)
        for e, c in schubert_class(w).terms.items():
            row[index[e]] = c.constant_term() if isinstance(c, PolyP) else int(c)
        rows.append(row)
    return bareiss_det(rows)


# -- Pieri ------------------------------------------------------------------------

def _ell_signed(k: int, g: int) -> FlagClass:
    return ell(k, g) if k <= g else -ell(2 * g + 1 - k, g)


def pieri_class(w: SignedPerm, i: int) -> FlagClass:
    """``p lambda_1 + p L_{g-i} - w.L_i``.

    The weight action is ``w.l_j = l_{w^{-1}(j)}`` (with ``l_{2g+1-k} = -l_k``):
    the literal ``l_{w(j)}`` gives negative coefficients already for g=3.
    """
    g = w.g
    if not 1 <= i <= g:
        raise ValueError(f"index {i} out of range 1..{g}")
    winv = w.inverse()
    wl = FlagClass(g, {})
    for j in range(1, i + 1):
        wl = wl + _ell_signed(winv(j), g)
    return lam(1, g).scale(P) + L(g - i, g).scale(P) + wl


def pieri_expand(w: SignedPerm, i: int) -> tuple[dict[SignedPerm, RatP], dict[SignedPerm, RatP]]:
    """Expand ``pieri_class(w, i) * class_u(w)``; returns ``(covered, residual)``.

    ``covered`` holds the coordinates on elements covered by ``w`` and
    ``residual`` everything else (empty when the support statement holds).
    """
    coords = expand_in_strata(pieri_class(w, i) * class_u(w), "u")
    below = {v for v in coords if v.length == w.length - 1 and bruhat_leq(v, w)}
    return ({v: c for v, c in coords.items() if v in below},
            {v: c for v, c in coords.items() if v not in below})


def _reflections(g: int):
    """``(t, root, coroot)`` in coordinates ``e_1..e_g``."""
    n = 2 * g
    bar = lambda a: n + 1 - a  # noqa: E731
    for a in range(1, g + 1):
        img = list(range(1, n + 1))
        img[a - 1], img[bar(a) - 1] = bar(a), a
        co = [0] * g
        co[a - 1] = 1
        yield make_perm(g, img[:g]), tuple(2 * c for c in co), tuple(co)
        for b in range(a + 1, g + 1):
            img = list(range(1, n + 1))
            img[a - 1], img[b - 1] = b, a
            img[bar(a) - 1], img[bar(b) - 1] = bar(b), bar(a)
            co = [0] * g
            co[a - 1], co[b - 1] = 1, -1
            yield make_perm(g, img[:g]), tuple(co), tuple(co)
            img = list(range(1, n + 1))
            img[a - 1], img[bar(b) - 1] = bar(b), a
            img[b - 1], img[bar(a) - 1] = bar(a), b
            co = [0] * g
            co[a - 1], co[b - 1] = 1, 1
            yield make_perm(g, img[:g]), tuple(co), tuple(co)


def simple_root_coefficient(root: tuple[int, ...], i: int) -> int:
    """Coefficient of ``alpha_i`` (``e_i - e_{i+1}``, ``alpha_g = 2 e_g``) in ``root``."""
    g = len(root)
    acc = sum(root[:i])
    return acc if i < g else acc // 2


def pieri_support(w: SignedPerm, i: int) -> set[SignedPerm]:
    """``{s_alpha w covered by w : alpha_i occurs in alpha with positive coefficient}``."""
    return {t * w for t, root, _ in _reflections(w.g)
            if (t * w).length == w.length - 1 and simple_root_coefficient(root, i) > 0}


def chevalley_expand(w: SignedPerm, i: int) -> dict[SignedPerm, int]:
    """Classical Chevalley rule: ``<omega_i, alpha^vee>`` on ``s_alpha w`` covered by ``w``."""
    out = {}
    for t, _, co in _reflections(w.g):
        v = t * w
        if v.length == w.length - 1:
            c = sum(co[:i])
            if c:
                out[v] = out.get(v, 0) + c
    return out


# -- tau -----------------------------------------------------------------------------

def tau_of(w: SignedPerm) -> tuple[SignedPerm, RatP] | None:
    """The final element whose E-O class is proportional to ``push_u(w)``."""
    push = push_u(w)
    if push.is_zero():
        return None
    coords = expand_in_strata(push, "v")
    if len(coords) != 1:
        raise InconsistencyError(f"pushdown of {w} is supported on {len(coords)} E-O classes")
    (v, m), = coords.items()
    return v, m

"""Tautological rings of the flag space and of the base.

Flag ring: ``Z[l_1..l_g]/(e_k(l^2))`` with coefficients in ``Z[p]`` (or its
fraction field).  Classes are kept in the lex normal form of
``symfun.CoinvariantReducer``: exponents ``a_i < 2(g-i+1)``.

Base ring: ``Z[lambda_1..lambda_g]`` modulo the homogeneous parts of
``(1 + lambda_1 + ...)(1 - lambda_1 + ...) = 1``; classes are combinations of
square-free lambda monomials, keyed by sorted index tuples.

For display and serialization a flag class is also written over the base ring
in the basis ``l^b`` with ``b_i <= g-i`` (its *relative form*).
"""

from __future__ import annotations

import itertools
import json
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .counting import hm_degree
from .multipoly import MultiPoly, divided_difference
from .polyp import P, PolyP, RatP
from .symfun import CoinvariantReducer

__all__ = [
    "FlagClass", "BaseClass", "flag_ring", "base_ring", "flag_normal_form",
    "base_normal_form", "lambda_embed", "gysin_full", "degree", "solve_in_basis",
    "bareiss_det", "specialize", "parse_class", "class_to_json", "class_from_json",
    "norm_coeff", "format_coeff", "ell", "lam", "base_lam", "L", "SingularSystem",
]


class SingularSystem(ArithmeticError):
    pass


def norm_coeff(c):
    """Bring a coefficient to ``PolyP`` when it is a polynomial, else ``RatP``."""
    if isinstance(c, PolyP):
        return c
    if isinstance(c, int):
        return PolyP.const(c)
    if isinstance(c, RatP):
        if c.den == 1:
            return c.num
        if c.den == -1:
            return -c.num
        return c
    if isinstance(c, Fraction):
        return PolyP.const(c.numerator) if c.denominator == 1 else RatP.coerce(c)
    raise TypeError(f"unsupported coefficient {c!r}")


def _clean(terms: Mapping) -> dict:
    out = {}
    for k, v in terms.items():
        if v:
            out[k] = v
    return out


def _accumulate(out: dict, key, value) -> None:
    v = out.get(key)
    out[key] = value if v is None else v + value


# -- rings -----------------------------------------------------------------------

class _FlagRing:
    def __init__(self, g: int):
        self.g = g
        self.names = tuple(f"l{i}" for i in range(1, g + 1))
        self.reducer = CoinvariantReducer(g)
        self._rel_memo: dict = {}
        self._lam_memo: dict = {}

    def basis(self) -> list[tuple[int, ...]]:
        return self.reducer.basis()

    def nf(self, terms: Mapping) -> dict:
        return self.reducer.reduce(dict(terms))

    def elementary_terms(self, k: int) -> dict:
        g = self.g
        out = {}
        for sub in itertools.combinations(range(g), k):
            e = [0] * g
            for s in sub:
                e[s] = 1
            out[tuple(e)] = 1
        return out

    def lambda_monomial(self, subset: tuple[int, ...]) -> dict:
        """Normal form of ``prod_{k in subset} e_k(l)`` (integer coefficients)."""
        hit = self._lam_memo.get(subset)
        if hit is not None:
            return hit
        if not subset:
            res = {(0,) * self.g: 1}
        else:
            rest = self.lambda_monomial(subset[1:])
            ek = self.elementary_terms(subset[0])
            prod: dict = {}
            for e1, c1 in rest.items():
                for e2 in ek:
                    _accumulate(prod, tuple(a + b for a, b in zip(e1, e2)), c1)
            res = self.nf(_clean(prod))
        self._lam_memo[subset] = res
        return res

    def relative(self, e: tuple[int, ...]) -> dict:
        """``l^e`` as ``{(lambda multiset, l^b): int}`` with ``b_i <= g-i``."""
        memo = self._rel_memo
        hit = memo.get(e)
        if hit is not None:
            return hit
        g = self.g
        for i in range(g, 0, -1):
            k = g - i + 1
            if e[i - 1] >= k:
                base = list(e)
                base[i - 1] -= k
                res: dict = {}
                # l_i^k = -(h_k(l_1..l_i) - l_i^k) - sum_{j>=1} (-1)^j lambda_j h_{k-j}(l_1..l_i)
                for j in range(0, k + 1):
                    for sub in itertools.combinations_with_replacement(range(i), k - j):
                        m = list(base)
                        for s in sub:
                            m[s] += 1
                        if j == 0 and sub.count(i - 1) == k:
                            continue
                        sign = -1 if j == 0 else -((-1) ** j)
                        lam_part = (j,) if j else ()
                        for (lm, b), c in self.relative(tuple(m)).items():
                            key = (tuple(sorted(lm + lam_part)), b)
                            _accumulate(res, key, sign * c)
                res = _clean(res)
                memo[e] = res
                return res
        res = {((), e): 1}
        memo[e] = res
        return res


class _BaseRing:
    def __init__(self, g: int):
        self.g = g
        self._memo: dict = {}

    def basis(self) -> list[tuple[int, ...]]:
        return [s for r in range(self.g + 1) for s in itertools.combinations(range(1, self.g + 1), r)]

    def nf_multiset(self, ms: tuple[int, ...]) -> dict:
        """Square-free normal form of ``prod lambda_k`` over the multiset ``ms``."""
        ms = tuple(sorted(k for k in ms if k != 0))
        hit = self._memo.get(ms)
        if hit is not None:
            return hit
        g = self.g
        if any(k > g for k in ms):
            res: dict = {}
        else:
            rep = next((k for a, k in zip(ms, ms[1:]) if a == k), None)
            if rep is None:
                res = {ms: 1}
            else:
                rest = list(ms)
                rest.remove(rep)
                rest.remove(rep)
                res = {}
                # lambda_k^2 = 2 sum_{i<k} (-1)^{k+i+1} lambda_i lambda_{2k-i}
                for i in range(rep):
                    if 2 * rep - i > g:
                        continue
                    sign = 2 * (-1) ** (rep + i + 1)
                    for key, c in self.nf_multiset(tuple(rest) + (i, 2 * rep - i)).items():
                        _accumulate(res, key, sign * c)
                res = _clean(res)
        self._memo[ms] = res
        return res


@lru_cache(maxsize=None)
def flag_ring(g: int) -> _FlagRing:
    if g < 1:
        raise ValueError("g must be positive")
    return _FlagRing(g)


@lru_cache(maxsize=None)
def base_ring(g: int) -> _BaseRing:
    if g < 1:
        raise ValueError("g must be positive")
    return _BaseRing(g)


# -- classes ---------------------------------------------------------------------

class _ClassBase:
    __slots__ = ("g", "terms")

    def __init__(self, g: int, terms: Mapping):
        self.g = g
        self.terms = {k: norm_coeff(v) for k, v in terms.items() if v}

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degrees(self) -> set[int]:
        return {self._deg(k) for k in self.terms}

    @property
    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError("class is not homogeneous")
        return ds.pop() if ds else -1

    def __eq__(self, other) -> bool:
        if isinstance(other, type(self)):
            return self.g == other.g and self.terms == other.terms
        if isinstance(other, (int, PolyP, RatP)):
            return self == type(self).const(self.g, other)
        return NotImplemented

    def __hash__(self):
        return hash((type(self).__name__, self.g, frozenset(self.terms.items())))

    def __neg__(self):
        return type(self)(self.g, {k: -v for k, v in self.terms.items()})

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.terms)
        for k, v in o.terms.items():
            _accumulate(out, k, v)
        return type(self)(self.g, out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = norm_coeff(c)
        return type(self)(self.g, {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, other):
        return self.scale(other)

    def _lift(self, other):
        if isinstance(other, type(self)):
            if other.g != self.g:
                raise ValueError("classes for different g")
            return other
        return type(self).const(self.g, other)

    def map_coeffs(self, fn):
        out = {}
        for k, v in self.terms.items():
            w = fn(v)
            if w:
                out[k] = w
        obj = object.__new__(type(self))
        obj.g = self.g
        obj.terms = out
        return obj

    def coeff_items(self):
        return sorted(self.terms.items())


class FlagClass(_ClassBase):
    """Element of the flag tautological ring, keyed by normal exponent tuples."""

    __slots__ = ()

    @staticmethod
    def _deg(k) -> int:
        return sum(k)

    @classmethod
    def const(cls, g: int, c) -> "FlagClass":
        return cls(g, {(0,) * g: c})

    @classmethod
    def from_terms(cls, g: int, terms: Mapping) -> "FlagClass":
        """Normalise arbitrary ``{exponent: coeff}`` data."""
        red = flag_ring(g).reducer
        out: dict = {}
        for e, c in terms.items():
            c = norm_coeff(c)
            for ne, k in red.monomial(tuple(e)).items():
                _accumulate(out, ne, c * k)
        return cls(g, out)

    def __mul__(self, other):
        if isinstance(other, BaseClass):
            other = lambda_embed(other)
        if not isinstance(other, FlagClass):
            return self.scale(other)
        if other.g != self.g:
            raise ValueError("classes for different g")
        red = flag_ring(self.g).reducer
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                c = c1 * c2
                for ne, k in red.monomial(tuple(a + b for a, b in zip(e1, e2))).items():
                    _accumulate(out, ne, c * k if k != 1 else c)
        return FlagClass(self.g, out)

    def __pow__(self, n: int) -> "FlagClass":
        out = FlagClass.const(self.g, 1)
        for _ in range(n):
            out = out * self
        return out

    def to_multipoly(self) -> MultiPoly:
        return MultiPoly(flag_ring(self.g).names, self.terms)

    def relative(self) -> dict:
        """``{(lambda subset, l^b): coeff}`` with ``b_i <= g-i``."""
        ring, base = flag_ring(self.g), base_ring(self.g)
        out: dict = {}
        for e, c in self.terms.items():
            for (lm, b), k in ring.relative(e).items():
                for sub, k2 in base.nf_multiset(lm).items():
                    _accumulate(out, (sub, b), c * (k * k2))
        return _clean(out)

    def to_str(self, style: str = "text") -> str:
        return format_terms(
            ((sub, b, c) for (sub, b), c in self.relative().items()), style)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"FlagClass(g={self.g}, {self})"


class BaseClass(_ClassBase):
    """Element of the base tautological ring, keyed by square-free index tuples."""

    __slots__ = ()

    @staticmethod
    def _deg(k) -> int:
        return sum(k)

    @classmethod
    def const(cls, g: int, c) -> "BaseClass":
        return cls(g, {(): c})

    def __mul__(self, other):
        if isinstance(other, FlagClass):
            return lambda_embed(self) * other
        if not isinstance(other, BaseClass):
            return self.scale(other)
        if other.g != self.g:
            raise ValueError("classes for different g")
        ring = base_ring(self.g)
        out: dict = {}
        for s1, c1 in self.terms.items():
            for s2, c2 in other.terms.items():
                c = c1 * c2
                for key, k in ring.nf_multiset(s1 + s2).items():
                    _accumulate(out, key, c * k)
        return BaseClass(self.g, out)

    def __pow__(self, n: int) -> "BaseClass":
        out = BaseClass.const(self.g, 1)
        for _ in range(n):
            out = out * self
        return out

    def to_str(self, style: str = "text") -> str:
        zero = (0,) * self.g
        return format_terms(((sub, zero, c) for sub, c in self.terms.items()), style)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"BaseClass(g={self.g}, {self})"


# -- constructors -----------------------------------------------------------------

def ell(i: int, g: int) -> FlagClass:
    if not 1 <= i <= g:
        raise ValueError(f"index {i} out of range 1..{g}")
    e = [0] * g
    e[i - 1] = 1
    return FlagClass.from_terms(g, {tuple(e): 1})


def lam(i: int, g: int) -> FlagClass:
    """``lambda_i = e_i(l)`` on the flag space."""
    return lambda_embed(base_lam(i, g))


def base_lam(i: int, g: int) -> BaseClass:
    if i == 0:
        return BaseClass.const(g, 1)
    if not 1 <= i <= g:
        return BaseClass(g, {})
    return BaseClass(g, {(i,): 1})


def L(i: int, g: int) -> FlagClass:
    """``L_i = -(l_1 + ... + l_i)``."""
    out = FlagClass(g, {})
    for j in range(1, i + 1):
        out = out - ell(j, g)
    return out


def flag_normal_form(f: MultiPoly | Mapping, g: int | None = None) -> FlagClass:
    if isinstance(f, MultiPoly):
        g = len(f.names)
        f = f.terms
    if g is None:
        raise ValueError("g is required for raw term data")
    return FlagClass.from_terms(g, f)


def base_normal_form(terms: Mapping[tuple[int, ...], object], g: int) -> BaseClass:
    """Normal form of ``{lambda index multiset: coeff}``."""
    ring = base_ring(g)
    out: dict = {}
    for ms, c in terms.items():
        c = norm_coeff(c)
        for key, k in ring.nf_multiset(tuple(ms)).items():
            _accumulate(out, key, c * k)
    return BaseClass(g, out)


def lambda_embed(b: BaseClass) -> FlagClass:
    ring = flag_ring(b.g)
    out: dict = {}
    for sub, c in b.terms.items():
        for e, k in ring.lambda_monomial(sub).items():
            _accumulate(out, e, c * k)
    return FlagClass(b.g, out)


# -- Gysin map ---------------------------------------------------------------------

def _longest_type_a_word(g: int) -> list[int]:
    return [j for i in range(1, g) for j in range(i, 0, -1)]


def symmetric_to_lambda(terms: Mapping[tuple[int, ...], object], g: int) -> dict:
    """Write a symmetric polynomial in ``l`` as ``{lambda multiset: coeff}``."""
    rest = dict(terms)
    out: dict = {}
    ring = flag_ring(g)
    cache: dict = {}

    def e_power(mult: tuple[int, ...]) -> dict:
        if mult not in cache:
            acc = {(0,) * g: 1}
            for k in mult:
                ek = ring.elementary_terms(k)
                nxt: dict = {}
                for e1, c1 in acc.items():
                    for e2 in ek:
                        _accumulate(nxt, tuple(a + b for a, b in zip(e1, e2)), c1)
                acc = nxt
            cache[mult] = acc
        return cache[mult]

    while rest:
        lead = max(rest)
        c = rest[lead]
        if any(a < b for a, b in zip(lead, lead[1:])):
            raise ArithmeticError("polynomial is not symmetric")
        mult = []
        for k in range(1, g + 1):
            nxt = lead[k] if k < g else 0
            mult.extend([k] * (lead[k - 1] - nxt))
        mult = tuple(mult)
        _accumulate(out, mult, c)
        for e, k in e_power(mult).items():
            v = rest.get(e, 0) - c * k
            if v:
                rest[e] = v
            else:
                rest.pop(e, None)
    return _clean(out)


def gysin_full(c: FlagClass) -> BaseClass:
    """Push forward to the base: ``d_{w_0}`` with ``d_i f = (f - s_i f)/(l_{i+1} - l_i)``."""
    g = c.g
    f = c.to_multipoly()
    for i in _longest_type_a_word(g):
        f = divided_difference(f, i, "A", sign=-1)
    return base_normal_form(symmetric_to_lambda(f.terms, g), g)


def degree(b: BaseClass):
    """Degree on the moduli stack of a top-degree base class."""
    g = b.g
    top = g * (g + 1) // 2
    if b.is_zero():
        return RatP(0)
    if b.degrees() != {top}:
        raise ValueError(f"degree needs a class of degree {top}")
    c = b.terms.get(tuple(range(1, g + 1)), 0)
    return RatP.coerce(c) * RatP.coerce(hm_degree(g))


# -- linear algebra ------------------------------------------------------------------

def _exact(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact Bareiss step")
        return q
    return PolyP.coerce(a).exact_div(PolyP.coerce(b))


def bareiss_det(matrix: Sequence[Sequence]):
    """Determinant by fraction-free elimination (entries ``int`` or ``PolyP``)."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        piv = next((r for r in range(k, n) if m[r][k]), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = _exact(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev)
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _as_poly_row(row: Sequence) -> list[PolyP]:
    """Clear denominators in one equation (row scaling keeps the solution)."""
    rats = [RatP.coerce(norm_coeff(x)) if x else RatP(0) for x in row]
    den = PolyP.const(1)
    for r in rats:
        if r.den != 1:
            den = den * r.den
    return [(r * den).as_polyp() for r in rats]


def solve_in_basis(target: Mapping, basis: Sequence[Mapping]) -> list[RatP]:
    """Coefficients ``x`` with ``sum x_j basis[j] = target`` (exact, unique).

    Raises ``SingularSystem`` if the basis vectors are dependent and
    ``ArithmeticError`` if the target lies outside their span.
    """
    keys = sorted(set(target).union(*[set(b) for b in basis]))
    n = len(basis)
    rows = [_as_poly_row([b.get(k, 0) for b in basis] + [target.get(k, 0)]) for k in keys]
    m = len(rows)
    prev = PolyP.const(1)
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if rows[i][col]), None)
        if piv is None:
            raise SingularSystem("basis vectors are linearly dependent")
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        for i in range(r + 1, m):
            row = rows[i]
            a = row[col]
            for j in range(col + 1, n + 1):
                row[j] = (pr[col] * row[j] - a * pr[j]).exact_div(prev)
            row[col] = PolyP.const(0)
        prev = pr[col]
        r += 1
    for i in range(n, m):
        if rows[i][n]:
            raise ArithmeticError("target is not in the span of the basis")
    x: list[RatP] = [RatP(0)] * n
    for j in range(n - 1, -1, -1):
        acc = RatP.coerce(rows[j][n])
        for l in range(j + 1, n):
            if rows[j][l]:
                acc = acc - RatP.coerce(rows[j][l]) * x[l]
        x[j] = acc / RatP.coerce(rows[j][j])
    return x


# -- specialisation ------------------------------------------------------------------

def specialize(c, at: str | int = "zero"):
    """Evaluate all coefficients at ``p = 0`` (``"zero"``) or at a given prime."""
    x = 0 if at in ("zero", 0) else int(at)

    def ev(v):
        if isinstance(v, RatP):
            r = v(x)
            return r.numerator if r.denominator == 1 else r
        if isinstance(v, PolyP):
            return v(x)
        return v

    if isinstance(c, (PolyP, RatP)):
        return ev(c)
    return c.map_coeffs(ev)


# -- text formats -----------------------------------------------------------------------

_SUB = {"text": ("λ{}", "ℓ{}", "^{}"), "latex": (r"\lambda_{{{}}}", r"\ell_{{{}}}", "^{{{}}}"),
        "ascii": ("L{}", "l{}", "^{}")}


def format_coeff(c) -> str:
    return str(c)


def _coeff_parts(c) -> tuple[str, str]:
    """(sign, body) where body is ready for juxtaposition with a monomial."""
    if isinstance(c, PolyP):
        nz = [a for a in c.coeffs if a]
        if len(nz) == 1:
            s = str(c)
            return ("-", s[1:]) if s.startswith("-") else ("+", s)
        return "+", f"({c})"
    if isinstance(c, RatP):
        return "+", f"({c})"
    s = str(c)
    if isinstance(c, Fraction) and c.denominator != 1:
        return ("-", f"{-c}") if c < 0 else ("+", s)
    return ("-", s[1:]) if s.startswith("-") else ("+", s)


def format_terms(items: Iterable[tuple[tuple[int, ...], tuple[int, ...], object]],
                 style: str = "text") -> str:
    """Render ``(lambda subset, l exponents, coeff)`` triples."""
    lam_f, ell_f, pow_f = _SUB["latex" if style == "latex" else ("ascii" if style == "ascii" else "text")]
    rows = sorted(items, key=lambda t: (-(sum(t[0]) + sum(t[1])), tuple(-k for k in t[0]), len(t[0]),
                                        tuple(-a for a in t[1])))
    parts = []
    for sub, exps, c in rows:
        mono = "".join(lam_f.format(k) for k in sub)
        for i, a in enumerate(exps, start=1):
            if a:
                mono += ell_f.format(i) + (pow_f.format(a) if a > 1 else "")
        sign, body = _coeff_parts(c)
        if mono:
            if body == "1":
                body = ""
            elif not body.startswith("("):
                body += "*" if style != "latex" else " "
        parts.append((sign, body + mono))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_CLASS_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<p>p)|(?P<ell>(?:ℓ|l|\\ell)_?\{?(?P<ei>\d+)\}?)"
    r"|(?P<lam>(?:λ|L|\\lambda)_?\{?(?P<li>\d+)\}?)|(?P<op>[-+*/()^])|(?P<minus>−))")


def parse_class(text: str, g: int):
    """Parse a class expression; returns ``FlagClass`` if any ``l`` occurs, else ``BaseClass``.

    Accepts ``λ1``/``L1``/``\\lambda_1`` and ``ℓ1``/``l1``/``\\ell_1``, with
    juxtaposition as multiplication.
    """
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _CLASS_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected character in {text!r} at {pos}")
        pos = m.end()
        if m.group("num"):
            toks.append(("num", int(m.group("num"))))
        elif m.group("p"):
            toks.append(("p", None))
        elif m.group("ell"):
            toks.append(("ell", int(m.group("ei"))))
        elif m.group("lam"):
            toks.append(("lam", int(m.group("li"))))
        elif m.group("minus"):
            toks.append(("op", "-"))
        else:
            toks.append(("op", m.group("op")))
    has_ell = any(t[0] == "ell" for t in toks)
    names = [f"l{i}" for i in range(1, g + 1)] + [f"L{i}" for i in range(1, g + 1)]
    for kind, v in toks:
        if kind in ("ell", "lam") and not 1 <= v <= g:
            raise ValueError(f"index {v} out of range 1..{g}")

    i = 0

    def peek():
        return toks[i] if i < len(toks) else (None, None)

    def take():
        nonlocal i
        t = peek()
        i += 1
        return t

    def expr():
        sign = 1
        while peek() in (("op", "+"), ("op", "-")):
            if take()[1] == "-":
                sign = -sign
        v = term().scale(sign)
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            t = term()
            v = v + t if op == "+" else v - t
        return v

    def term():
        v = factor()
        while True:
            kind, val = peek()
            if (kind, val) == ("op", "*"):
                take()
                v = v * factor()
            elif (kind, val) == ("op", "/"):
                take()
                d = factor()
                if d.degree > 0 or len(d.terms) != 1:
                    raise ValueError("division is only allowed by scalars")
                c = next(iter(d.terms.values()))
                v = v.map_coeffs(lambda x: x * RatP(1) / c)
            elif kind in ("num", "p", "ell", "lam") or (kind, val) == ("op", "("):
                v = v * factor()
            else:
                return v

    def factor():
        kind, val = take()
        if kind == "num":
            v = MultiPoly.const(names, PolyP.const(val))
        elif kind == "p":
            v = MultiPoly.const(names, P)
        elif kind == "ell":
            v = MultiPoly.var(names, val - 1, PolyP.const(1))
        elif kind == "lam":
            v = MultiPoly.var(names, g + val - 1, PolyP.const(1))
        elif (kind, val) == ("op", "("):
            v = expr()
            if take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
        elif (kind, val) == ("op", "-"):
            return -factor()
        else:
            raise ValueError(f"unexpected token {val!r}")
        if peek() == ("op", "^"):
            take()
            k, e = take()
            if k != "num":
                raise ValueError("exponent must be a non-negative integer")
            v = v ** e
        return v

    poly = expr()
    if i != len(toks):
        raise ValueError(f"trailing input in {text!r}")
    return _from_mixed(poly, g, has_ell)


def _from_mixed(poly: MultiPoly, g: int, as_flag: bool):
    if as_flag:
        out: dict = {}
        for e, c in poly.terms.items():
            ms = tuple(k + 1 for k in range(g) for _ in range(e[g + k]))
            part = lambda_embed(base_normal_form({ms: 1}, g)) if ms else FlagClass.const(g, 1)
            mono = FlagClass.from_terms(g, {tuple(e[:g]): c})
            for ee, cc in (part * mono).terms.items():
                _accumulate(out, ee, cc)
        return FlagClass(g, out)
    out = {}
    for e, c in poly.terms.items():
        ms = tuple(k + 1 for k in range(g) for _ in range(e[g + k]))
        _accumulate(out, ms, c)
    return base_normal_form(out, g)


# -- JSON -------------------------------------------------------------------------------

def class_to_json(c) -> dict:
    if isinstance(c, FlagClass):
        items = [(sub, b, v) for (sub, b), v in c.relative().items()]
    else:
        zero = (0,) * c.g
        items = [(sub, zero, v) for sub, v in c.terms.items()]
    items.sort(key=lambda t: (sum(t[0]) + sum(t[1]), t[0], t[1]))
    degs = {sum(s) + sum(b) for s, b, _ in items}
    return {
        "g": c.g,
        "degree": degs.pop() if len(degs) == 1 else (None if not degs else sorted(degs)),
        "kind": "flag" if isinstance(c, FlagClass) else "base",
        "terms": [{"ell": list(b), "lambda": list(s), "coeff": str(v)} for s, b, v in items],
    }


def class_from_json(data: Mapping | str):
    """Inverse of ``class_to_json``; terms need not be in normal form."""
    from .polyp import parse_ratp

    if isinstance(data, str):
        data = json.loads(data)
    g = int(data["g"])
    terms = data["terms"]
    is_flag = data.get("kind") == "flag" or any(any(t.get("ell", [])) for t in terms)
    if not is_flag:
        out = {}
        for t in terms:
            _accumulate(out, tuple(t["lambda"]), norm_coeff(parse_ratp(t["coeff"])))
        return base_normal_form(out, g)
    total = FlagClass(g, {})
    for t in terms:
        c = norm_coeff(parse_ratp(t["coeff"]))
        ex = tuple(t.get("ell") or [0] * g)
        part = lambda_embed(base_normal_form({tuple(t["lambda"]): 1}, g))
        total = total + part * FlagClass.from_terms(g, {ex: c})
    return total

"""Univariate polynomials in a formal variable ``p`` and their fractions.

``PolyP`` holds integer coefficients in ascending order of degree.  ``RatP``
is a reduced quotient of two ``PolyP`` values; it is the coefficient type of
the localisation of ``Z[p]`` at polynomials with constant term 1 (and of the
full fraction field when that is needed for linear algebra).

Both types are immutable and hashable and mix freely with ``int``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Iterable, Union

__all__ = ["PolyP", "RatP", "P", "parse_polyp", "parse_ratp", "as_ratp"]


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class PolyP:
    """Polynomial in ``p`` with arbitrary precision integer coefficients."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()):
        c = _trim(coeffs)
        for a in c:
            if not isinstance(a, int):
                raise TypeError(f"PolyP coefficients must be int, got {type(a).__name__}")
        self.coeffs = c
        self._hash = None

    # -- construction -----------------------------------------------------
    @classmethod
    def const(cls, a: int) -> "PolyP":
        return cls((a,))

    @classmethod
    def monomial(cls, k: int, a: int = 1) -> "PolyP":
        return cls((0,) * k + (a,))

    @staticmethod
    def coerce(x) -> "PolyP":
        if isinstance(x, PolyP):
            return x
        if isinstance(x, int):
            return PolyP((x,))
        if isinstance(x, Fraction) and x.denominator == 1:
            return PolyP((x.numerator,))
        raise TypeError(f"cannot coerce {x!r} to PolyP")

    # -- basic queries ----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def constant_term(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def content(self) -> int:
        g = 0
        for a in self.coeffs:
            g = gcd(g, a)
        return g

    def __call__(self, x):
        """Evaluate at ``x`` (Horner)."""
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def valuation(self) -> int:
        """Order of vanishing at ``p = 0`` (the p-adic valuation of the polynomial)."""
        if not self.coeffs:
            raise ValueError("valuation of zero")
        for k, a in enumerate(self.coeffs):
            if a:
                return k
        raise AssertionError  # pragma: no cover

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, RatP):
            return NotImplemented
        try:
            o = PolyP.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return PolyP(out)

    __radd__ = __add__

    def __neg__(self) -> "PolyP":
        return PolyP(-a for a in self.coeffs)

    def __pos__(self) -> "PolyP":
        return self

    def __sub__(self, other):
        if isinstance(other, RatP):
            return NotImplemented
        try:
            return self + (-PolyP.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RatP):
            return NotImplemented
        if isinstance(other, int):
            if other == 0:
                return _ZERO
            return PolyP(a * other for a in self.coeffs)
        try:
            o = PolyP.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return _ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return PolyP(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PolyP":
        if n < 0:
            raise ValueError("negative power of PolyP")
        result, base = _ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        """Exact division; returns a ``RatP`` when the quotient is not a polynomial."""
        if isinstance(other, RatP):
            return RatP(self) / other
        o = PolyP.coerce(other)
        q, r = self.divmod_poly(o)
        if r.is_zero():
            return q
        return RatP(self, o)

    def __rtruediv__(self, other):
        return RatP(PolyP.coerce(other), self)

    def divmod_poly(self, other: "PolyP") -> tuple["PolyP", "PolyP"]:
        """Long division in Z[p].

        Returns ``(q, r)`` with ``self = q*other + r`` when ``other`` divides
        ``self``.  If a non-integral quotient coefficient shows up the result is
        ``(0, self)``; callers only rely on ``r == 0`` meaning exact division.
        """
        if other.is_zero():
            raise ZeroDivisionError("PolyP division by zero")
        num = list(self.coeffs)
        d = other.coeffs
        lead = d[-1]
        if len(num) < len(d):
            return _ZERO, self
        q = [0] * (len(num) - len(d) + 1)
        for k in range(len(num) - len(d), -1, -1):
            c = num[k + len(d) - 1]
            if c == 0:
                continue
            if c % lead:
                return _ZERO, self
            f = c // lead
            q[k] = f
            for j, dj in enumerate(d):
                num[k + j] -= f * dj
        return PolyP(q), PolyP(num)

    def exact_div(self, other) -> "PolyP":
        o = PolyP.coerce(other)
        q, r = self.divmod_poly(o)
        if not r.is_zero():
            raise ArithmeticError(f"{o} does not divide {self} in Z[p]")
        return q

    def pseudo_rem(self, other: "PolyP") -> "PolyP":
        num = list(self.coeffs)
        d = other.coeffs
        lead = d[-1]
        while len(num) >= len(d) and any(num):
            shift = len(num) - len(d)
            c = num[-1]
            num = [lead * a for a in num]
            for j, dj in enumerate(d):
                num[shift + j] -= c * dj
            num = list(_trim(num))
        return PolyP(num)

    def primitive(self) -> "PolyP":
        c = self.content()
        if c == 0:
            return self
        if self.leading() < 0:
            c = -c
        return PolyP(a // c for a in self.coeffs)

    def derivative(self) -> "PolyP":
        return PolyP(k * a for k, a in enumerate(self.coeffs) if k)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, PolyP):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == _trim((other,))
        if isinstance(other, RatP):
            return other == self
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("PolyP", self.coeffs)) if len(self.coeffs) > 1 else hash(self.constant_term())
        return self._hash

    # -- text -------------------------------------------------------------
    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[k]
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            m = abs(a)
            if k == 0:
                body = str(m)
            else:
                var = "p" if k == 1 else f"p^{k}"
                body = var if m == 1 else f"{m}*{var}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __repr__(self) -> str:
        return f"PolyP({str(self)!r})"

    def needs_parens(self) -> bool:
        return sum(1 for a in self.coeffs if a) > 1


def polygcd(a: PolyP, b: PolyP) -> PolyP:
    """GCD in Z[p] by the primitive remainder sequence, positive leading coefficient."""
    if a.is_zero():
        a, b = b, a
    if b.is_zero():
        if a.is_zero():
            return _ZERO
        return a.primitive() * a.content()
    c = gcd(a.content(), b.content())
    u, v = a.primitive(), b.primitive()
    if u.degree < v.degree:
        u, v = v, u
    while not v.is_zero() and v.degree > 0:
        r = u.pseudo_rem(v)
        u, v = v, (r.primitive() if r else r)
    g = u.primitive() if v.is_zero() else _ONE
    return g * c


_ZERO = PolyP(())
_ONE = PolyP((1,))

#: the formal variable
P = PolyP((0, 1))


class RatP:
    """Quotient of two ``PolyP`` values kept in lowest terms.

    The denominator is normalised to have positive constant term when that
    term is nonzero, and positive leading coefficient otherwise.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, _reduced: bool = False):
        n = PolyP.coerce(num) if not isinstance(num, PolyP) else num
        d = PolyP.coerce(den) if not isinstance(den, PolyP) else den
        if d.is_zero():
            raise ZeroDivisionError("RatP with zero denominator")
        if not _reduced:
            if n.is_zero():
                d = _ONE
            else:
                g = polygcd(n, d)
                if g != 1:
                    n = n.exact_div(g)
                    d = d.exact_div(g)
            key = d.constant_term() or d.leading()
            if key < 0:
                n, d = -n, -d
        self.num = n
        self.den = d

    @staticmethod
    def coerce(x) -> "RatP":
        if isinstance(x, RatP):
            return x
        if isinstance(x, Fraction):
            return RatP(PolyP.const(x.numerator), PolyP.const(x.denominator))
        return RatP(PolyP.coerce(x), _ONE, _reduced=True)

    def is_polynomial(self) -> bool:
        return self.den.degree == 0 and self.den.constant_term() == 1

    def in_zp_local(self) -> bool:
        """Whether the denominator is a unit after classical specialisation."""
        return abs(self.den.constant_term()) == 1

    def as_polyp(self) -> PolyP:
        if self.den == 1:
            return self.num
        if self.den.degree == 0 and self.den.constant_term() == -1:
            return -self.num
        raise ArithmeticError(f"{self} is not a polynomial in p")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"denominator {self.den} vanishes at p={x}")
        return Fraction(self.num(x)) / d

    def __add__(self, other):
        try:
            o = RatP.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return RatP(self.num + o.num, self.den)
        return RatP(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatP(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        try:
            return self + (-RatP.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = RatP.coerce(other)
        except TypeError:
            return NotImplemented
        return RatP(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatP.coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("RatP division by zero")
        return RatP(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RatP.coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RatP(self.den, self.num) ** (-n)
        return RatP(self.num ** n, self.den ** n)

    def __eq__(self, other) -> bool:
        try:
            o = RatP.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self) -> int:
        if self.den == 1:
            return hash(self.num)
        return hash(("RatP", self.num, self.den))

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        n = str(self.num)
        d = str(self.den)
        if self.num.needs_parens():
            n = f"({n})"
        if self.den.needs_parens():
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self) -> str:
        return f"RatP({str(self)!r})"


def as_ratp(x) -> RatP:
    return RatP.coerce(x)


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(p)|(\^)|([-+*/()])|(−))")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected character in {text!r} at {pos}")
        pos = m.end()
        tok = m.group(0).strip()
        if tok == "−":
            tok = "-"
        tokens.append(tok)
    return tokens


class _Parser:
    """Recursive descent for expressions in p with + - * / ^ and parentheses.

    Juxtaposition such as ``2p^2`` or ``(p-1)(p+1)`` is read as multiplication.
    """

    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self):
        v = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing input {self.toks[self.i:]!r}")
        return v

    def expr(self):
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        v = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take()
            t = self.term()
            v = v + t if op == "+" else v - t
        return v

    def term(self):
        v = self.factor()
        while True:
            t = self.peek()
            if t == "*":
                self.take()
                v = v * self.factor()
            elif t == "/":
                self.take()
                v = RatP.coerce(v) / RatP.coerce(self.factor())
            elif t is not None and (t == "(" or t == "p" or t.isdigit()):
                v = v * self.factor()
            else:
                return v

    def factor(self):
        t = self.take()
        if t is None:
            raise ValueError("unexpected end of expression")
        if t.isdigit():
            v = PolyP.const(int(t))
        elif t == "p":
            v = P
        elif t == "(":
            v = self.expr()
            if self.take() != ")":
                raise ValueError("unbalanced parentheses")
        elif t == "-":
            return -self.factor()
        else:
            raise ValueError(f"unexpected token {t!r}")
        if self.peek() == "^":
            self.take()
            e = self.take()
            if e is None or not e.isdigit():
                raise ValueError("exponent must be a non-negative integer")
            v = v ** int(e)
        return v


def parse_ratp(text: str) -> RatP:
    return RatP.coerce(_Parser(text).parse())


def parse_polyp(text: str) -> PolyP:
    v = _Parser(text).parse()
    if isinstance(v, RatP):
        return v.as_polyp()
    return v


Coefficient = Union[int, Fraction, PolyP, RatP]

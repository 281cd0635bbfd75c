"""Sparse multivariate polynomials over a pluggable coefficient ring.

Terms are stored in a dict mapping exponent tuples to nonzero coefficients.
Coefficients may be ``int``, ``Fraction``, ``PolyP`` or ``RatP``; they only
need ring arithmetic and truthiness for zero.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping, Sequence

__all__ = ["MultiPoly", "divided_difference", "dd_monomial_A", "dd_monomial_C"]


class MultiPoly:
    __slots__ = ("names", "terms")

    def __init__(self, names: Sequence[str], terms: Mapping[tuple[int, ...], object] | None = None):
        self.names = tuple(names)
        n = len(self.names)
        clean = {}
        if terms:
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match {n} variables")
                if c:
                    clean[tuple(e)] = c
        self.terms = clean

    # -- construction -----------------------------------------------------
    @classmethod
    def _raw(cls, names: tuple[str, ...], terms: dict) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.names = names
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, names: Sequence[str]) -> "MultiPoly":
        return cls._raw(tuple(names), {})

    @classmethod
    def const(cls, names: Sequence[str], c) -> "MultiPoly":
        names = tuple(names)
        return cls._raw(names, {(0,) * len(names): c} if c else {})

    @classmethod
    def var(cls, names: Sequence[str], name: str | int, coeff=1) -> "MultiPoly":
        names = tuple(names)
        k = name if isinstance(name, int) else names.index(name)
        e = [0] * len(names)
        e[k] = 1
        return cls._raw(names, {tuple(e): coeff})

    @classmethod
    def monomial(cls, names: Sequence[str], exps: Sequence[int], coeff=1) -> "MultiPoly":
        names = tuple(names)
        return cls._raw(names, {tuple(exps): coeff} if coeff else {})

    # -- queries ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        ds = self.degrees()
        if not ds:
            return -1
        return max(ds)

    def coeff(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), 0)

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "MultiPoly") -> None:
        if self.names != other.names:
            raise ValueError(f"variable mismatch: {self.names} vs {other.names}")

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.const(self.names, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MultiPoly._raw(self.names, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.names, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return MultiPoly._raw(self.names, {e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "MultiPoly":
        if not c:
            return MultiPoly.zero(self.names)
        out = {}
        for e, v in self.terms.items():
            w = v * c
            if w:
                out[e] = w
        return MultiPoly._raw(self.names, out)

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power")
        out = MultiPoly.const(self.names, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.names == other.names and self.terms == other.terms
        try:
            return self == MultiPoly.const(self.names, other)
        except Exception:
            return NotImplemented

    def __hash__(self):
        return hash((self.names, frozenset(self.terms.items())))

    def map_coeffs(self, fn: Callable) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if v:
                out[e] = v
        return MultiPoly._raw(self.names, out)

    def substitute(self, images: Mapping[str, "MultiPoly"] | Sequence["MultiPoly"],
                   target_names: Sequence[str] | None = None) -> "MultiPoly":
        """Replace each variable by a polynomial in ``target_names``."""
        if isinstance(images, Mapping):
            imgs = [images[n] for n in self.names]
        else:
            imgs = list(images)
        if len(imgs) != len(self.names):
            raise ValueError("one image per variable is required")
        tnames = tuple(target_names) if target_names is not None else imgs[0].names
        powers: list[dict[int, MultiPoly]] = [{0: MultiPoly.const(tnames, 1)} for _ in imgs]

        def power(k: int, a: int) -> MultiPoly:
            cache = powers[k]
            if a not in cache:
                cache[a] = power(k, a - 1) * imgs[k]
            return cache[a]

        acc: dict = {}
        for e, c in self.terms.items():
            term = MultiPoly.const(tnames, c)
            for k, a in enumerate(e):
                if a:
                    term = term * power(k, a)
            for te, tc in term.terms.items():
                v = acc.get(te)
                acc[te] = tc if v is None else v + tc
        return MultiPoly._raw(tnames, {e: c for e, c in acc.items() if c})

    def rename(self, names: Sequence[str], positions: Sequence[int]) -> "MultiPoly":
        """Embed into a larger variable list; variable ``k`` goes to ``positions[k]``."""
        n = len(names)
        out = {}
        for e, c in self.terms.items():
            new = [0] * n
            for k, a in enumerate(e):
                new[positions[k]] += a
            out[tuple(new)] = c
        return MultiPoly._raw(tuple(names), out)

    # -- display ----------------------------------------------------------
    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-a for a in t[0])))

    def dump(self) -> str:
        """Debug form: one ``coef * x1^a y2^b`` line per term."""
        lines = []
        for e, c in sorted(self.terms.items()):
            mono = " ".join(f"{n}^{a}" if a > 1 else n for n, a in zip(self.names, e) if a)
            lines.append(f"{c} * {mono}" if mono else f"{c}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"MultiPoly({self.names}, {len(self.terms)} terms)"


# -- divided differences ------------------------------------------------------------

def dd_monomial_A(e: tuple[int, ...], i: int, j: int) -> Iterable[tuple[tuple[int, ...], int]]:
    """``(m - s m)/(z_i - z_j)`` for a monomial ``m`` (positions ``i``, ``j``)."""
    a, b = e[i], e[j]
    if a == b:
        return ()
    out = []
    lst = list(e)
    if a > b:
        for k in range(a - b):
            lst[i], lst[j] = a - 1 - k, b + k
            out.append((tuple(lst), 1))
    else:
        for k in range(b - a):
            lst[i], lst[j] = a + k, b - 1 - k
            out.append((tuple(lst), -1))
    return out


def dd_monomial_C(e: tuple[int, ...], i: int) -> Iterable[tuple[tuple[int, ...], int]]:
    """``(m - m|_{z_i -> -z_i}) / (2 z_i)``."""
    a = e[i]
    if a % 2 == 0:
        return ()
    lst = list(e)
    lst[i] = a - 1
    return ((tuple(lst), 1),)


def divided_difference(f: MultiPoly, i: int, kind: str = "A", positions: Sequence[int] | None = None,
                       sign: int = 1) -> MultiPoly:
    """Divided difference on the variables at ``positions`` (default: all).

    ``kind="A"`` is ``(F - s_i F)/(z_i - z_{i+1})`` (``1 <= i < n``), and
    ``kind="C"`` is ``(F - s'_i F)/(2 z_i)`` with ``s'_i`` negating ``z_i``.
    ``sign=-1`` divides by ``z_{i+1} - z_i`` instead.
    """
    pos = list(positions) if positions is not None else list(range(len(f.names)))
    out: dict = {}
    if kind == "A":
        if not 1 <= i < len(pos):
            raise ValueError(f"type A index {i} out of range")
        pi, pj = pos[i - 1], pos[i]
        for e, c in f.terms.items():
            for ne, s in dd_monomial_A(e, pi, pj):
                v = out.get(ne)
                add = c if s * sign > 0 else -c
                out[ne] = add if v is None else v + add
    elif kind == "C":
        if not 1 <= i <= len(pos):
            raise ValueError(f"type C index {i} out of range")
        pi = pos[i - 1]
        for e, c in f.terms.items():
            for ne, s in dd_monomial_C(e, pi):
                v = out.get(ne)
                add = c if s * sign > 0 else -c
                out[ne] = add if v is None else v + add
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return MultiPoly._raw(f.names, {e: c for e, c in out.items() if c})

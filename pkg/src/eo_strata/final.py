"""Final elements, final types, Young diagrams, canonical types and shuffles.

A final type ``nu`` is an increasing surjection ``{0..2g} -> {0..g}`` with
``nu(2g-i) = nu(i) - i + g``; it is stored by ``nu(1), ..., nu(g)``.
A final Young diagram of degree ``g`` is a set of distinct parts in ``1..g``,
stored as a strictly decreasing tuple ``xi``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .weyl import SignedPerm, Word, enumerate_weyl, make_perm, simple

__all__ = [
    "FinalType", "YoungDiagram", "CanonicalType", "Orbit", "FragmentOrbit",
    "final_type_of", "mu_of", "is_final", "final_of_type", "young_of_type",
    "type_of_young", "young_of", "final_of_young", "building_word", "break_points",
    "s_action", "s_action_young", "complementary", "canonical_domain",
    "fragments_and_orbits", "shuffle_perm", "shuffle", "shuffle_height",
    "elementary_reduction", "a_number", "semi_simple_indices", "is_movable",
    "u_f", "area", "staircase", "parse_young", "parse_type", "finals_by_young",
    "word_acts_on_young", "check_building", "left_action_type",
]


@dataclass(frozen=True)
class FinalType:
    g: int
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.g:
            raise ValueError(f"expected {self.g} values, got {len(self.values)}")
        prev = 0
        for i, v in enumerate(self.values, start=1):
            if v - prev not in (0, 1):
                raise ValueError(f"{self.values} is not a final type: step at {i}")
            prev = v

    def __call__(self, i: int) -> int:
        g = self.g
        if i == 0:
            return 0
        if 1 <= i <= g:
            return self.values[i - 1]
        if g < i <= 2 * g:
            k = 2 * g - i
            return self(k) - k + g
        raise ValueError(f"index {i} out of range 0..{2 * g}")

    def full(self) -> tuple[int, ...]:
        """Values on ``0..2g``."""
        return tuple(self(i) for i in range(2 * self.g + 1))

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.values)) + "}"


@dataclass(frozen=True)
class YoungDiagram:
    g: int
    parts: tuple[int, ...]

    def __post_init__(self):
        ps = self.parts
        if any(a <= b for a, b in zip(ps, ps[1:])):
            raise ValueError(f"parts {ps} are not strictly decreasing")
        if ps and not (1 <= ps[-1] and ps[0] <= self.g):
            raise ValueError(f"parts {ps} not within 1..{self.g}")

    @classmethod
    def of(cls, g: int, parts: Iterable[int]) -> "YoungDiagram":
        return cls(g, tuple(sorted(set(parts), reverse=True)))

    def complement(self) -> "YoungDiagram":
        return YoungDiagram(self.g, tuple(k for k in range(self.g, 0, -1) if k not in self.parts))

    @property
    def area(self) -> int:
        return sum(self.parts)

    def __str__(self) -> str:
        if not self.parts:
            return "∅"
        return "{" + ",".join(map(str, reversed(self.parts))) + "}"


def parse_young(text: str, g: int) -> YoungDiagram:
    """Parse ``"{5,3,1}"``, ``"5 3 1"``, ``"∅"``/``"{}"``."""
    t = text.strip()
    if t in ("∅", "{}", "", "empty"):
        return YoungDiagram(g, ())
    body = t.strip("{}[]() ")
    try:
        parts = [int(x) for x in re.split(r"[,\s]+", body) if x]
    except ValueError:
        raise ValueError(f"malformed Young diagram {text!r}") from None
    if len(set(parts)) != len(parts):
        raise ValueError(f"repeated part in {text!r}")
    return YoungDiagram.of(g, parts)


def parse_type(text: str, g: int) -> FinalType:
    body = text.strip().strip("{}[]() ")
    vals = tuple(int(x) for x in re.split(r"[,\s]+", body) if x)
    if len(vals) == 1 and g > 1 and len(body) == g:
        vals = tuple(int(c) for c in body)
    return FinalType(g, vals)


def area(y: YoungDiagram) -> int:
    return y.area


def staircase(a: int, g: int) -> YoungDiagram:
    """The diagram ``{a, a-1, ..., 1}``."""
    return YoungDiagram(g, tuple(range(a, 0, -1)))


# -- final types ---------------------------------------------------------------

def final_type_of(w: SignedPerm) -> FinalType:
    g = w.g
    return FinalType(g, tuple(i - w.r(g, i) for i in range(1, g + 1)))


def mu_of(w: SignedPerm) -> tuple[int, ...]:
    g = w.g
    inv = w.inverse()
    out = []
    top = 0
    for i in range(1, g + 1):
        top = max(top, inv(i))
        out.append(max(top - g, 0))
    return tuple(out)


def is_final(w: SignedPerm) -> bool:
    a = w.prefix
    return all(x < y for x, y in zip(a, a[1:]))


def final_of_type(nu: FinalType) -> SignedPerm:
    g = nu.g
    beta = [i for i in range(1, g + 1) if nu(i) == nu(i - 1)]
    beta_c = [j for j in range(g, 0, -1) if j not in beta]
    return make_perm(g, beta + [2 * g + 1 - j for j in beta_c])


def young_of_type(nu: FinalType) -> YoungDiagram:
    g = nu.g
    parts = []
    for j in range(1, g + 1):
        xi = sum(1 for i in range(1, g + 1) if nu(i) <= i - j)
        if xi == 0:
            break
        parts.append(xi)
    return YoungDiagram(g, tuple(parts))


def type_of_young(y: YoungDiagram) -> FinalType:
    g = y.g
    # i - nu(i) is the conjugate of the partition xi
    return FinalType(g, tuple(i - sum(1 for x in y.parts if x >= g + 1 - i)
                              for i in range(1, g + 1)))


def young_of(w: SignedPerm) -> YoungDiagram:
    return young_of_type(final_type_of(w))


def final_of_young(y: YoungDiagram) -> SignedPerm:
    return final_of_type(type_of_young(y))


def u_f(f: int, g: int) -> SignedPerm:
    """The final element whose diagram is the single row ``{g-f}``."""
    if not 0 <= f <= g:
        raise ValueError(f"p-rank {f} out of range 0..{g}")
    return final_of_young(YoungDiagram(g, (g - f,) if f < g else ()))


# -- s_i actions ---------------------------------------------------------------

def break_points(nu: FinalType) -> frozenset[int]:
    out = set()
    for i in range(1, nu.g + 1):
        a, b, c = nu(i - 1), nu(i), nu(i + 1)
        if (a == b != c) or (a != b == c):
            out.add(i)
    return frozenset(out)


def s_action(i: int, nu: FinalType) -> FinalType:
    if i not in break_points(nu):
        return nu
    vals = list(nu.values)
    vals[i - 1] += 1 if nu(i - 1) == nu(i) else -1
    return FinalType(nu.g, tuple(vals))


def s_action_young(i: int, y: YoungDiagram) -> YoungDiagram:
    """Add (or remove) a box in column ``i``; the part ``g-i`` becomes ``g-i+1``.

    A part of size 0 is always available, so ``s_g`` starts a new row.
    """
    g = y.g
    parts = set(y.parts) | {0}
    lo, hi = g - i, g - i + 1
    if lo in parts and hi not in parts:
        parts = (parts - {lo}) | {hi}
    elif hi in parts and lo not in parts:
        parts = (parts - {hi}) | {lo}
    return YoungDiagram.of(g, parts - {0})


def building_word(y: YoungDiagram) -> Word:
    """A building word ``t`` with ``t(∅) = y^c`` and product ``w_y``.

    Parts of ``y^c`` are grown largest first; letters act from the right.
    """
    g = y.g
    applied = []
    for part in y.complement().parts:
        applied.extend(range(g, g - part, -1))
    return tuple(reversed(applied))


def complementary(w: SignedPerm) -> SignedPerm:
    if not is_final(w):
        raise ValueError(f"{w} is not final")
    g = w.g
    taken = set(w.prefix)
    v = make_perm(g, [b for b in range(1, 2 * g + 1) if b not in taken])
    sigma0 = make_perm(g, [*range(g, 0, -1)])
    sigma1 = make_perm(g, [*range(2 * g, g, -1)])
    assert v == sigma1 * w * sigma0, "complementary element mismatch"
    return v


# -- canonical types and fragments ----------------------------------------------

@dataclass(frozen=True)
class CanonicalType:
    g: int
    domain: tuple[int, ...]
    f: dict

    def __hash__(self):
        return hash((self.g, self.domain))


def canonical_domain(nu: FinalType) -> CanonicalType:
    g = nu.g
    dom = {0, 2 * g}
    todo = list(dom)
    while todo:
        i = todo.pop()
        for j in (nu(i), 2 * g - i):
            if j not in dom:
                dom.add(j)
                todo.append(j)
    domain = tuple(sorted(dom))
    f = {i: nu(i) for i in domain}
    _check_minimally_stable(nu, domain, f)
    return CanonicalType(g, domain, f)


def _check_minimally_stable(nu: FinalType, domain: tuple[int, ...], f: dict) -> None:
    g = nu.g
    for a, b in zip(domain, domain[1:]):
        rise = f[b] - f[a]
        assert rise == 0 or rise == b - a, "canonical type is not piecewise 0/1"
        if rise == b - a:
            assert f[2 * g - a] == f[2 * g - b], "complementarity fails"
        # linear extension recovers nu
        for k in range(a, b + 1):
            expect = f[a] if rise == 0 else f[a] + (k - a)
            assert nu(k) == expect, "linear extension does not recover nu"


@dataclass(frozen=True)
class Orbit:
    fragments: tuple[tuple[int, int], ...]
    odd: bool
    size: int       # #S
    length: int     # #I


@dataclass(frozen=True)
class FragmentOrbit:
    fragments: tuple[tuple[int, int], ...]
    orbits: tuple[Orbit, ...]     # odd orbits and one representative per even pair


def fragments_and_orbits(nu: FinalType) -> FragmentOrbit:
    g = nu.g
    dom = canonical_domain(nu).domain
    frags = tuple(zip(dom, dom[1:]))
    v = complementary(final_of_type(nu))
    image = {}
    for a, b in frags:
        pts = {v(k) for k in range(a + 1, b + 1)}
        tgt = (min(pts) - 1, max(pts))
        assert tgt in frags and len(pts) == b - a, "v does not permute the fragments"
        image[(a, b)] = tgt

    def bar(fr):
        return (2 * g - fr[1], 2 * g - fr[0])

    seen = set()
    orbits = []
    for fr in frags:
        if fr in seen:
            continue
        orbit = [fr]
        nxt = image[fr]
        while nxt != fr:
            orbit.append(nxt)
            nxt = image[nxt]
        members = set(orbit)
        seen |= members
        barred = {bar(x) for x in orbit}
        if barred == members:
            assert len(orbit) % 2 == 0, "odd orbit of odd size"
            orbits.append(Orbit(tuple(orbit), True, len(orbit), fr[1] - fr[0]))
        else:
            seen |= barred
            orbits.append(Orbit(tuple(orbit), False, len(orbit), fr[1] - fr[0]))
    return FragmentOrbit(frags, tuple(orbits))


# -- shuffles ------------------------------------------------------------------

def _check_subset(I: Iterable[int], g: int) -> tuple[int, ...]:
    s = tuple(sorted(set(I)))
    if any(not 1 <= i <= g for i in s):
        raise ValueError(f"subset {s} not within 1..{g}")
    return s


def shuffle_perm(I: Iterable[int], g: int) -> tuple[SignedPerm, SignedPerm]:
    """``(sigma^I, sigma_I)`` as elements of W_g."""
    s = _check_subset(I, g)
    rest = [i for i in range(1, g + 1) if i not in s]
    upper = list(s) + rest
    lower = [g + 1 - upper[g - i] for i in range(1, g + 1)]
    return make_perm(g, upper), make_perm(g, lower)


def shuffle(w: SignedPerm, I: Iterable[int], checked: bool = False) -> SignedPerm:
    """``sigma^I w sigma_I^{-1}``.

    With ``checked`` the element must be admissible and semi-simply final of
    semi-simple rank ``#I``.
    """
    g = w.g
    s = _check_subset(I, g)
    if checked:
        ss = semi_simple_indices(w)
        f = len(ss)
        if ss != frozenset(range(g - f + 1, g + 1)):
            raise ValueError(f"{w} is not semi-simply final")
        if f != len(s):
            raise ValueError(f"#I = {len(s)} differs from the semi-simple rank {f}")
    up, low = shuffle_perm(s, g)
    return up * w * low.inverse()


def shuffle_height(I: Iterable[int]) -> int:
    s = sorted(set(I))
    return sum(i - k for k, i in enumerate(s, start=1))


def elementary_reduction(I: Iterable[int]) -> tuple[tuple[int, ...], int] | None:
    """``(I', i_k)`` with ``i_k`` the first entry exceeding its position.

    Returns ``None`` when ``I = {1..r}`` (no reduction possible).
    """
    s = sorted(set(I))
    for k, i in enumerate(s, start=1):
        if i > k:
            reduced = s[: k - 1] + [i - 1] + s[k:]
            return tuple(reduced), i
    return None


# -- invariants ----------------------------------------------------------------

def a_number(w: SignedPerm) -> int:
    return w.r(w.g, w.g)


def _require_admissible(w: SignedPerm) -> None:
    g = w.g
    if any(w(i) > g + i for i in range(1, g + 1)):
        raise ValueError(f"{w} is not admissible")


def semi_simple_indices(w: SignedPerm) -> frozenset[int]:
    _require_admissible(w)
    return frozenset(i for i in range(1, w.g + 1) if w(i) == w.g + i)


def is_movable(w: SignedPerm, j: int) -> bool:
    """Whether ``j = g - i`` is movable: ``r_w(g+i-1, i+1) >= i+1``."""
    _require_admissible(w)
    g = w.g
    if not 1 <= j <= g - 1:
        raise ValueError(f"index {j} out of range 1..{g - 1}")
    i = g - j
    return w.r(g + i - 1, i + 1) >= i + 1


def finals_by_young(g: int) -> list[tuple[YoungDiagram, SignedPerm]]:
    return [(young_of(w), w) for w in enumerate_weyl(g, "final")]


def word_acts_on_young(word: Sequence[int], y: YoungDiagram) -> YoungDiagram:
    for i in reversed(word):
        y = s_action_young(i, y)
    return y


def check_building(word: Sequence[int], g: int) -> bool:
    """Every letter (acting from the right) adds a box."""
    y = YoungDiagram(g, ())
    for i in reversed(word):
        z = s_action_young(i, y)
        if z.area != y.area + 1:
            return False
        y = z
    return True


def left_action_type(i: int, w: SignedPerm) -> FinalType:
    return final_type_of(simple(i, w.g) * w)


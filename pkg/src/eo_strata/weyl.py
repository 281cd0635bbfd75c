"""The Weyl group W_g of type C_g, as signed permutations of {1, ..., 2g}.

An element ``w`` is stored by all ``2g`` images and satisfies
``w(2g+1-i) = 2g+1-w(i)``.  It is written in prefix form ``[w(1),...,w(g)]``.

Composition convention: ``u * v`` is the map ``i -> u(v(i))``, and a word
``(i1, ..., ik)`` denotes the product ``s_i1 * ... * s_ik``.  With this
convention ``apply_word((3, 2), 3) == [1,4,2]``.

The simple reflection ``s_i`` (``i < g``) swaps ``i, i+1`` and
``2g-i, 2g+1-i``; ``s_g`` swaps ``g`` and ``g+1``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

__all__ = [
    "SignedPerm", "Word", "make_perm", "identity", "simple", "apply_word",
    "reduced_word", "bruhat_leq", "enumerate_weyl", "w_empty", "longest",
    "rho_embed", "parse_perm", "parse_word", "format_word", "covers",
]

Word = tuple[int, ...]


@dataclass(frozen=True, order=False)
class SignedPerm:
    g: int
    images: tuple[int, ...]

    def __post_init__(self):
        g, im = self.g, self.images
        if g < 1:
            raise ValueError("g must be positive")
        if len(im) != 2 * g or sorted(im) != list(range(1, 2 * g + 1)):
            raise ValueError(f"{im} is not a permutation of 1..{2 * g}")
        for i in range(1, g + 1):
            if im[2 * g - i] != 2 * g + 1 - im[i - 1]:
                raise ValueError(f"{im} does not commute with i -> {2 * g + 1}-i")

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    @property
    def prefix(self) -> tuple[int, ...]:
        return self.images[: self.g]

    def __mul__(self, other: "SignedPerm") -> "SignedPerm":
        if not isinstance(other, SignedPerm):
            return NotImplemented
        if other.g != self.g:
            raise ValueError("cannot compose elements of different W_g")
        return SignedPerm(self.g, tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "SignedPerm":
        inv = [0] * (2 * self.g)
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return SignedPerm(self.g, tuple(inv))

    def r(self, i: int, j: int) -> int:
        """Number of ``a <= i`` with ``w(a) <= j``."""
        return sum(1 for a in self.images[:i] if a <= j)

    @property
    def length(self) -> int:
        g, a = self.g, self.prefix
        inv = sum(1 for i in range(g) for j in range(i + 1, g) if a[i] > a[j])
        big = sum(1 for i in range(g) for j in range(i, g) if a[i] + a[j] > 2 * g + 1)
        return inv + big

    @property
    def codim(self) -> int:
        g, a = self.g, self.prefix
        asc = sum(1 for i in range(g) for j in range(i + 1, g) if a[i] < a[j])
        small = sum(1 for i in range(g) for j in range(i, g) if a[i] + a[j] < 2 * g + 1)
        return asc + small

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, 2 * self.g + 1))

    def sort_key(self):
        return (self.length, self.prefix)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.prefix)) + "]"

    def __repr__(self) -> str:
        return f"SignedPerm(g={self.g}, {self})"


def make_perm(g: int, prefix: Sequence[int]) -> SignedPerm:
    """Complete a prefix ``[a_1..a_g]`` to the unique element of W_g."""
    prefix = tuple(int(a) for a in prefix)
    if len(prefix) != g:
        raise ValueError(f"expected {g} entries, got {len(prefix)}")
    n = 2 * g
    seen = set()
    for a in prefix:
        if not 1 <= a <= n:
            raise ValueError(f"entry {a} out of range 1..{n}")
        if a in seen:
            raise ValueError(f"duplicate entry {a}")
        if n + 1 - a in seen:
            raise ValueError(f"entries {a} and {n + 1 - a} are a symmetric pair")
        seen.add(a)
    images = prefix + tuple(n + 1 - prefix[g - 1 - k] for k in range(g))
    return SignedPerm(g, images)


@lru_cache(maxsize=None)
def identity(g: int) -> SignedPerm:
    return SignedPerm(g, tuple(range(1, 2 * g + 1)))


@lru_cache(maxsize=None)
def simple(i: int, g: int) -> SignedPerm:
    if not 1 <= i <= g:
        raise ValueError(f"simple reflection index {i} out of range 1..{g}")
    im = list(range(1, 2 * g + 1))
    if i < g:
        im[i - 1], im[i] = im[i], im[i - 1]
        a, b = 2 * g - i, 2 * g + 1 - i
        im[a - 1], im[b - 1] = im[b - 1], im[a - 1]
    else:
        im[g - 1], im[g] = im[g], im[g - 1]
    return SignedPerm(g, tuple(im))


def apply_word(word: Sequence[int], g: int) -> SignedPerm:
    w = identity(g)
    for i in word:
        w = w * simple(i, g)
    return w


def reduced_word(w: SignedPerm) -> Word:
    """A reduced word, peeling the smallest left descent at every step."""
    g = w.g
    word = []
    cur = w
    while not cur.is_identity():
        n = cur.length
        for i in range(1, g + 1):
            nxt = simple(i, g) * cur
            if nxt.length < n:
                word.append(i)
                cur = nxt
                break
        else:  # pragma: no cover - every non-identity element has a descent
            raise AssertionError(f"no descent found for {w}")
    return tuple(word)


def bruhat_leq(u: SignedPerm, v: SignedPerm) -> bool:
    """``u <= v`` iff ``r_u(i, j) >= r_v(i, j)`` for ``i <= g``, ``j <= 2g``."""
    if u.g != v.g:
        raise ValueError("elements of different W_g")
    g = u.g
    for i in range(1, g + 1):
        for j in range(1, 2 * g + 1):
            if u.r(i, j) < v.r(i, j):
                return False
    return True


def covers(w: SignedPerm) -> list[SignedPerm]:
    """Elements ``w'`` with ``w' <= w`` and ``length(w') = length(w) - 1``."""
    n = w.length
    return [u for u in _by_length(w.g).get(n - 1, ()) if bruhat_leq(u, w)]


@lru_cache(maxsize=None)
def _all(g: int) -> tuple[SignedPerm, ...]:
    n = 2 * g
    out = []
    for perm in itertools.permutations(range(1, g + 1)):
        for signs in itertools.product((False, True), repeat=g):
            prefix = [n + 1 - a if flip else a for a, flip in zip(perm, signs)]
            out.append(make_perm(g, prefix))
    out.sort(key=SignedPerm.sort_key)
    return tuple(out)


@lru_cache(maxsize=None)
def _by_length(g: int) -> dict[int, tuple[SignedPerm, ...]]:
    table: dict[int, list[SignedPerm]] = {}
    for w in _all(g):
        table.setdefault(w.length, []).append(w)
    return {k: tuple(v) for k, v in table.items()}


def enumerate_weyl(g: int, which: str = "all") -> list[SignedPerm]:
    """Elements of W_g ordered by (length, prefix).

    ``which`` is ``"all"``, ``"final"`` (increasing prefix) or ``"admissible"``
    (``w(i) <= g+i`` for all ``i <= g``).
    """
    if g < 1:
        raise ValueError("g must be positive")
    if which == "all":
        return list(_all(g))
    if which == "final":
        out = []
        for chosen in itertools.combinations(range(1, 2 * g + 1), g):
            if all(2 * g + 1 - a not in chosen for a in chosen):
                out.append(make_perm(g, chosen))
        out.sort(key=SignedPerm.sort_key)
        return out
    if which == "admissible":
        return [w for w in _all(g) if all(w(i) <= g + i for i in range(1, g + 1))]
    raise ValueError(f"unknown filter {which!r}")


def w_empty(g: int) -> SignedPerm:
    """The longest final element ``[g+1, ..., 2g]``."""
    return make_perm(g, range(g + 1, 2 * g + 1))


def longest(g: int) -> SignedPerm:
    return make_perm(g, range(2 * g, g, -1))


def rho_embed(i: int, w: SignedPerm, g: int) -> SignedPerm:
    """Boundary embedding W_{g-i} -> W_g."""
    if not 1 <= i <= g - 1:
        raise ValueError(f"index {i} out of range 1..{g - 1}")
    if w.g != g - i:
        raise ValueError(f"expected an element of W_{g - i}, got W_{w.g}")
    prefix = [i + w(l) for l in range(1, g - i + 1)]
    prefix += [g + l for l in range(g - i + 1, g + 1)]
    return make_perm(g, prefix)


# -- text forms -----------------------------------------------------------------

_PERM = re.compile(r"^\s*\[\s*([0-9,\s]*)\]\s*$")


def parse_perm(text: str, g: int | None = None) -> SignedPerm:
    """Parse ``"[4,2]"``, ``"[4 2]"`` or the compact ``"[42]"`` (single digits).

    A full image list of length ``2g`` is also accepted.
    """
    m = _PERM.match(text)
    if not m:
        raise ValueError(f"malformed permutation {text!r}")
    body = m.group(1).strip()
    if "," in body or " " in body:
        entries = [int(t) for t in re.split(r"[,\s]+", body) if t]
    else:
        entries = [int(ch) for ch in body]
    if g is None:
        g = len(entries)
    if len(entries) == 2 * g:
        return SignedPerm(g, tuple(entries))
    return make_perm(g, entries)


def parse_word(text: str) -> Word:
    """Parse ``"s3 s2"``, ``"s_3s_2"`` or ``"1"``/``"Id"`` (empty word)."""
    t = text.strip()
    if t in ("", "1", "Id", "id", "e"):
        return ()
    letters = re.findall(r"s_?\{?(\d+)\}?", t)
    if not letters or re.sub(r"s_?\{?\d+\}?|[\s*·]", "", t):
        raise ValueError(f"malformed word {text!r}")
    return tuple(int(x) for x in letters)


def format_word(word: Sequence[int]) -> str:
    if not word:
        return "1"
    return " ".join(f"s{i}" for i in word)


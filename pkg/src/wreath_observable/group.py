"""Arithmetic on the wreath product S_n wr S_2.

Elements are triples ``(sigma, tau, b)`` with ``sigma, tau`` permutations of
``{0..n-1}`` stored as image tuples and ``b`` the block-swap bit.  The product
is fixed by requiring :func:`embed_s2n` to be a homomorphism, with permutations
composed right-to-left (``(p*q)(i) = p(q(i))``).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import InvalidArgumentError

MAX_DEGREE = 8

Perm = tuple[int, ...]


def check_perm(images: Sequence[int]) -> Perm:
    p = tuple(int(i) for i in images)
    if sorted(p) != list(range(len(p))):
        raise InvalidArgumentError(f"not a permutation: {p}")
    return p


def perm_compose(p: Perm, q: Perm) -> Perm:
    """``p o q``: apply ``q`` first."""
    return tuple(p[i] for i in q)


def perm_inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def perm_sign(p: Perm) -> int:
    """+1 for even permutations, -1 for odd (cycle count parity)."""
    seen = [False] * len(p)
    parity = 0
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        parity += length - 1
    return -1 if parity % 2 else 1


def perm_rank(p: Perm) -> int:
    """Lexicographic rank via the Lehmer code."""
    n = len(p)
    r = 0
    remaining = list(range(n))
    for i, x in enumerate(p):
        pos = remaining.index(x)
        r += pos * math.factorial(n - 1 - i)
        remaining.pop(pos)
    return r


def perm_unrank(r: int, n: int) -> Perm:
    remaining = list(range(n))
    out = []
    for i in range(n):
        f = math.factorial(n - 1 - i)
        pos, r = divmod(r, f)
        out.append(remaining.pop(pos))
    return tuple(out)


@dataclass(frozen=True, slots=True)
class WreathElement:
    sigma: Perm
    tau: Perm
    swap_bit: int = 0

    def __post_init__(self):
        if len(self.sigma) != len(self.tau):
            raise InvalidArgumentError("sigma and tau must have the same degree")
        if self.swap_bit not in (0, 1):
            raise InvalidArgumentError(f"swap bit must be 0 or 1, got {self.swap_bit!r}")

    @property
    def n(self) -> int:
        return len(self.sigma)

    @classmethod
    def identity(cls, n: int) -> WreathElement:
        e = tuple(range(n))
        return cls(e, e, 0)

    @classmethod
    def from_images(cls, sigma: Sequence[int], tau: Sequence[int], swap_bit: int = 0) -> WreathElement:
        return cls(check_perm(sigma), check_perm(tau), int(swap_bit))

    def __mul__(self, other: WreathElement) -> WreathElement:
        return compose(self, other)

    def __str__(self) -> str:
        return f"({list(self.sigma)}, {list(self.tau)}, {self.swap_bit})"


def compose(x: WreathElement, y: WreathElement) -> WreathElement:
    """Product ``x*y``; ``y`` acts first under the embedding into S_2n."""
    if x.n != y.n:
        raise InvalidArgumentError(f"degree mismatch: {x.n} vs {y.n}")
    if y.swap_bit == 0:
        return WreathElement(perm_compose(x.sigma, y.sigma), perm_compose(x.tau, y.tau),
                             x.swap_bit ^ y.swap_bit)
    return WreathElement(perm_compose(x.tau, y.sigma), perm_compose(x.sigma, y.tau),
                         x.swap_bit ^ y.swap_bit)


def inverse(x: WreathElement) -> WreathElement:
    if x.swap_bit == 0:
        return WreathElement(perm_inverse(x.sigma), perm_inverse(x.tau), 0)
    # (s, t, 1)^-1 = (t^-1, s^-1, 1)
    return WreathElement(perm_inverse(x.tau), perm_inverse(x.sigma), 1)


def embed_s2n(x: WreathElement) -> Perm:
    """Image tuple of ``x`` acting on the two blocks ``0..n-1`` and ``n..2n-1``."""
    n = x.n
    if x.swap_bit == 0:
        return tuple(x.sigma) + tuple(n + j for j in x.tau)
    return tuple(n + i for i in x.sigma) + tuple(x.tau)


def unembed_s2n(p: Sequence[int]) -> WreathElement:
    """Inverse of :func:`embed_s2n`; rejects permutations outside the image."""
    if len(p) % 2:
        raise InvalidArgumentError("odd degree cannot come from S_n wr S_2")
    n = len(p) // 2
    first, second = p[:n], p[n:]
    if all(v < n for v in first) and all(v >= n for v in second):
        return WreathElement.from_images(first, [v - n for v in second], 0)
    if all(v >= n for v in first) and all(v < n for v in second):
        return WreathElement.from_images([v - n for v in first], second, 1)
    raise InvalidArgumentError("permutation does not preserve the block system")


def is_involutive_swap(x: WreathElement) -> bool:
    return x.swap_bit == 1 and x.tau == perm_inverse(x.sigma)


def involutive_swaps(n: int) -> list[WreathElement]:
    """The n! elements ``(g, g^-1, 1)``, ordered lexicographically by ``g``."""
    if n < 1:
        raise InvalidArgumentError("n must be >= 1")
    return [WreathElement(g, perm_inverse(g), 1) for g in itertools.permutations(range(n))]


class GroupIndexer:
    """Bijection between G = S_n wr S_2 and ``range(2 * (n!)**2)``.

    Order is lexicographic on (b, rank(sigma), rank(tau)), so the identity
    has rank 0.
    """

    def __init__(self, n: int):
        if not 1 <= n <= MAX_DEGREE:
            raise InvalidArgumentError(f"degree must be in 1..{MAX_DEGREE}, got {n}")
        self.n = n
        self.fact = math.factorial(n)
        self.order = 2 * self.fact ** 2

    def __repr__(self) -> str:
        return f"GroupIndexer(n={self.n})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupIndexer) and other.n == self.n

    def __hash__(self) -> int:
        return hash(("GroupIndexer", self.n))

    def rank(self, x: WreathElement) -> int:
        if x.n != self.n:
            raise InvalidArgumentError(f"degree mismatch: {x.n} vs {self.n}")
        return (x.swap_bit * self.fact + perm_rank(x.sigma)) * self.fact + perm_rank(x.tau)

    def unrank(self, i: int) -> WreathElement:
        if not 0 <= i < self.order:
            raise InvalidArgumentError(f"index {i} outside [0, {self.order})")
        rest, t = divmod(int(i), self.fact)
        b, s = divmod(rest, self.fact)
        return WreathElement(perm_unrank(s, self.n), perm_unrank(t, self.n), b)

    def elements(self) -> Iterator[WreathElement]:
        for i in range(self.order):
            yield self.unrank(i)

    def identity(self) -> WreathElement:
        return WreathElement.identity(self.n)


@lru_cache(maxsize=None)
def indexer(n: int) -> GroupIndexer:
    return GroupIndexer(n)


@lru_cache(maxsize=16)
def right_mult_table(n: int, k_rank: int) -> np.ndarray:
    """``table[g] = rank(unrank(g) * k)`` for all g, as a read-only int64 array."""
    ix = indexer(n)
    k = ix.unrank(k_rank)
    table = np.fromiter((ix.rank(compose(g, k)) for g in ix.elements()),
                        dtype=np.int64, count=ix.order)
    table.setflags(write=False)
    return table

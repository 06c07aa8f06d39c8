"""Sparse real-amplitude states on C[G^m] for G = S_n wr S_2.

A basis vector ``|g_1, ..., g_m>`` is indexed by the mixed-radix number whose
digits are ``rank(g_1), ..., rank(g_m)`` (first factor most significant).
Indices are Python ints, so the dimension is not limited to 64 bits here;
the array-backed dictionary code imposes its own int64 bound.

All amplitudes are real: every state and projector involved has
nonnegative real coefficients in the group basis.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import InvalidArgumentError, ResourceLimitError
from .graphs import HiddenSubgroup
from .group import (WreathElement, compose, indexer, involutive_swaps, is_involutive_swap,
                    right_mult_table)

DEFAULT_BUDGET_NNZ = 2 ** 27
ZERO_DROP = 1e-15
# right-multiplication lookups are tabulated up to this degree
TABLE_DEGREE = 4


@dataclass(frozen=True)
class SpaceConfig:
    n: int
    m: int
    budget_nnz: int = DEFAULT_BUDGET_NNZ

    def __post_init__(self):
        indexer(self.n)  # validates the degree
        if self.m < 1:
            raise InvalidArgumentError(f"m must be >= 1, got {self.m}")
        if self.budget_nnz < 1:
            raise InvalidArgumentError("budget must be positive")

    @property
    def group_order(self) -> int:
        return 2 * math.factorial(self.n) ** 2

    @property
    def dimension(self) -> int:
        return self.group_order ** self.m

    @property
    def swap_count(self) -> int:
        return math.factorial(self.n)

    @property
    def kspace_dim(self) -> int:
        """dim H(k) = (|G|/2)^m for every involutive swap k."""
        return (self.group_order // 2) ** self.m

    @property
    def dim_bound(self) -> int:
        """Upper bound n! (|G|/2)^m on dim H_1; also the full dictionary size."""
        return self.swap_count * self.kspace_dim

    @property
    def dictionary_nnz(self) -> int:
        return self.dim_bound * 2 ** self.m

    def encode(self, ranks: Sequence[int]) -> int:
        if len(ranks) != self.m:
            raise InvalidArgumentError(f"expected {self.m} digits, got {len(ranks)}")
        idx = 0
        for r in ranks:
            if not 0 <= r < self.group_order:
                raise InvalidArgumentError(f"digit {r} outside [0, {self.group_order})")
            idx = idx * self.group_order + r
        return idx

    def decode(self, idx: int) -> tuple[int, ...]:
        if not 0 <= idx < self.dimension:
            raise InvalidArgumentError(f"basis index {idx} outside [0, {self.dimension})")
        digits = []
        for _ in range(self.m):
            idx, r = divmod(idx, self.group_order)
            digits.append(r)
        return tuple(reversed(digits))


class SparseState:
    """Finitely supported real vector over the basis of C[G^m].

    Immutable after construction; amplitudes below 1e-15 in magnitude are
    dropped.
    """

    __slots__ = ("n", "m", "_amps")

    def __init__(self, n: int, m: int, amplitudes: Mapping[int, float] | Iterable[tuple[int, float]]):
        self.n = n
        self.m = m
        items = amplitudes.items() if isinstance(amplitudes, Mapping) else amplitudes
        self._amps = {int(i): float(a) for i, a in items if abs(a) >= ZERO_DROP}

    @property
    def config(self) -> SpaceConfig:
        return SpaceConfig(self.n, self.m)

    def __len__(self) -> int:
        return len(self._amps)

    def __getitem__(self, idx: int) -> float:
        return self._amps.get(idx, 0.0)

    def items(self):
        return self._amps.items()

    def support(self) -> set[int]:
        return set(self._amps)

    def norm_squared(self) -> float:
        return math.fsum(a * a for a in self._amps.values())

    def norm(self) -> float:
        return math.sqrt(self.norm_squared())

    def is_normalized(self, tol: float = 1e-12) -> bool:
        return abs(self.norm_squared() - 1.0) <= tol

    def normalized(self) -> SparseState:
        nrm = self.norm()
        if nrm == 0:
            raise InvalidArgumentError("cannot normalize the zero vector")
        return SparseState(self.n, self.m, {i: a / nrm for i, a in self._amps.items()})

    def inner(self, other: SparseState) -> float:
        self._check_space(other)
        small, big = (self, other) if len(self) <= len(other) else (other, self)
        return math.fsum(a * big._amps[i] for i, a in small._amps.items() if i in big._amps)

    def __add__(self, other: SparseState) -> SparseState:
        self._check_space(other)
        out = dict(self._amps)
        for i, a in other._amps.items():
            out[i] = out.get(i, 0.0) + a
        return SparseState(self.n, self.m, out)

    def __sub__(self, other: SparseState) -> SparseState:
        return self + other.scaled(-1.0)

    def scaled(self, c: float) -> SparseState:
        return SparseState(self.n, self.m, {i: c * a for i, a in self._amps.items()})

    def allclose(self, other: SparseState, atol: float = 1e-12) -> bool:
        self._check_space(other)
        keys = self._amps.keys() | other._amps.keys()
        return all(abs(self[i] - other[i]) <= atol for i in keys)

    def to_dense(self) -> np.ndarray:
        dim = self.config.dimension
        if dim > 2 ** 62:
            raise ResourceLimitError(f"dimension {dim} does not fit a dense int64-indexed array")
        v = np.zeros(dim)
        if self._amps:
            idx = np.fromiter(self._amps.keys(), dtype=np.int64, count=len(self._amps))
            v[idx] = np.fromiter(self._amps.values(), dtype=float, count=len(self._amps))
        return v

    @classmethod
    def from_dense(cls, n: int, m: int, vector: np.ndarray) -> SparseState:
        nz = np.flatnonzero(np.abs(vector) >= ZERO_DROP)
        return cls(n, m, zip(nz.tolist(), vector[nz].tolist()))

    @classmethod
    def basis(cls, n: int, elements: Sequence[WreathElement]) -> SparseState:
        ix = indexer(n)
        cfg = SpaceConfig(n, len(elements))
        return cls(n, len(elements), {cfg.encode([ix.rank(g) for g in elements]): 1.0})

    def _check_space(self, other: SparseState) -> None:
        if (self.n, self.m) != (other.n, other.m):
            raise InvalidArgumentError(f"states live in different spaces: "
                                       f"(n={self.n}, m={self.m}) vs (n={other.n}, m={other.m})")

    def __repr__(self) -> str:
        return f"SparseState(n={self.n}, m={self.m}, nnz={len(self)})"


def uniform_superposition(elements: Sequence[WreathElement]) -> SparseState:
    """|X> = |X|^-1/2 sum_x |x>, a single-factor (m=1) state."""
    if not elements:
        raise InvalidArgumentError("X must be non-empty")
    n = elements[0].n
    ix = indexer(n)
    ranks = [ix.rank(x) for x in elements]
    if len(set(ranks)) != len(ranks):
        raise InvalidArgumentError("X contains duplicate elements")
    amp = 1.0 / math.sqrt(len(ranks))
    return SparseState(n, 1, {r: amp for r in ranks})


def coset_state(c: WreathElement, h: HiddenSubgroup) -> SparseState:
    """Uniform superposition over the left coset cH."""
    return uniform_superposition([compose(c, x) for x in h.elements])


def tensor_product(factors: Sequence[SparseState], budget_nnz: int = DEFAULT_BUDGET_NNZ) -> SparseState:
    if not factors:
        raise InvalidArgumentError("need at least one factor")
    n = factors[0].n
    if any(f.n != n for f in factors):
        raise InvalidArgumentError("factors over different groups")
    size = math.prod(len(f) for f in factors)
    if size > budget_nnz:
        raise ResourceLimitError(f"tensor product support {size} exceeds budget_nnz={budget_nnz}")
    out: dict[int, float] = {0: 1.0}
    for f in factors:
        radix = f.config.dimension
        out = {i * radix + j: a * b for i, a in out.items() for j, b in f.items()}
    return SparseState(n, sum(f.m for f in factors), out)


@dataclass(frozen=True)
class KVectorId:
    """One k-vector: swap index into ``involutive_swaps(n)`` plus canonical coset labels.

    Each label is the smaller rank of the pair ``{c, c*k}``.
    """
    swap_rank: int
    coset_labels: tuple[int, ...]


def right_mult(n: int, k: WreathElement):
    """Callable ``rank -> rank(unrank(rank) * k)``."""
    ix = indexer(n)
    if n <= TABLE_DEGREE:
        table = right_mult_table(n, ix.rank(k))
        return lambda r: int(table[r])
    return _cached_right_mult(n, k)


@lru_cache(maxsize=64)
def _cached_right_mult(n: int, k: WreathElement):
    ix = indexer(n)

    @lru_cache(maxsize=1 << 16)
    def apply(r: int) -> int:
        return ix.rank(compose(ix.unrank(r), k))

    return apply


def _swap(n: int, swap_rank: int) -> WreathElement:
    swaps = involutive_swaps(n)
    if not 0 <= swap_rank < len(swaps):
        raise InvalidArgumentError(f"swap index {swap_rank} outside [0, {len(swaps)})")
    return swaps[swap_rank]


def k_vector(kid: KVectorId, cfg: SpaceConfig) -> SparseState:
    if len(kid.coset_labels) != cfg.m:
        raise InvalidArgumentError(f"expected {cfg.m} labels, got {len(kid.coset_labels)}")
    k = _swap(cfg.n, kid.swap_rank)
    rk = right_mult(cfg.n, k)
    pairs = []
    for label in kid.coset_labels:
        if not 0 <= label < cfg.group_order:
            raise InvalidArgumentError(f"label {label} outside the group")
        other = rk(label)
        if other < label:
            raise InvalidArgumentError(f"label {label} is not canonical (partner {other} is smaller)")
        pairs.append((label, other))
    amp = 2.0 ** (-cfg.m / 2)
    return SparseState(cfg.n, cfg.m, {cfg.encode(digits): amp for digits in itertools.product(*pairs)})


def apply_right_mult(psi: SparseState, k: WreathElement, positions: Iterable[int]) -> SparseState:
    """Right-multiply the factors at ``positions`` (0-based) by ``k``."""
    positions = frozenset(positions)
    if any(not 0 <= p < psi.m for p in positions):
        raise InvalidArgumentError(f"positions must lie in 0..{psi.m - 1}")
    if not positions:
        return psi
    cfg = psi.config
    rk = right_mult(psi.n, k)
    out = {}
    for idx, a in psi.items():
        digits = cfg.decode(idx)
        out[cfg.encode([rk(d) if i in positions else d for i, d in enumerate(digits)])] = a
    return SparseState(psi.n, psi.m, out)


def swap_projector_apply(psi: SparseState, k: WreathElement) -> SparseState:
    """P(k) psi = 2^-m sum over subsets S of the right-multiplied copies."""
    if not is_involutive_swap(k):
        raise InvalidArgumentError(f"{k} is not an involutive swap")
    acc: dict[int, float] = {}
    for subset in _subsets(psi.m):
        for idx, a in apply_right_mult(psi, k, subset).items():
            acc[idx] = acc.get(idx, 0.0) + a
    scale = 2.0 ** -psi.m
    return SparseState(psi.n, psi.m, {i: scale * a for i, a in acc.items()})


def _subsets(m: int) -> Iterator[tuple[int, ...]]:
    for r in range(m + 1):
        yield from itertools.combinations(range(m), r)


def explicit_swap_expectation(psi: SparseState, k: WreathElement) -> float:
    """<psi|P(k)|psi> / <psi|psi> by explicit sparse arithmetic."""
    return psi.inner(swap_projector_apply(psi, k)) / psi.norm_squared()


def coset_overlap(c: WreathElement, h: HiddenSubgroup, k: WreathElement) -> float:
    """<cH|cHk>: the sets cH and cHk coincide when k is in H and are disjoint otherwise."""
    return 1.0 if k in h else 0.0


def swap_expectation(reps: Sequence[WreathElement], h: HiddenSubgroup, k: WreathElement) -> float:
    """Closed form of <psi|P(k)|psi> for psi = |c_1 H> x ... x |c_m H>.

    Each factor contributes (1 + <c_i H|c_i H k>) / 2.
    """
    if not is_involutive_swap(k):
        raise InvalidArgumentError(f"{k} is not an involutive swap")
    return math.prod((1.0 + coset_overlap(c, h, k)) / 2.0 for c in reps)


def canonical_reps(n: int, swap_rank: int) -> list[int]:
    """Sorted ranks g with g < rank(g*k); one per two-element coset {g, gk}."""
    rk = right_mult(n, _swap(n, swap_rank))
    return [g for g in range(indexer(n).order) if g < rk(g)]


def enumerate_k_vectors(cfg: SpaceConfig, swap_rank: int | None = None) -> Iterator[KVectorId]:
    """Stream canonical k-vector ids, swap by swap, labels in lexicographic order.

    This order matches the column order of :class:`KVectorDictionary`.
    """
    swap_ranks = range(cfg.swap_count) if swap_rank is None else [swap_rank]
    total = len(swap_ranks) * cfg.kspace_dim
    if total * 2 ** cfg.m > cfg.budget_nnz:
        raise ResourceLimitError(f"dictionary of {total} k-vectors exceeds budget_nnz={cfg.budget_nnz}")
    for s in swap_ranks:
        reps = canonical_reps(cfg.n, s)
        for labels in itertools.product(reps, repeat=cfg.m):
            yield KVectorId(s, labels)

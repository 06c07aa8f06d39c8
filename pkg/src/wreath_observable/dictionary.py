"""Matrix-free access to the k-vector dictionary B.

Columns are the canonical k-vectors in :func:`enumerate_k_vectors` order and
hold ``2**-m/2`` on their ``2**m`` rows.  Only two small per-swap tables are
stored; every pass regenerates rows on the fly.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from . import kernels
from .errors import InvalidArgumentError, ResourceLimitError
from .group import indexer, involutive_swaps
from .states import SpaceConfig, canonical_reps, right_mult

INDEX_LIMIT = 2 ** 62


@lru_cache(maxsize=64)
def _swap_tables(n: int, swap_rank: int) -> tuple[np.ndarray, np.ndarray]:
    lo = np.asarray(canonical_reps(n, swap_rank), dtype=np.int64)
    rk = right_mult(n, involutive_swaps(n)[swap_rank])
    hi = np.fromiter((rk(int(g)) for g in lo), dtype=np.int64, count=lo.size)
    return lo, hi


class KVectorDictionary:
    """The dictionary restricted to ``swaps`` (default: all n! swaps)."""

    def __init__(self, cfg: SpaceConfig, swaps: Sequence[int] | None = None, backend: str | None = None):
        self.cfg = cfg
        self.swaps = tuple(range(cfg.swap_count)) if swaps is None else tuple(swaps)
        if not self.swaps or any(not 0 <= s < cfg.swap_count for s in self.swaps):
            raise InvalidArgumentError(f"swap indices must lie in 0..{cfg.swap_count - 1}")
        self.n_columns = len(self.swaps) * cfg.kspace_dim
        self.nnz = self.n_columns * 2 ** cfg.m
        if self.nnz > cfg.budget_nnz:
            raise ResourceLimitError(
                f"dictionary has {self.nnz} nonzeros (n={cfg.n}, m={cfg.m}), "
                f"over budget_nnz={cfg.budget_nnz}")
        if cfg.dimension > INDEX_LIMIT:
            raise ResourceLimitError(f"dimension {cfg.dimension} exceeds int64 indexing")
        self.dimension = cfg.dimension
        self.scale = 2.0 ** (-cfg.m / 2)
        tables = [_swap_tables(cfg.n, s) for s in self.swaps]
        self.lo = np.ascontiguousarray(np.stack([t[0] for t in tables]))
        self.hi = np.ascontiguousarray(np.stack([t[1] for t in tables]))
        self._kern = kernels._impl if backend is None else kernels.load_backend(backend)

    @property
    def shape(self) -> tuple[int, int]:
        return self.dimension, self.n_columns

    def matvec(self, x: np.ndarray) -> np.ndarray:
        x = np.ascontiguousarray(x, dtype=np.float64)
        out = np.zeros(self.dimension)
        self._kern.dictionary_matvec(self.lo, self.hi, self.cfg.m, indexer(self.cfg.n).order,
                                     self.scale, x, out)
        return out

    def rmatvec(self, y: np.ndarray) -> np.ndarray:
        y = np.ascontiguousarray(y, dtype=np.float64)
        out = np.empty(self.n_columns)
        self._kern.dictionary_rmatvec(self.lo, self.hi, self.cfg.m, indexer(self.cfg.n).order,
                                      self.scale, y, out)
        return out

    def rows(self) -> np.ndarray:
        """Row indices per column, shape ``(n_columns, 2**m)``."""
        return self._kern.dictionary_rows(self.lo, self.hi, self.cfg.m, indexer(self.cfg.n).order)

    def to_dense(self) -> np.ndarray:
        b = np.zeros(self.shape)
        rows = self.rows()
        b[rows, np.arange(self.n_columns)[:, None]] = self.scale
        return b

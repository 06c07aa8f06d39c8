"""p1 = <psi|P_1|psi>: squared norm of the projection onto H_1 = sum_k H(k).

Three independent routes:

* ``exact``  - rational normal equations on the 0/1 dictionary (tiny sizes,
  ground truth);
* ``dense``  - SVD of the materialized dictionary, which also measures
  dim H_1 as a numerical rank;
* ``lsq``    - matrix-free LSQR over streaming dictionary passes.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .dictionary import KVectorDictionary
from .errors import InvalidArgumentError, ResourceLimitError
from .exact import solve_consistent
from .graphs import HiddenSubgroup
from .group import WreathElement, involutive_swaps
from .lsqr import lsqr
from .states import SparseState, SpaceConfig, swap_expectation

EXACT_MAX_COLUMNS = 512
DENSE_MAX_DIMENSION = 10_000
DENSE_MAX_COLUMNS = 10_000
# "auto" only picks the dense route below this many matrix entries (SVD cost)
AUTO_DENSE_MAX_ENTRIES = 1 << 22
RANK_RTOL = 1e-10
PROB_TOL = 1e-9


class ProjectionMethod(str, enum.Enum):
    EXACT = "exact-rational"
    DENSE = "dense-orthonormal"
    LSQ = "dictionary-least-squares"

    @classmethod
    def parse(cls, name: str) -> ProjectionMethod | None:
        """CLI names: exact, dense, lsq; ``auto`` maps to None."""
        aliases = {"exact": cls.EXACT, "dense": cls.DENSE, "lsq": cls.LSQ, "auto": None}
        if name in aliases:
            return aliases[name]
        return cls(name)


@dataclass
class ProjectionReport:
    p1: float
    method: ProjectionMethod
    residual_norm: float
    iterations: int
    dictionary_size: int
    dim_bound: int
    converged: bool = True
    rank: int | None = None
    exact: Fraction | None = None
    gradient_ratio: float | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def p0(self) -> float:
        return 1.0 - self.p1

    @property
    def is_lower_bound(self) -> bool:
        """Unconverged least-squares results only bound p1 from below."""
        return not self.converged


def _state_vector(psi: SparseState | np.ndarray, cfg: SpaceConfig) -> np.ndarray:
    if isinstance(psi, SparseState):
        if (psi.n, psi.m) != (cfg.n, cfg.m):
            raise InvalidArgumentError("state does not live in the configured space")
        return psi.to_dense()
    v = np.asarray(psi, dtype=float)
    if v.shape != (cfg.dimension,):
        raise InvalidArgumentError(f"expected a vector of length {cfg.dimension}")
    return v


def exact_weights(psi: SparseState | Mapping[int, int | Fraction]) -> dict[int, Fraction]:
    """Exact entries for the rational route.

    Mappings are taken as exact rationals.  A :class:`SparseState` is accepted
    when its amplitudes take a single magnitude (coset states, k-vectors,
    basis states), in which case it is rescaled to +-1 entries.
    """
    if isinstance(psi, SparseState):
        mags = {abs(a) for _, a in psi.items()}
        if not mags:
            raise InvalidArgumentError("zero state")
        top = max(mags)
        if any(abs(mg - top) > 1e-12 * top for mg in mags):
            raise InvalidArgumentError("state amplitudes are not a common magnitude; pass exact weights")
        return {i: Fraction(1 if a > 0 else -1) for i, a in psi.items()}
    return {int(i): Fraction(w) for i, w in psi.items() if w}


def p1_exact_rational(psi: SparseState | Mapping[int, int | Fraction], cfg: SpaceConfig,
                      swaps: Sequence[int] | None = None) -> Fraction:
    """Exact p1 as a Fraction from the normal equations of the 0/1 dictionary.

    Any solution ``x`` of ``B^T B x = B^T psi`` gives ``B x = P_1 psi``, so
    ``p1 = x . B^T psi / ||psi||^2`` regardless of which solution is found.
    """
    weights = exact_weights(psi)
    if not weights:
        raise InvalidArgumentError("zero state")
    if any(not 0 <= i < cfg.dimension for i in weights):
        raise InvalidArgumentError("weight index outside the space")
    scale = math.lcm(*(w.denominator for w in weights.values()))
    ints = {i: int(w * scale) for i, w in weights.items()}
    d = KVectorDictionary(cfg, swaps)
    if d.n_columns > EXACT_MAX_COLUMNS:
        raise ResourceLimitError(f"exact route limited to {EXACT_MAX_COLUMNS} columns, "
                                 f"dictionary has {d.n_columns}")
    cols = [frozenset(r) for r in d.rows().tolist()]
    load = [sum(ints.get(r, 0) for r in col) for col in cols]
    gram = [[len(ci & cj) for cj in cols] for ci in cols]
    x = solve_consistent(gram, load)
    numerator = sum((xi * li for xi, li in zip(x, load) if li), Fraction(0))
    return numerator / sum(v * v for v in ints.values())


def exact_report(psi, cfg: SpaceConfig, swaps: Sequence[int] | None = None) -> ProjectionReport:
    value = p1_exact_rational(psi, cfg, swaps)
    n_columns = len(swaps or range(cfg.swap_count)) * cfg.kspace_dim
    return ProjectionReport(p1=float(value), method=ProjectionMethod.EXACT,
                            residual_norm=math.sqrt(float(1 - value)), iterations=0,
                            dictionary_size=n_columns, dim_bound=cfg.dim_bound, exact=value,
                            notes=["residual_norm relative to ||psi||"])


def p1_dense(psi: SparseState | np.ndarray, cfg: SpaceConfig,
             swaps: Sequence[int] | None = None) -> ProjectionReport:
    """Orthonormal basis of span(B) from an SVD; ``rank`` is the measured dim H_1."""
    if cfg.dimension > DENSE_MAX_DIMENSION:
        raise ResourceLimitError(f"dense route limited to dimension {DENSE_MAX_DIMENSION}, "
                                 f"space has {cfg.dimension}")
    d = KVectorDictionary(cfg, swaps)
    if d.n_columns > DENSE_MAX_COLUMNS:
        raise ResourceLimitError(f"dense route limited to {DENSE_MAX_COLUMNS} columns, "
                                 f"dictionary has {d.n_columns}")
    v = _state_vector(psi, cfg)
    q, rank = orthonormal_range(d.to_dense())
    coeff = q.T @ v
    nrm2 = float(v @ v)
    p1 = float(coeff @ coeff) / nrm2
    residual = float(np.linalg.norm(v - q @ coeff)) / math.sqrt(nrm2)
    return ProjectionReport(p1=p1, method=ProjectionMethod.DENSE, residual_norm=residual,
                            iterations=0, dictionary_size=d.n_columns, dim_bound=cfg.dim_bound,
                            rank=rank)


def orthonormal_range(b: np.ndarray, rtol: float = RANK_RTOL) -> tuple[np.ndarray, int]:
    u, s, _ = np.linalg.svd(b, full_matrices=False)
    if s.size == 0 or s[0] == 0:
        return u[:, :0], 0
    rank = int(np.count_nonzero(s > rtol * s[0]))
    return u[:, :rank], rank


def numerical_rank(cfg: SpaceConfig, swaps: Sequence[int] | None = None, rtol: float = RANK_RTOL) -> int:
    d = KVectorDictionary(cfg, swaps)
    s = np.linalg.svd(d.to_dense(), compute_uv=False)
    return int(np.count_nonzero(s > rtol * s[0])) if s.size else 0


def p1_least_squares(psi: SparseState | np.ndarray, cfg: SpaceConfig, tol: float = 1e-10,
                     max_iters: int | None = None, swaps: Sequence[int] | None = None,
                     backend: str | None = None) -> ProjectionReport:
    """Streaming LSQR on ``min ||B x - psi||``; p1 = 1 - ||r||^2 / ||psi||^2.

    The residual is recomputed explicitly from the returned ``x``, so an
    unconverged run still yields a valid lower bound on p1.
    """
    d = KVectorDictionary(cfg, swaps, backend=backend)
    v = _state_vector(psi, cfg)
    if max_iters is None:
        max_iters = max(1, int(20 * math.sqrt(d.n_columns)))
    res = lsqr(d.matvec, d.rmatvec, v, d.n_columns, tol=tol, max_iters=max_iters)
    r = v - d.matvec(res.x)
    nrm2 = float(v @ v)
    rr = float(r @ r)
    p1 = max(0.0, 1.0 - rr / nrm2)
    report = ProjectionReport(p1=p1, method=ProjectionMethod.LSQ, residual_norm=math.sqrt(rr / nrm2),
                              iterations=res.iterations, dictionary_size=d.n_columns,
                              dim_bound=cfg.dim_bound, converged=res.converged,
                              gradient_ratio=res.gradient_ratio, notes=[res.stop_reason])
    if not res.converged:
        report.notes.append("not converged: p1 is a lower bound")
    return report


def in_guard(method: ProjectionMethod, cfg: SpaceConfig, auto: bool = False) -> bool:
    columns = cfg.dim_bound
    if method is ProjectionMethod.EXACT:
        return columns <= EXACT_MAX_COLUMNS
    if method is ProjectionMethod.DENSE:
        ok = cfg.dimension <= DENSE_MAX_DIMENSION and columns <= DENSE_MAX_COLUMNS
        return ok and (not auto or cfg.dimension * columns <= AUTO_DENSE_MAX_ENTRIES)
    return cfg.dictionary_nnz <= cfg.budget_nnz and cfg.dimension <= 2 ** 62


def select_method(cfg: SpaceConfig) -> ProjectionMethod:
    """Strongest in-guard method: exact, then dense, then least squares."""
    for method in ProjectionMethod:
        if in_guard(method, cfg, auto=True):
            return method
    raise ResourceLimitError(
        f"no method fits (n={cfg.n}, m={cfg.m}): dictionary needs {cfg.dictionary_nnz} nonzeros, "
        f"budget_nnz={cfg.budget_nnz}")


def compute_p1(psi: SparseState, cfg: SpaceConfig, method: ProjectionMethod | None = None,
               tol: float = 1e-10) -> ProjectionReport:
    method = select_method(cfg) if method is None else method
    if method is ProjectionMethod.EXACT:
        return exact_report(psi, cfg)
    if method is ProjectionMethod.DENSE:
        return p1_dense(psi, cfg)
    return p1_least_squares(psi, cfg, tol=tol)


@dataclass(frozen=True)
class UnionBound:
    total: float
    largest: float
    per_swap: tuple[float, ...]


def union_bound_check(reps: Sequence[WreathElement], h: HiddenSubgroup, cfg: SpaceConfig) -> UnionBound:
    """Sum and max over all swaps of the closed-form <psi|P(k)|psi>."""
    values = tuple(swap_expectation(reps, h, k) for k in involutive_swaps(cfg.n))
    return UnionBound(math.fsum(values), max(values), values)


def check_sandwich(report: ProjectionReport, bound: UnionBound, tol: float = PROB_TOL) -> None:
    """max_k <P(k)> <= p1 <= sum_k <P(k)>; a breach is an implementation bug."""
    if report.p1 > bound.total + tol:
        raise AssertionError(f"p1={report.p1!r} exceeds the union bound {bound.total!r}")
    if report.converged and report.p1 < bound.largest - tol:
        raise AssertionError(f"p1={report.p1!r} below the largest single-swap value {bound.largest!r}")

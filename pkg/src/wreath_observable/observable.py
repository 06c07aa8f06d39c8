"""The two-outcome observable L = lambda0 P0 + lambda1 P1 and repeated-trial decisions.

A trial prepares psi = |c_1 H> x ... x |c_m H> from uniformly random
representatives, computes p1 = <psi|P1|psi> exactly (up to the chosen
numerical method) and simulates one measurement.  Trials are independent
simulated measurements on freshly prepared states; the multi-trial protocol
("isomorphic iff some trial returns lambda1") is harness plumbing.
"""
from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InvalidArgumentError, TheoremViolationError
from .graphs import GraphPair, HiddenSubgroup, build_hidden_subgroup, contains_involutive_swap
from .group import WreathElement, indexer
from .projector import (PROB_TOL, ProjectionMethod, ProjectionReport, UnionBound, check_sandwich,
                        compute_p1, union_bound_check)
from .states import DEFAULT_BUDGET_NNZ, SpaceConfig, SparseState, coset_state, tensor_product


@dataclass(frozen=True)
class ObservableSpec:
    m: int
    lambda0: float = 0.0
    lambda1: float = 1.0

    def __post_init__(self):
        if self.lambda0 == self.lambda1:
            raise InvalidArgumentError("lambda0 and lambda1 must differ")
        if self.m < 1:
            raise InvalidArgumentError("m must be >= 1")


class Decision(str, enum.Enum):
    ISOMORPHIC = "isomorphic"
    NOT_ISOMORPHIC = "not-isomorphic"
    TRIVIALLY_NONISOMORPHIC = "trivially-nonisomorphic"


def error_bound(n: int, m: int) -> float:
    """n!/2^m: the per-trial chance of outcome lambda1 on nonisomorphic input is at most this."""
    return math.factorial(n) / 2.0 ** m


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed, trial])


def sample_coset_reps(cfg: SpaceConfig, rng: np.random.Generator | int) -> list[WreathElement]:
    """m independent uniform elements of G (unrank of a uniform integer)."""
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    ix = indexer(cfg.n)
    return [ix.unrank(int(r)) for r in rng.integers(0, ix.order, size=cfg.m)]


def prepare_psi(reps: Sequence[WreathElement], h: HiddenSubgroup, cfg: SpaceConfig) -> SparseState:
    if len(reps) != cfg.m:
        raise InvalidArgumentError(f"need {cfg.m} representatives, got {len(reps)}")
    return tensor_product([coset_state(c, h) for c in reps], budget_nnz=cfg.budget_nnz)


@dataclass
class OutcomeDistribution:
    p0: float
    p1: float
    bound: float
    contains_swap: bool
    report: ProjectionReport
    union: UnionBound


class ConvergenceError(RuntimeError):
    """An unconverged lower bound on p1 was too weak to check the theorems."""


def outcome_distribution(pair: GraphPair, m: int, reps: Sequence[WreathElement],
                         method: ProjectionMethod | None = None, h: HiddenSubgroup | None = None,
                         budget_nnz: int = DEFAULT_BUDGET_NNZ, tol: float = 1e-10) -> OutcomeDistribution:
    """Outcome probabilities of L on the coset-state tensor, checked against both theorems.

    Isomorphic input must give p1 = 1 and nonisomorphic input p1 <= n!/2^m
    (both to 1e-9); a breach raises :class:`TheoremViolationError`.
    """
    if not pair.simulable:
        raise InvalidArgumentError("trivially nonisomorphic pairs are decided without simulation")
    cfg = SpaceConfig(pair.n, m, budget_nnz)
    h = build_hidden_subgroup(pair) if h is None else h
    psi = prepare_psi(reps, h, cfg)
    report = compute_p1(psi, cfg, method, tol=tol)
    union = union_bound_check(reps, h, cfg)
    iso = contains_involutive_swap(h)
    bound = error_bound(cfg.n, m)
    if iso and report.p1 < 1.0 - PROB_TOL:
        if not report.converged:
            raise ConvergenceError(f"least squares stopped at p1 >= {report.p1!r} without converging")
        raise TheoremViolationError(f"isomorphic input but p1={report.p1!r} < 1")
    if not iso and report.p1 > bound + PROB_TOL:
        raise TheoremViolationError(f"nonisomorphic input but p1={report.p1!r} > n!/2^m={bound!r}")
    try:
        check_sandwich(report, union)
    except AssertionError as exc:
        raise TheoremViolationError(str(exc)) from None
    return OutcomeDistribution(p0=1.0 - report.p1, p1=report.p1, bound=bound, contains_swap=iso,
                               report=report, union=union)


@dataclass
class TrialRecord:
    index: int
    reps: list[int]
    p1: float
    outcome: float


@dataclass
class DecisionReport:
    n: int
    m: int
    decision: Decision
    bound: float
    seed: int
    method: str
    trials: list[TrialRecord] = field(default_factory=list)
    lambda0: float = 0.0
    lambda1: float = 1.0
    runtime: float = 0.0

    @property
    def p1(self) -> float | None:
        """Largest per-trial p1 (None when nothing was simulated)."""
        return max((t.p1 for t in self.trials), default=None)

    @property
    def outcome_samples(self) -> dict[str, int]:
        ones = sum(t.outcome == self.lambda1 for t in self.trials)
        return {"lambda0": len(self.trials) - ones, "lambda1": ones}

    @property
    def coset_reps(self) -> list[list[int]]:
        return [t.reps for t in self.trials]


def decide(pair: GraphPair, m: int, trials: int = 1, seed: int = 0,
           method: ProjectionMethod | None = None, spec: ObservableSpec | None = None,
           budget_nnz: int = DEFAULT_BUDGET_NNZ, tol: float = 1e-10) -> DecisionReport:
    """Run ``trials`` independent preparations and measurements of L.

    Trial ``t`` draws its representatives and its measurement from
    ``default_rng([seed, t])``.  The answer is "isomorphic" iff some trial
    measured lambda1.
    """
    if trials < 1:
        raise InvalidArgumentError("trials must be >= 1")
    spec = ObservableSpec(m) if spec is None else spec
    start = time.perf_counter()
    report = DecisionReport(n=pair.n, m=m, decision=Decision.TRIVIALLY_NONISOMORPHIC,
                            bound=error_bound(pair.n, m), seed=seed, method="none",
                            lambda0=spec.lambda0, lambda1=spec.lambda1)
    if not pair.simulable:
        report.runtime = time.perf_counter() - start
        return report
    cfg = SpaceConfig(pair.n, m, budget_nnz)
    h = build_hidden_subgroup(pair)
    ix = indexer(pair.n)
    for t in range(trials):
        rng = trial_rng(seed, t)
        reps = sample_coset_reps(cfg, rng)
        dist = outcome_distribution(pair, m, reps, method=method, h=h, budget_nnz=budget_nnz, tol=tol)
        report.method = dist.report.method.value
        outcome = spec.lambda1 if rng.random() < dist.p1 else spec.lambda0
        report.trials.append(TrialRecord(t, [ix.rank(c) for c in reps], dist.p1, outcome))
    hit = any(tr.outcome == spec.lambda1 for tr in report.trials)
    report.decision = Decision.ISOMORPHIC if hit else Decision.NOT_ISOMORPHIC
    report.runtime = time.perf_counter() - start
    return report

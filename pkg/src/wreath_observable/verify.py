"""Batch verification suites, shared by ``wreath-observable verify`` and the test suite.

Every suite returns a :class:`SuiteResult` holding one :class:`Check` per
criterion, each with the measured values in its detail string.
"""
from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .fixtures import load_fixture
from .gprime import gprime_predicate, verify_characterization
from .graphs import (Graph, automorphisms, build_hidden_subgroup, contains_involutive_swap,
                     isomorphisms, normalize_pair)
from .group import (WreathElement, compose, embed_s2n, indexer, involutive_swaps, inverse,
                    perm_compose, unembed_s2n)
from .observable import (error_bound, decide, outcome_distribution, prepare_psi,
                         sample_coset_reps)
from .projector import (PROB_TOL, ProjectionMethod, exact_report, numerical_rank, p1_dense,
                        p1_exact_rational, p1_least_squares, union_bound_check)
from .states import (DEFAULT_BUDGET_NNZ, SpaceConfig, SparseState, enumerate_k_vectors,
                     explicit_swap_expectation, swap_expectation)

AGREEMENT_TOL = 1e-8
ALGEBRA_TOL = 1e-12


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


@dataclass
class SuiteResult:
    suite: str
    checks: list[Check] = field(default_factory=list)
    runtime: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> Check:
        check = Check(name, bool(passed), detail)
        self.checks.append(check)
        return check

    def lines(self) -> list[str]:
        return [f"[{self.suite}] {c.line()}" for c in self.checks]


def _timed(suite: str, body: Callable[[SuiteResult], None]) -> SuiteResult:
    result = SuiteResult(suite)
    start = time.perf_counter()
    body(result)
    result.runtime = time.perf_counter() - start
    return result


def random_connected_graph(n: int, rng: random.Random) -> Graph:
    all_edges = list(itertools.combinations(range(n), 2))
    while True:
        g = Graph.from_edges(n, [e for e in all_edges if rng.random() < 0.5])
        if g.is_connected():
            return g


def random_relabeling(g: Graph, rng: random.Random) -> Graph:
    p = list(range(g.n))
    rng.shuffle(p)
    return g.relabel(tuple(p))


# -- criterion 1 -----------------------------------------------------------

ISOMORPHIC_PLAN = ((3, 1, 4), (3, 2, 4), (3, 3, 4), (4, 1, 8))  # (n, m, pairs)


def isomorphic_suite(seed: int = 1, draws: int = 5, plan=ISOMORPHIC_PLAN,
                   budget_nnz: int = DEFAULT_BUDGET_NNZ) -> SuiteResult:
    def body(res: SuiteResult) -> None:
        rng = random.Random(seed)
        worst = math.inf
        count = 0
        for n, m, pairs in plan:
            for j in range(pairs):
                g1 = random_connected_graph(n, rng)
                g2 = random_relabeling(g1, rng)
                pair = normalize_pair(g1, g2)
                h = build_hidden_subgroup(pair)
                cfg = SpaceConfig(n, m, budget_nnz)
                values = []
                for d in range(draws):
                    reps = sample_coset_reps(cfg, np.random.default_rng([seed, n, m, j, d]))
                    dist = outcome_distribution(pair, m, reps, h=h, budget_nnz=budget_nnz)
                    values.append(dist.p1)
                low = min(values)
                worst = min(worst, low)
                count += 1
                res.add(f"n={n} m={m} pair {j} |E|={len(g1.edges)} |H|={h.order}",
                        low >= 1 - PROB_TOL,
                        f"min p1 over {draws} draws = {low!r} via {dist.report.method.value}")
        res.add("summary", count >= 20 and worst >= 1 - PROB_TOL,
                f"{count} isomorphic pairs, worst p1 = {worst!r}")

    return _timed("isomorphic", body)


# -- criterion 2 -----------------------------------------------------------

def nonisomorphic_suite(m: int = 3, draws: int = 10, seed: int = 2, extra_m: int | None = 4,
                   budget_nnz: int = DEFAULT_BUDGET_NNZ) -> SuiteResult:
    def body(res: SuiteResult) -> None:
        pair = normalize_pair(load_fixture("p3"), load_fixture("k3"))
        h = build_hidden_subgroup(pair)
        cfg = SpaceConfig(pair.n, m, budget_nnz)
        bound = error_bound(pair.n, m)
        res.add("pair is nonisomorphic", not contains_involutive_swap(h), f"|H|={h.order}")
        for d in range(draws):
            reps = sample_coset_reps(cfg, np.random.default_rng([seed, d]))
            dist = outcome_distribution(pair, m, reps, method=ProjectionMethod.LSQ, h=h,
                                        budget_nnz=budget_nnz)
            rep = dist.report
            res.add(f"m={m} draw {d}", rep.converged and dist.p1 <= bound + PROB_TOL,
                    f"p1={dist.p1!r} <= {bound} (columns={rep.dictionary_size}, "
                    f"dimension={cfg.dimension}, iterations={rep.iterations})")
        if extra_m is not None:
            cfg2 = SpaceConfig(pair.n, extra_m, budget_nnz)
            reps = sample_coset_reps(cfg2, np.random.default_rng([seed, extra_m]))
            union = union_bound_check(reps, h, cfg2)
            bound2 = error_bound(pair.n, extra_m)
            if cfg2.dictionary_nnz <= budget_nnz:
                dist = outcome_distribution(pair, extra_m, reps, method=ProjectionMethod.LSQ, h=h,
                                            budget_nnz=budget_nnz)
                res.add(f"m={extra_m}", dist.p1 <= bound2 + PROB_TOL, f"p1={dist.p1!r} <= {bound2}")
            else:
                res.add(f"m={extra_m} union bound only",
                        abs(union.total - bound2) <= ALGEBRA_TOL,
                        f"dictionary needs {cfg2.dictionary_nnz} nonzeros > budget {budget_nnz}; "
                        f"sum_k <P(k)> = {union.total!r}")

    return _timed("nonisomorphic", body)


# -- criterion 3 -----------------------------------------------------------

def swap_expectation_suite(g1: Graph | None = None, g2: Graph | None = None,
                           ms=(1, 2, 3, 4, 5), seed: int = 3) -> SuiteResult:
    def body(res: SuiteResult) -> None:
        a = load_fixture("rigid6a") if g1 is None else g1
        b = load_fixture("rigid6b") if g2 is None else g2
        rigid = len(automorphisms(a)) == 1 and len(automorphisms(b)) == 1
        res.add("pair is rigid, connected, nonisomorphic",
                rigid and a.is_connected() and b.is_connected() and not isomorphisms(a, b),
                f"|Aut|=({len(automorphisms(a))}, {len(automorphisms(b))})")
        pair = normalize_pair(a, b)
        h = build_hidden_subgroup(pair)
        swaps = involutive_swaps(pair.n)
        for m in ms:
            cfg = SpaceConfig(pair.n, m)
            reps = sample_coset_reps(cfg, np.random.default_rng([seed, m]))
            psi = prepare_psi(reps, h, cfg)
            target = 2.0 ** -m
            worst_closed = worst_explicit = 0.0
            for k in swaps:
                closed = swap_expectation(reps, h, k)
                explicit = explicit_swap_expectation(psi, k)
                worst_closed = max(worst_closed, abs(closed - target))
                worst_explicit = max(worst_explicit, abs(explicit - closed))
            res.add(f"m={m}: {len(swaps)} swaps",
                    worst_closed <= ALGEBRA_TOL and worst_explicit <= ALGEBRA_TOL,
                    f"max |closed - 2^-{m}| = {worst_closed:.3g}, "
                    f"max |explicit - closed| = {worst_explicit:.3g}")

    return _timed("swap-expectation", body)


# -- criterion 4 -----------------------------------------------------------

ORACLE_CONFIGS = ((2, 1), (2, 2), (2, 3), (3, 1))


def _oracle_states(n: int, m: int, rng: np.random.Generator):
    """(label, exact weights) pairs covering coset states, basis states and random vectors."""
    cfg = SpaceConfig(n, m)
    pairs = [("k2", "k2")] if n == 2 else [("p3", "k3"), ("p3", "p3b"), ("k3", "k3")]
    for name1, name2 in pairs:
        h = build_hidden_subgroup(normalize_pair(load_fixture(name1), load_fixture(name2)))
        for d in range(2):
            reps = sample_coset_reps(cfg, rng)
            psi = prepare_psi(reps, h, cfg)
            yield f"coset {name1}/{name2} #{d}", {i: 1 for i, _ in psi.items()}
    for d in range(2):
        yield f"basis #{d}", {int(rng.integers(cfg.dimension)): 1}
    idx = rng.choice(cfg.dimension, size=min(cfg.dimension, 12), replace=False)
    yield "random integers", {int(i): int(w) for i, w in zip(idx, rng.integers(-3, 4, size=idx.size)) if w}


def oracle_suite(configs=ORACLE_CONFIGS, seed: int = 4) -> SuiteResult:
    def body(res: SuiteResult) -> None:
        rng = np.random.default_rng(seed)
        for n, m in configs:
            cfg = SpaceConfig(n, m)
            for label, weights in _oracle_states(n, m, rng):
                exact = p1_exact_rational(weights, cfg)
                vec = np.zeros(cfg.dimension)
                for i, w in weights.items():
                    vec[i] = w
                dense = p1_dense(vec, cfg).p1
                lsq = p1_least_squares(vec, cfg)
                values = {"exact": float(exact), "dense": dense, "lsq": lsq.p1}
                spread = max(values.values()) - min(values.values())
                res.add(f"n={n} m={m} {label}", spread <= AGREEMENT_TOL and lsq.converged,
                        f"exact={exact} dense={dense!r} lsq={lsq.p1!r} spread={spread:.2g}")

    return _timed("oracles", body)


# -- criterion 5 -----------------------------------------------------------

def dims_suite(n: int = 3, m: int = 1, grid_n=range(1, 7), grid_m=range(1, 6)) -> SuiteResult:
    def body(res: SuiteResult) -> None:
        bad = [(gn, gm) for gn in grid_n for gm in grid_m
               if SpaceConfig(gn, gm).dimension != 2 ** gm * math.factorial(gn) ** (2 * gm)]
        res.add("dim H = 2^m (n!)^(2m) on the grid", not bad, f"mismatches: {bad}")
        cfg = SpaceConfig(n, m)
        count = sum(1 for _ in enumerate_k_vectors(cfg, 0))
        res.add(f"k-vectors per swap at n={n} m={m}", count == cfg.kspace_dim,
                f"{count} == (|G|/2)^m = {cfg.kspace_dim}")
        one = numerical_rank(cfg, swaps=[0])
        res.add(f"rank of one swap's dictionary at n={n} m={m}", one == cfg.kspace_dim,
                f"rank H(k) = {one}")
        full = numerical_rank(cfg)
        res.add(f"rank of the full dictionary at n={n} m={m}", full <= cfg.dim_bound,
                f"measured dim H_1 = {full} <= n!(|G|/2)^m = {cfg.dim_bound}")

    return _timed("dims", body)


# -- criterion 6 -----------------------------------------------------------

def gprime_suite(ns=(2, 3, 4, 5)) -> SuiteResult:
    def body(res: SuiteResult) -> None:
        for n in ns:
            rep = verify_characterization(n)
            res.add(f"n={n}", rep.match and rep.index == 2,
                    f"|G|={rep.group_order} |G'|={rep.closure_order} "
                    f"predicate set={rep.predicate_order} index={rep.index}")

    return _timed("gprime", body)


# -- criterion 7 -----------------------------------------------------------

def group_suite(exhaustive_n: int = 3, sampled=(4, 5), samples: int = 10_000,
                swap_ns=range(1, 7), seed: int = 7) -> SuiteResult:
    def body(res: SuiteResult) -> None:
        ix = indexer(exhaustive_n)
        elems = list(ix.elements())
        e = ix.identity()
        emb = [embed_s2n(x) for x in elems]
        hom = all(embed_s2n(compose(x, y)) == perm_compose(ex, ey)
                  for x, ex in zip(elems, emb) for y, ey in zip(elems, emb))
        res.add(f"homomorphism, n={exhaustive_n} all {len(elems) ** 2} pairs", hom)
        res.add(f"embedding injective, n={exhaustive_n}", len(set(emb)) == len(elems))
        table = {(i, j): ix.rank(compose(x, y)) for i, x in enumerate(elems) for j, y in enumerate(elems)}
        order = len(elems)
        assoc = all(table[table[i, j], k] == table[i, table[j, k]]
                    for i in range(order) for j in range(order) for k in range(order))
        res.add(f"associativity, n={exhaustive_n} all {order ** 3} triples", assoc)
        ident = all(compose(e, x) == x == compose(x, e) for x in elems)
        inv = all(compose(x, inverse(x)) == e == compose(inverse(x), x) for x in elems)
        res.add(f"identity and inverses, n={exhaustive_n}", ident and inv)
        res.add(f"rank/unrank bijection, n={exhaustive_n}",
                all(ix.rank(ix.unrank(i)) == i for i in range(order)) and ix.rank(e) == 0)
        rng = random.Random(seed)
        for n in sampled:
            six = indexer(n)
            ok = True
            for _ in range(samples):
                x, y = six.unrank(rng.randrange(six.order)), six.unrank(rng.randrange(six.order))
                ok &= embed_s2n(compose(x, y)) == perm_compose(embed_s2n(x), embed_s2n(y))
                ok &= unembed_s2n(embed_s2n(x)) == x
            res.add(f"homomorphism, n={n} {samples} sampled pairs", ok)
        for n in swap_ns:
            swaps = involutive_swaps(n)
            e = WreathElement.identity(n)
            res.add(f"swaps n={n}",
                    len(swaps) == math.factorial(n) and len(set(swaps)) == len(swaps)
                    and all(compose(k, k) == e and gprime_predicate(k) for k in swaps),
                    f"{len(swaps)} swaps, all involutions")

    return _timed("group", body)


# -- criterion 8 -----------------------------------------------------------

def sampling_suite(m: int = 3, trials: int = 400, seed: int = 8) -> SuiteResult:
    def body(res: SuiteResult) -> None:
        pair = normalize_pair(load_fixture("p3"), load_fixture("k3"))
        rep = decide(pair, m, trials=trials, seed=seed)
        p1s = [t.p1 for t in rep.trials]
        p_mean = math.fsum(p1s) / len(p1s)
        freq = rep.outcome_samples["lambda1"] / trials
        sigma = math.sqrt(p_mean * (1 - p_mean) / trials)
        res.add("frequency within 3 sigma of p1", abs(freq - p_mean) <= 3 * sigma,
                f"observed {freq} vs p1 {p_mean!r} (3 sigma = {3 * sigma:.4f})")
        bound = error_bound(pair.n, m)
        res.add("frequency below bound + 0.05", freq <= bound + 0.05, f"{freq} <= {bound + 0.05}")
        res.add("every trial below the bound", max(p1s) <= bound + PROB_TOL,
                f"max p1 {max(p1s)!r} over {trials} trials")

    return _timed("sampling", body)


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "isomorphic": isomorphic_suite,
    "nonisomorphic": nonisomorphic_suite,
    "swap-expectation": swap_expectation_suite,
    "oracles": oracle_suite,
    "dims": dims_suite,
    "gprime": gprime_suite,
    "group": group_suite,
    "sampling": sampling_suite,
}

"""Command-line entry point: ``wreath-observable <command> ...``.

Exit codes: 0 success (``decide``: isomorphic), 1 ``decide`` answered
not-isomorphic or a ``verify`` suite failed, 2 usage or input-format error,
3 resource guard refused the computation, 4 theorem violation or
non-convergence (an internal bug signal).
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import __version__
from .errors import GraphFormatError, InvalidArgumentError, ResourceLimitError, TheoremViolationError
from .gprime import verify_characterization
from .graphs import build_hidden_subgroup, contains_involutive_swap, normalize_pair, read_graph
from .group import indexer, involutive_swaps
from .observable import ConvergenceError, Decision, decide, error_bound, outcome_distribution, sample_coset_reps
from .projector import ProjectionMethod
from .report import to_csv, to_human, to_json
from .states import DEFAULT_BUDGET_NNZ, SpaceConfig
from .verify import SUITES

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_RESOURCE, EXIT_BUG = 0, 1, 2, 3, 4

PROB_FIELDS = ("n", "m", "group_order", "dimension", "h_order", "contains_swap", "p1", "p0", "bound",
               "sum_swap_expect", "max_swap_expect", "method", "residual", "iterations", "seed", "reps")


def _emit(obj: dict, fmt: str, rows: list[dict] | None = None) -> None:
    if fmt == "json":
        sys.stdout.write(to_json(obj) + "\n")
    elif fmt == "csv":
        sys.stdout.write(to_csv(rows if rows is not None else [obj]))
    else:
        sys.stdout.write(to_human(obj))


def _load_pair(args):
    return normalize_pair(read_graph(args.g1), read_graph(args.g2))


def _method(args) -> ProjectionMethod | None:
    return ProjectionMethod.parse(args.method)


def cmd_decide(args) -> int:
    pair = _load_pair(args)
    rep = decide(pair, args.m, trials=args.trials, seed=args.seed, method=_method(args),
                 budget_nnz=args.budget_nnz, tol=args.tol)
    out = {
        "n": rep.n, "m": rep.m, "decision": rep.decision.value, "p1": rep.p1, "bound": rep.bound,
        "outcome_samples": rep.outcome_samples, "trials": len(rep.trials), "seed": rep.seed,
        "method": rep.method, "lambda0": rep.lambda0, "lambda1": rep.lambda1,
        "p1_trials": [t.p1 for t in rep.trials], "coset_reps": rep.coset_reps,
        "connectivity": pair.connectivity_note.value,
        "protocol": "independent simulated measurements; isomorphic iff any trial yields lambda1",
    }
    if args.timing:
        out["runtime"] = rep.runtime
    rows = [{"trial": t.index, "reps": t.reps, "p1": t.p1, "outcome": t.outcome, "bound": rep.bound}
            for t in rep.trials]
    _emit(out, args.format, rows or None)
    return EXIT_OK if rep.decision is Decision.ISOMORPHIC else EXIT_NO


def cmd_prob(args) -> int:
    pair = _load_pair(args)
    out = dict.fromkeys(PROB_FIELDS)
    cfg = SpaceConfig(pair.n, args.m, args.budget_nnz)
    out.update(n=cfg.n, m=cfg.m, group_order=cfg.group_order, dimension=cfg.dimension,
               bound=error_bound(cfg.n, cfg.m), seed=args.seed, method="none")
    if not pair.simulable:
        out.update(contains_swap=False, reps=[])
        _emit(out, args.format)
        return EXIT_OK
    h = build_hidden_subgroup(pair)
    reps = sample_coset_reps(cfg, args.seed)
    dist = outcome_distribution(pair, args.m, reps, method=_method(args), h=h,
                                budget_nnz=args.budget_nnz, tol=args.tol)
    ix = indexer(cfg.n)
    out.update(h_order=h.order, contains_swap=contains_involutive_swap(h), p1=dist.p1, p0=dist.p0,
               sum_swap_expect=dist.union.total, max_swap_expect=dist.union.largest,
               method=dist.report.method.value, residual=dist.report.residual_norm,
               iterations=dist.report.iterations, reps=[ix.rank(c) for c in reps])
    _emit(out, args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    ok = True
    for name in names:
        kwargs = {}
        if name == "gprime" and args.n is not None:
            kwargs["ns"] = (args.n,)
        elif name == "dims":
            if args.n is not None:
                kwargs["n"] = args.n
            if args.m is not None:
                kwargs["m"] = args.m
        elif name == "swap-expectation":
            if args.g1 and args.g2:
                kwargs["g1"], kwargs["g2"] = read_graph(args.g1), read_graph(args.g2)
            if args.m is not None:
                kwargs["ms"] = (args.m,)
        elif name in ("nonisomorphic", "sampling") and args.m is not None:
            kwargs["m"] = args.m
        result = SUITES[name](**kwargs)
        if name == "swap-expectation" and args.n is not None and result.checks:
            pair_n = read_graph(args.g1).n if args.g1 else 6
            if pair_n != args.n:
                result.add("requested n matches the graphs", False, f"graphs have n={pair_n}")
        for line in result.lines():
            print(line)
        print(f"[{name}] {'PASS' if result.passed else 'FAIL'} in {result.runtime:.1f}s")
        ok &= result.passed
    return EXIT_OK if ok else EXIT_NO


def cmd_swaps(args) -> int:
    ix = indexer(args.n)
    rows = [{"index": i, "rank": ix.rank(k), "sigma": list(k.sigma), "tau": list(k.tau), "b": k.swap_bit}
            for i, k in enumerate(involutive_swaps(args.n))]
    if args.format == "csv":
        sys.stdout.write(to_csv(rows))
    elif args.format == "json":
        sys.stdout.write(to_json({"n": args.n, "count": len(rows), "swaps": rows}) + "\n")
    else:
        for r in rows:
            print(f"{r['index']:>4}  rank={r['rank']:<8} ({r['sigma']}, {r['tau']}, 1)")
    return EXIT_OK


def cmd_gprime(args) -> int:
    rep = verify_characterization(args.n)
    out = {"n": rep.n, "group_order": rep.group_order, "gprime_order": rep.closure_order,
           "predicate_order": rep.predicate_order, "match": rep.match, "index": rep.index}
    _emit(out, args.format)
    return EXIT_OK if rep.match else EXIT_NO


def cmd_autgroup(args) -> int:
    pair = _load_pair(args)
    out = {"n": pair.n, "connectivity": pair.connectivity_note.value}
    if pair.simulable:
        h = build_hidden_subgroup(pair)
        out.update(h_order=h.order, contains_swap=contains_involutive_swap(h),
                   swap_elements=sum(x.swap_bit for x in h.elements))
        if args.elements:
            out["elements"] = h.ranks()
    else:
        out.update(h_order=None, contains_swap=False)
    _emit(out, args.format)
    return EXIT_OK


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wreath-observable", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, graphs=True, graphs_required=True):
        if graphs:
            p.add_argument("--g1", required=graphs_required, help="first graph file")
            p.add_argument("--g2", required=graphs_required, help="second graph file")
        p.add_argument("--format", choices=("json", "csv", "human"), default="json")

    def numeric(p):
        p.add_argument("--m", type=_positive, default=1, help="number of coset-state factors")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--method", choices=("auto", "exact", "dense", "lsq"), default="auto")
        p.add_argument("--budget-nnz", type=_positive, default=DEFAULT_BUDGET_NNZ,
                       help="largest dictionary/support size to materialize")
        p.add_argument("--tol", type=float, default=1e-10, help="least-squares tolerance")

    p = sub.add_parser("decide", help="simulate repeated measurements and decide isomorphism")
    common(p)
    numeric(p)
    p.add_argument("--trials", type=_positive, default=1)
    p.add_argument("--timing", action="store_true", help="include wall-clock runtime in the report")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("prob", help="outcome probabilities for one random coset-state tensor")
    common(p)
    numeric(p)
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=("all", *SUITES), default="all")
    p.add_argument("--n", type=_positive)
    p.add_argument("--m", type=_positive)
    p.add_argument("--g1")
    p.add_argument("--g2")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("swaps", help="list the involutive swaps (g, g^-1, 1)")
    p.add_argument("--n", type=_positive, required=True)
    common(p, graphs=False)
    p.set_defaults(func=cmd_swaps)

    p = sub.add_parser("gprime", help="check the subgroup generated by the swaps")
    p.add_argument("--n", type=_positive, required=True)
    common(p, graphs=False)
    p.set_defaults(func=cmd_gprime)

    p = sub.add_parser("autgroup", help="hidden subgroup H = Aut of the disjoint union")
    common(p)
    p.add_argument("--elements", action="store_true", help="list element ranks")
    p.set_defaults(func=cmd_autgroup)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, InvalidArgumentError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (TheoremViolationError, ConvergenceError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_BUG


if __name__ == "__main__":
    sys.exit(main())

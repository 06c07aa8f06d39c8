"""The eight acceptance criteria, each with its runtime budget.

Each criterion prints one PASS/FAIL line and the lines are repeated in the
terminal summary.
"""
import pytest

from wreath_observable.verify import SUITES

CRITERIA = [
    (1, "isomorphic", "isomorphic pairs give p1 = 1", 5 * 60),
    (2, "nonisomorphic", "(P3, K3) at m=3 gives p1 <= 6/8", 15 * 60),
    (3, "swap-expectation", "rigid pair swap expectations equal 2^-m", 2 * 60),
    (4, "oracles", "exact, dense and least-squares p1 agree", 60),
    (5, "dims", "dimension formulas and dictionary ranks", 60),
    (6, "gprime", "swap closure is the equal-sign subgroup of index 2", 60),
    (7, "group", "group axioms, embedding and swap involutions", 60),
    (8, "sampling", "lambda1 frequency matches p1 over 400 trials", 20 * 60),
]


@pytest.mark.parametrize("number,suite,title,budget", CRITERIA, ids=[c[1] for c in CRITERIA])
def test_criterion(number, suite, title, budget, acceptance_log):
    result = SUITES[suite]()
    in_time = result.runtime < budget
    ok = result.passed and in_time
    line = (f"criterion {number} {'PASS' if ok else 'FAIL'}: {title} "
            f"({len(result.checks)} checks, {result.runtime:.1f}s of {budget}s)")
    acceptance_log.append(line)
    print(line)
    failed = [c.line() for c in result.checks if not c.passed]
    assert result.passed, "\n".join(failed)
    assert in_time, f"{suite} took {result.runtime:.1f}s, budget {budget}s"

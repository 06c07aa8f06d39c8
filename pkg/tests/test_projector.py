import math
from fractions import Fraction

import numpy as np
import pytest

from wreath_observable.dictionary import KVectorDictionary
from wreath_observable.errors import InvalidArgumentError, ResourceLimitError
from wreath_observable.graphs import HiddenSubgroup
from wreath_observable.group import WreathElement, indexer, involutive_swaps
from wreath_observable.projector import (ProjectionMethod, check_sandwich, compute_p1, in_guard,
                                         numerical_rank, p1_dense, p1_exact_rational,
                                         p1_least_squares, select_method, union_bound_check)
from wreath_observable.states import (KVectorId, SpaceConfig, SparseState, coset_state,
                                      enumerate_k_vectors, k_vector, tensor_product)


def coset_tensor(reps, h):
    return tensor_product([coset_state(c, h) for c in reps])


def random_reps(n, m, seed):
    ix = indexer(n)
    return [ix.unrank(int(r)) for r in np.random.default_rng(seed).integers(0, ix.order, m)]


# -- exact ------------------------------------------------------------------

@pytest.mark.parametrize("pair", [("p3", "p3"), ("p3", "p3b"), ("k3", "k3")])
def test_exact_isomorphic_is_one(hidden, pair):
    cfg = SpaceConfig(3, 1)
    for seed in range(3):
        assert p1_exact_rational(coset_tensor(random_reps(3, 1, seed), hidden(*pair)), cfg) == 1


@pytest.mark.parametrize("m", [1, 2, 3])
def test_exact_isomorphic_n2(hidden, m):
    h = hidden("k2", "k2")
    assert p1_exact_rational(coset_tensor(random_reps(2, m, m), h), SpaceConfig(2, m)) == 1


def test_exact_k_vector_is_one():
    for n, m in [(2, 2), (3, 1)]:
        cfg = SpaceConfig(n, m)
        kid = list(enumerate_k_vectors(cfg))[-1]
        assert p1_exact_rational(k_vector(kid, cfg), cfg) == 1


def test_exact_regression_p3_k3_m1(hidden):
    # value cross-checked against the dense route below
    cfg = SpaceConfig(3, 1)
    psi = coset_tensor([WreathElement.identity(3)], hidden("p3", "k3"))
    value = p1_exact_rational(psi, cfg)
    assert value == Fraction(5, 6)
    assert abs(p1_dense(psi, cfg).p1 - float(value)) <= 1e-12


def test_exact_accepts_rational_weights():
    cfg = SpaceConfig(2, 1)
    a = p1_exact_rational({0: Fraction(1, 3), 5: Fraction(-2, 7)}, cfg)
    vec = np.zeros(8)
    vec[0], vec[5] = 1 / 3, -2 / 7
    assert abs(float(a) - p1_dense(vec, cfg).p1) <= 1e-12


def test_exact_guards():
    with pytest.raises(ResourceLimitError):
        p1_exact_rational({0: 1}, SpaceConfig(3, 2))
    with pytest.raises(InvalidArgumentError):
        p1_exact_rational({}, SpaceConfig(2, 1))
    with pytest.raises(InvalidArgumentError):
        p1_exact_rational(SparseState(2, 1, {0: 1.0, 1: 0.5}), SpaceConfig(2, 1))


# -- dense ------------------------------------------------------------------

def test_dense_isomorphic_and_rank(hidden):
    cfg = SpaceConfig(3, 1)
    rep = p1_dense(coset_tensor(random_reps(3, 1, 9), hidden("p3", "p3b")), cfg)
    assert abs(rep.p1 - 1) <= 1e-9
    assert rep.rank <= 216 == cfg.dim_bound
    assert rep.rank == numerical_rank(cfg)


def test_dense_rank_single_swap():
    assert numerical_rank(SpaceConfig(3, 1), swaps=[4]) == 36


def test_dense_guard():
    with pytest.raises(ResourceLimitError):
        p1_dense(np.zeros(1152), SpaceConfig(4, 1))


# -- least squares ------------------------------------------------------------

def test_lsq_isomorphic_m2(hidden):
    rep = p1_least_squares(coset_tensor(random_reps(3, 2, 1), hidden("p3", "p3")), SpaceConfig(3, 2))
    assert rep.converged
    assert abs(rep.p1 - 1) <= 1e-9
    assert rep.dictionary_size == 7776


def test_lsq_p3_k3_m3(hidden):
    cfg = SpaceConfig(3, 3)
    rep = p1_least_squares(coset_tensor(random_reps(3, 3, 2), hidden("p3", "k3")), cfg)
    assert rep.converged
    assert rep.p1 <= 6 / 8 + 1e-9
    assert rep.dictionary_size == 279_936 and cfg.dimension == 373_248
    assert rep.gradient_ratio <= 1e-10


def test_lsq_unconverged_is_lower_bound(hidden):
    cfg = SpaceConfig(3, 2)
    psi = coset_tensor(random_reps(3, 2, 3), hidden("p3", "k3"))
    full = p1_least_squares(psi, cfg)
    cut = p1_least_squares(psi, cfg, max_iters=1)
    assert not cut.converged and cut.is_lower_bound
    assert cut.p1 <= full.p1 + 1e-12


def test_lsq_python_backend_same_answer(hidden):
    cfg = SpaceConfig(3, 2)
    psi = coset_tensor(random_reps(3, 2, 4), hidden("p3", "k3"))
    a = p1_least_squares(psi, cfg, backend="python").p1
    b = p1_least_squares(psi, cfg).p1
    assert abs(a - b) <= 1e-12


# -- agreement ---------------------------------------------------------------

@pytest.mark.parametrize("pair", [("p3", "k3"), ("p3", "p3"), ("k3", "k3")])
def test_three_methods_agree_n3_m1(hidden, pair):
    cfg = SpaceConfig(3, 1)
    psi = coset_tensor(random_reps(3, 1, 5), hidden(*pair))
    exact = float(p1_exact_rational(psi, cfg))
    assert abs(p1_dense(psi, cfg).p1 - exact) <= 1e-8
    assert abs(p1_least_squares(psi, cfg).p1 - exact) <= 1e-8


def test_methods_agree_on_random_vectors():
    rng = np.random.default_rng(6)
    for n, m in [(2, 1), (2, 2), (2, 3), (3, 1)]:
        cfg = SpaceConfig(n, m)
        for _ in range(3):
            idx = rng.choice(cfg.dimension, 5, replace=False)
            w = rng.integers(1, 5, 5) * rng.choice([-1, 1], 5)
            weights = dict(zip(idx.tolist(), w.tolist()))
            vec = np.zeros(cfg.dimension)
            vec[idx] = w
            exact = float(p1_exact_rational(weights, cfg))
            assert abs(p1_dense(vec, cfg).p1 - exact) <= 1e-8
            assert abs(p1_least_squares(vec, cfg).p1 - exact) <= 1e-8


@pytest.mark.slow
def test_dense_agrees_with_lsq_n3_m2(hidden):
    cfg = SpaceConfig(3, 2)
    psi = coset_tensor(random_reps(3, 2, 7), hidden("p3", "k3"))
    dense = p1_dense(psi, cfg)
    assert abs(dense.p1 - p1_least_squares(psi, cfg).p1) <= 1e-8
    assert dense.rank <= cfg.dim_bound


# -- union bound, sandwich, structure ------------------------------------------

def test_union_bound_examples(hidden):
    h = hidden("p3", "k3")
    for m in (1, 2, 3, 4):
        ub = union_bound_check(random_reps(3, m, m), h, SpaceConfig(3, m))
        assert ub.total == pytest.approx(6 * 2.0 ** -m, abs=1e-15)
        assert ub.largest == 2.0 ** -m
    assert union_bound_check(random_reps(3, 4, 0), h, SpaceConfig(3, 4)).total == 0.375
    iso = union_bound_check(random_reps(3, 2, 0), hidden("p3", "p3"), SpaceConfig(3, 2))
    assert iso.largest == 1.0


def test_sandwich_holds(hidden):
    for pair in [("p3", "k3"), ("p3", "p3"), ("k3", "k3")]:
        for m in (1, 2):
            cfg = SpaceConfig(3, m)
            reps = random_reps(3, m, 10 + m)
            rep = compute_p1(coset_tensor(reps, hidden(*pair)), cfg)
            check_sandwich(rep, union_bound_check(reps, hidden(*pair), cfg))


def test_sandwich_trap():
    from wreath_observable.projector import ProjectionReport, UnionBound
    rep = ProjectionReport(0.9, ProjectionMethod.LSQ, 0.0, 1, 1, 1)
    with pytest.raises(AssertionError):
        check_sandwich(rep, UnionBound(0.5, 0.25, ()))


def test_monotone_in_dictionary():
    cfg = SpaceConfig(3, 1)
    rng = np.random.default_rng(7)
    for _ in range(5):
        v = rng.standard_normal(cfg.dimension)
        one = p1_dense(v, cfg, swaps=[0]).p1
        two = p1_dense(v, cfg, swaps=[0, 1]).p1
        full = p1_dense(v, cfg).p1
        assert one <= two + 1e-12 <= full + 2e-12
        assert abs(p1_exact_rational({0: 1}, cfg, swaps=[0]) - Fraction(1, 2)) == 0


def test_states_in_h1_have_p1_one():
    rng = np.random.default_rng(8)
    for n, m in [(2, 2), (3, 1), (3, 2)]:
        cfg = SpaceConfig(n, m)
        ids = list(enumerate_k_vectors(cfg))
        for _ in range(3):
            picks = rng.choice(len(ids), size=10, replace=False)
            v = sum(rng.standard_normal() * k_vector(ids[i], cfg).to_dense() for i in picks)
            assert abs(p1_least_squares(v, cfg).p1 - 1) <= 1e-9


def test_h0_witness_has_p1_zero():
    cfg = SpaceConfig(2, 1)
    b = KVectorDictionary(cfg).to_dense()
    q = np.linalg.svd(b, full_matrices=False)[0][:, :np.linalg.matrix_rank(b)]
    v = np.zeros(cfg.dimension)
    v[3] = 1.0
    w = v - q @ (q.T @ v)
    if np.linalg.norm(w) < 1e-9:
        pytest.skip("H_1 is the whole space at n=2, m=1")
    assert abs(p1_dense(w, cfg).p1) <= 1e-9
    assert abs(p1_least_squares(w, cfg).p1) <= 1e-9


def test_method_selection():
    assert select_method(SpaceConfig(2, 3)) is ProjectionMethod.EXACT
    assert select_method(SpaceConfig(3, 1)) is ProjectionMethod.EXACT
    assert select_method(SpaceConfig(3, 2)) is ProjectionMethod.LSQ
    assert in_guard(ProjectionMethod.DENSE, SpaceConfig(3, 2))
    assert not in_guard(ProjectionMethod.DENSE, SpaceConfig(3, 2), auto=True)
    assert select_method(SpaceConfig(4, 1)) is ProjectionMethod.LSQ
    with pytest.raises(ResourceLimitError):
        select_method(SpaceConfig(3, 4))
    assert ProjectionMethod.parse("auto") is None
    assert ProjectionMethod.parse("dense") is ProjectionMethod.DENSE


def test_trivial_h_basis_state_p1(hidden):
    # H trivial: psi is a basis state, p1 lies between 2^-m and n!/2^m
    cfg = SpaceConfig(3, 1)
    psi = coset_tensor([indexer(3).unrank(40)], HiddenSubgroup.trivial(3))
    p1 = p1_exact_rational(psi, cfg)
    assert Fraction(1, 2) <= p1 <= 3

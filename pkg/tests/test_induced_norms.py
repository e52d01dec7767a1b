"""Induced norms: SVD, closed forms, exact enumeration, estimator, oracle.

Frozen values below are either hand-derived (derivation in the comment) or
cross-checked against the independent sampling oracle norm_bruteforce,
which explores the unit sphere directly and does not share the closed-form
code paths.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pqnorm import (
    Certainty,
    DimensionError,
    EstimatorSettings,
    MatrixValue,
    as_index,
    as_matrix,
    best_norm,
    conjugate,
    maximizer_set_probe,
    norm_bruteforce,
    norm_closed_form,
    norm_estimate,
    norm_infty_one_exact,
    norm_ratio,
    svd,
    vector_norm,
)

B = np.array([[1.0, 1.0], [-1.0, 1.0]])
GRID = [1, 1.5, 2, 3, "inf"]


def rand_matrix(i, n, m, complex_=False):
    r = np.random.default_rng(i)
    if complex_:
        return as_matrix(
            r.standard_normal((n, m)) + 1j * r.standard_normal((n, m)),
            field="complex",
        )
    return as_matrix(r.standard_normal((n, m)), field="real")


class TestMatrixValue:
    def test_field_inference(self):
        assert as_matrix(np.eye(2)).field == "real"
        assert as_matrix(np.eye(2) * (1 + 0j)).field == "complex"
        assert as_matrix(np.eye(2), field="complex").is_complex

    def test_rejects_real_tag_on_complex_entries(self):
        with pytest.raises(ValueError):
            as_matrix(np.array([[1j]]), field="real")

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            as_matrix(np.array([[np.inf, 1.0]]))
        with pytest.raises(ValueError):
            as_matrix(np.array([[np.nan]]))

    def test_rejects_empty_and_non_2d(self):
        with pytest.raises(ValueError):
            as_matrix(np.zeros((0, 2)))
        with pytest.raises(ValueError):
            as_matrix(np.zeros(3))

    def test_entries_read_only(self):
        M = as_matrix(np.eye(2))
        with pytest.raises((ValueError, RuntimeError)):
            M.entries[0, 0] = 5.0

    def test_adjoint_involution(self):
        M = rand_matrix(5, 3, 2, complex_=True)
        back = M.adjoint().adjoint()
        assert np.array_equal(back.entries, M.entries)
        assert M.adjoint().n == M.m and M.adjoint().m == M.n


class TestSvd:
    def test_against_numpy_many(self):
        for i in range(30):
            r = np.random.default_rng(i)
            n, m = int(r.integers(1, 7)), int(r.integers(1, 7))
            M = rand_matrix(100 + i, n, m, complex_=bool(i % 2))
            f = svd(M)
            ref = np.linalg.svd(M.entries, compute_uv=False)
            assert np.allclose(f.s, ref, rtol=1e-10, atol=1e-12)

    def test_factors_unitary_and_reconstruct(self):
        M = rand_matrix(7, 5, 3, complex_=True)
        f = svd(M)
        assert np.allclose(f.u.conj().T @ f.u, np.eye(5), atol=1e-12)
        assert np.allclose(f.v.conj().T @ f.v, np.eye(3), atol=1e-12)
        assert np.allclose(f.reconstruct(), M.entries, atol=1e-12)
        assert all(f.s[i] >= f.s[i + 1] for i in range(len(f.s) - 1))

    def test_rank_deficient_and_zero(self):
        A = np.array([[1.0, 2.0], [2.0, 4.0]])  # rank one
        f = svd(as_matrix(A))
        assert f.s[1] <= 1e-12 * f.s[0]
        fz = svd(as_matrix(np.zeros((2, 3))))
        assert np.allclose(fz.s, 0.0)
        assert np.allclose(fz.reconstruct(), 0.0)

    def test_wide_matrix(self):
        M = rand_matrix(11, 2, 5, complex_=True)
        f = svd(M)
        assert f.u.shape == (2, 2) and f.v.shape == (5, 5)
        assert np.allclose(f.reconstruct(), M.entries, atol=1e-12)


class TestClosedForms:
    # ||A||_{1,q} = max_j ||col_j||_q; ||A||_{p,inf} = max_i ||row_i||_{p*};
    # ||A||_{2,2} = top singular value.
    def test_p1_column_route(self):
        A = np.array([[3.0, 1.0], [0.0, 1.0]])
        # col l1: (3, 2) -> 3; col l2: (3, sqrt(2)) -> 3; col linf: (3, 1) -> 3
        for q, want in [(1, 3.0), (2, 3.0), ("inf", 3.0)]:
            res = norm_closed_form(A, 1, q)
            assert res is not None and math.isclose(res.value, want, rel_tol=1e-12)
            assert res.certainty is Certainty.CLOSED_FORM

    def test_q_inf_row_route(self):
        A = np.array([[3.0, 1.0], [0.0, 1.0]])
        # rows (3,1) and (0,1); p=1 -> p*=inf: max|row| = 3
        # p=2 -> p*=2: sqrt(10); p=inf -> p*=1: row sums (4,1) -> 4
        assert math.isclose(norm_closed_form(A, 1, "inf").value, 3.0, rel_tol=1e-12)
        assert math.isclose(
            norm_closed_form(A, 2, "inf").value, math.sqrt(10.0), rel_tol=1e-12
        )
        assert math.isclose(norm_closed_form(A, "inf", "inf").value, 4.0, rel_tol=1e-12)

    def test_22_spectral(self):
        A = np.array([[3.0, 1.0], [0.0, 1.0]])
        # A^T A = [[9,3],[3,2]]; top eigenvalue (11+sqrt(85))/2
        want = math.sqrt((11.0 + math.sqrt(85.0)) / 2.0)
        assert math.isclose(norm_closed_form(A, 2, 2).value, want, rel_tol=1e-12)

    def test_no_closed_form_interior(self):
        assert norm_closed_form(np.eye(2), 1.5, 2.5) is None

    def test_zero_matrix(self):
        res = norm_closed_form(np.zeros((2, 2)), 1.7, 2.3)
        assert res is not None and res.value == 0.0

    def test_witnesses_achieve_value(self):
        for i in range(8):
            M = rand_matrix(200 + i, 3, 3, complex_=bool(i % 2))
            for (p, q) in [(1, 1), (1, 2), (1, "inf"), (2, "inf"), ("inf", "inf"), (2, 2)]:
                res = norm_closed_form(M, p, q)
                got = norm_ratio(M, res.witness, p, q)
                assert math.isclose(got, res.value, rel_tol=1e-9, abs_tol=1e-12)


class TestInftyOneExact:
    def test_worked_example_real(self):
        res = norm_infty_one_exact(as_matrix(B, field="real"))
        assert res.value == 2.0
        assert res.certainty is Certainty.ENUMERATION

    def test_hand_values(self):
        # [[3,1],[0,1]]: x=(1,1) -> |4|+|1| = 5 (dominates (1,-1) -> 3)
        assert norm_infty_one_exact(np.array([[3.0, 1.0], [0.0, 1.0]])).value == 5.0
        # diag(3,1): always |3|+|1| = 4
        assert norm_infty_one_exact(np.diag([3.0, 1.0])).value == 4.0
        # ones 2x2: x=(1,1) -> 4
        assert norm_infty_one_exact(np.ones((2, 2))).value == 4.0

    def test_complex_worked_example(self):
        # maximizer (1, i): ||A(1,i)||_1 = |1+i| + |-1+i| = 2*sqrt(2)
        res = norm_infty_one_exact(as_matrix(B, field="complex"))
        assert math.isclose(res.value, 2.0 * math.sqrt(2.0), rel_tol=1e-9)

    def test_witness_reproduces_value(self):
        for i in range(6):
            M = rand_matrix(300 + i, 3, 3, complex_=bool(i % 2))
            res = norm_infty_one_exact(M)
            got = norm_ratio(M, res.witness, "inf", 1)
            assert math.isclose(got, res.value, rel_tol=1e-9)

    def test_dimension_cap(self):
        M = rand_matrix(1, 2, 4)
        with pytest.raises(DimensionError):
            norm_infty_one_exact(M, max_real_cols=3)

    def test_matches_oracle(self):
        for i in range(6):
            M = rand_matrix(400 + i, 2, 3, complex_=False)
            exact = norm_infty_one_exact(M).value
            probe = norm_bruteforce(M, "inf", 1, budget=4000, seed=1).value
            assert probe <= exact + 1e-9 * exact
            assert probe >= exact - 1e-6 * exact


class TestBruteforceOracle:
    def test_budget_guard(self):
        with pytest.raises(ValueError):
            norm_bruteforce(np.eye(2), 2, 2, budget=10)

    def test_never_exceeds_exact_value(self):
        # the oracle is a max over feasible points: always a valid lower bound
        for i in range(10):
            M = rand_matrix(500 + i, 3, 2, complex_=bool(i % 2))
            for (p, q) in [(1, 1.5), (2, 2), ("inf", "inf"), (1, "inf")]:
                exact = norm_closed_form(M, p, q)
                if exact is None:
                    continue
                probe = norm_bruteforce(M, p, q, budget=2000, seed=i)
                assert probe.value <= exact.value * (1.0 + 1e-9)
                assert probe.value >= exact.value * (1.0 - 1e-5)


class TestEstimator:
    def test_dominates_oracle_on_interior_pairs(self):
        for i in range(10):
            M = rand_matrix(600 + i, 3, 3, complex_=bool(i % 2))
            for (p, q) in [(1.5, 1.5), (1.7, 2.3), (3, 1.5)]:
                est = norm_estimate(M, p, q)
                probe = norm_bruteforce(M, p, q, budget=3000, seed=i)
                assert est.value >= probe.value * (1.0 - 1e-7)

    def test_witness_achieves_estimate(self):
        M = rand_matrix(9, 3, 3, complex_=True)
        res = norm_estimate(M, 1.7, 2.3)
        got = norm_ratio(M, res.witness, 1.7, 2.3)
        assert math.isclose(got, res.value, rel_tol=1e-9)

    def test_single_entry_all_pairs(self):
        # a single-entry matrix has ||A||_{p,q} = rho for every p, q
        A = np.zeros((3, 3))
        A[2, 1] = 5.0
        for (p, q) in [(1.7, 2.3), (1.5, 1.5), (3, 3)]:
            res = norm_estimate(A, p, q)
            assert math.isclose(res.value, 5.0, rel_tol=1e-10)

    def test_settings_deterministic(self):
        M = rand_matrix(10, 3, 3, complex_=True)
        a = norm_estimate(M, 1.7, 2.3, EstimatorSettings(seed=4))
        b = norm_estimate(M, 1.7, 2.3, EstimatorSettings(seed=4))
        assert a.value == b.value
        assert np.array_equal(a.witness, b.witness)

    def test_best_norm_routes(self):
        assert best_norm(B, 2, 2).certainty is Certainty.CLOSED_FORM
        assert best_norm(as_matrix(B, field="real"), "inf", 1).certainty is (
            Certainty.ENUMERATION
        )
        assert best_norm(B, 1.7, 2.3).certainty is Certainty.ESTIMATE
        # budget top-up may only improve the value
        plain = best_norm(B, 1.7, 2.3)
        topped = best_norm(B, 1.7, 2.3, budget=2000)
        assert topped.value >= plain.value


class TestWorkedExample:
    def test_complex_grid_formula(self):
        # for r >= 2 >= s: 2^{(1/s)-(1/r)+(1/2)}
        M = as_matrix(B, field="complex")
        for r in [2, 3, 4, "inf"]:
            for s in [1, 1.5, 2]:
                want = 2.0 ** (
                    as_index(s).inv - as_index(r).inv + 0.5
                )
                got = best_norm(M, r, s).value
                assert math.isclose(got, want, rel_tol=1e-6), (r, s)

    def test_real_strictness(self):
        Mr = as_matrix(B, field="real")
        assert best_norm(Mr, "inf", 1).value == 2.0
        assert math.isclose(best_norm(Mr, 2, 2).value, math.sqrt(2.0), rel_tol=1e-9)


class TestDualityOnClosedForms:
    # ||A*||_{q*,p*} = ||A||_{p,q}; both sides exact on the corner routes
    def test_corner_pairs(self):
        for i in range(8):
            M = rand_matrix(700 + i, 3, 2, complex_=bool(i % 2))
            adj = M.adjoint()
            for (p, q) in [(1, 1), (1, 2), (1, "inf"), (2, "inf"), ("inf", "inf"), (2, 2)]:
                a = best_norm(M, p, q)
                b = best_norm(adj, conjugate(as_index(q)), conjugate(as_index(p)))
                assert math.isclose(a.value, b.value, rel_tol=1e-12, abs_tol=1e-15)


class TestMaximizerProbe:
    def test_degenerate_direction_count(self):
        # B^T B = 2 I: every direction maximizes at (2,2)
        vs = maximizer_set_probe(as_matrix(B, field="complex"), 2, 2)
        assert len(vs) >= 2

    def test_simple_direction_count(self):
        vs = maximizer_set_probe(np.diag([3.0, 1.0]), 2, 2)
        assert len(vs) == 1


@given(
    st.integers(0, 10_000),
    st.sampled_from(GRID),
    st.sampled_from(GRID),
    st.floats(0.1, 4.0),
)
@settings(max_examples=40, deadline=None)
def test_norm_scaling_homogeneity(seed, p, q, c):
    M = rand_matrix(seed, 2, 2, complex_=bool(seed % 2))
    a = best_norm(M, p, q, seed=0).value
    scaled = as_matrix(M.entries * c, field=M.field)
    b = best_norm(scaled, p, q, seed=0).value
    assert abs(b - c * a) <= 1e-8 * max(1.0, c * a)


@given(st.integers(0, 10_000), st.sampled_from(GRID), st.sampled_from(GRID))
@settings(max_examples=40, deadline=None)
def test_ratio_never_exceeds_norm(seed, p, q):
    M = rand_matrix(seed, 3, 2, complex_=bool(seed % 2))
    r = np.random.default_rng(seed)
    x = r.standard_normal(2) + (1j * r.standard_normal(2) if M.is_complex else 0)
    val = best_norm(M, p, q, seed=0).value
    assert norm_ratio(M, x, p, q) <= val * (1.0 + 1e-7)

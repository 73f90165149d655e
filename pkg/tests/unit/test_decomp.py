import unittest

import numpy as np

from tubal_cur.algebra import Tensor3, circ_oracle, t_identity, t_product, t_svd, t_transpose
from tubal_cur.decomp import (
    coherence,
    max_abs_diff,
    mu0,
    regression_baseline,
    rfe,
    rse_frob,
    rse_spec,
    slice_regression,
    t_cur,
    t_cx,
    truncated_tsvd,
)
from tubal_cur.errors import DegenerateInput, DimMismatch, RankTooLarge
from tubal_cur.generators import gen_lowrank
from tubal_cur.sampling import (
    ProbSpec,
    draw_distinct_plan,
    draw_plan,
    full_plan,
    lateral_leverage,
    spectral_sample_size,
    uniform_probs,
)


def rand(rng, *dims) -> Tensor3:
    return Tensor3(rng.standard_normal(dims))


def exact_rank(seed, n1=40, n2=30, n3=4, r=3) -> Tensor3:
    return gen_lowrank(n1, n2, n3, r, 0.0, seed)[1]


def noisy_rank(seed, n1=40, n2=30, n3=4, r=3) -> Tensor3:
    return gen_lowrank(n1, n2, n3, r, 0.1, seed)[0]


class TestMetrics(unittest.TestCase):
    def test_zero_error(self):
        x = rand(np.random.default_rng(0), 3, 4, 2)
        self.assertEqual(rfe(x, x), 0.0)
        self.assertEqual(rse_spec(x, x), 0.0)
        self.assertEqual(rse_frob(x, x), 0.0)

    def test_zero_approx_and_hand_case(self):
        x = rand(np.random.default_rng(1), 3, 4, 2)
        self.assertAlmostEqual(rse_frob(x, Tensor3.zeros(3, 4, 2)), 1.0, places=14)
        approx = Tensor3.from_matrix(np.diag([1.0, 0.0]))
        self.assertAlmostEqual(rse_frob(t_identity(2, 1), approx), 1 / np.sqrt(2), places=14)
        self.assertEqual(max_abs_diff(t_identity(2, 1), approx), 1.0)

    def test_explicit_denominators(self):
        x = rand(np.random.default_rng(2), 3, 3, 2)
        zero = Tensor3.zeros(3, 3, 2)
        self.assertAlmostEqual(rfe(x, zero, norm_sq=2 * x.frob_norm()), 0.5)
        self.assertAlmostEqual(rse_spec(x, zero), 1.0)

    def test_errors(self):
        zero = Tensor3.zeros(2, 2, 2)
        with self.assertRaises(DegenerateInput):
            rse_frob(zero, zero)
        with self.assertRaises(DegenerateInput):
            rse_spec(zero, zero)
        with self.assertRaises(DimMismatch):
            rse_frob(zero, Tensor3.zeros(2, 3, 2))


class TestTruncatedTSvd(unittest.TestCase):
    def test_full_rank_returns_input(self):
        x = rand(np.random.default_rng(3), 5, 4, 3)
        np.testing.assert_allclose(truncated_tsvd(x, 4).array, x.array, atol=1e-12)

    def test_exact_rank(self):
        x = exact_rank(4, 12, 10, 3, 2)
        for r in (2, 3):
            self.assertLess(rse_frob(x, truncated_tsvd(x, r)), 1e-10)

    def test_error_monotone_in_rank(self):
        x = rand(np.random.default_rng(5), 8, 6, 4)
        errs = [rse_frob(x, truncated_tsvd(x, r)) for r in range(1, 7)]
        self.assertTrue(all(b <= a + 1e-12 for a, b in zip(errs, errs[1:])))

    def test_matches_tsvd_truncation(self):
        x = rand(np.random.default_rng(6), 6, 5, 3)
        np.testing.assert_allclose(truncated_tsvd(x, 2).array, t_svd(x).truncate(2).reconstruct().array, atol=1e-10)

    def test_bad_rank(self):
        with self.assertRaises(RankTooLarge):
            truncated_tsvd(Tensor3.zeros(3, 2, 2), 3)


class TestTCx(unittest.TestCase):
    def test_all_slices_reproduce_input(self):
        a = exact_rank(7)
        res = t_cx(a, 3, a.n2, ProbSpec.uniform(), seed=1)
        self.assertEqual(res.plan.count, a.n2)
        self.assertLessEqual(res.rse, 1e-10)
        self.assertEqual(res.approx.dims, a.dims)

    def test_exact_rank_leverage(self):
        hits = sum(t_cx(exact_rank(seed), 3, 25, ProbSpec.leverage(3), seed).rse <= 1e-8 for seed in range(20))
        self.assertGreaterEqual(hits, 18)

    def test_noisy_uniform_within_factor_of_best(self):
        hits = 0
        for seed in range(20):
            a = noisy_rank(100 + seed)
            best = rse_frob(a, truncated_tsvd(a, 3))
            hits += t_cx(a, 3, 15, ProbSpec.uniform(), seed).rse <= 1.5 * best
        self.assertGreaterEqual(hits, 16)

    def test_projection_beats_any_coefficients(self):
        rng = np.random.default_rng(8)
        a = noisy_rank(9)
        res = t_cx(a, 3, 10, ProbSpec.leverage(3), seed=3)
        resid = (a - res.approx).frob_norm()
        for _ in range(100):
            y = rand(rng, res.c_tensor.n2, a.n2, a.n3)
            self.assertLessEqual(resid, (a - t_product(res.c_tensor, y)).frob_norm() + 1e-10)

    def test_randomized_scores(self):
        a = exact_rank(10)
        res = t_cx(a, 3, 25, ProbSpec.leverage(3, approx=True), seed=4)
        self.assertLessEqual(res.rse, 1e-8)

    def test_reproducible(self):
        a = noisy_rank(11)
        r1 = t_cx(a, 3, 12, ProbSpec.leverage(3), seed=5)
        r2 = t_cx(a, 3, 12, ProbSpec.leverage(3), seed=5)
        np.testing.assert_array_equal(r1.plan.indices, r2.plan.indices)
        np.testing.assert_array_equal(r1.approx.array, r2.approx.array)

    def test_argument_errors(self):
        a = exact_rank(12, 6, 5, 2, 2)
        with self.assertRaises(RankTooLarge):
            t_cx(a, 6, 3, ProbSpec.uniform(), 0)
        with self.assertRaises(ValueError):
            t_cx(a, 2, 0, ProbSpec.uniform(), 0)


class TestTCur(unittest.TestCase):
    def test_full_selection(self):
        a = rand(np.random.default_rng(13), 8, 6, 3)
        res = t_cur(a, 3, a.n2, a.n1, ProbSpec.uniform(), seed=0)
        np.testing.assert_allclose(res.approx.array, a.array, atol=1e-10)

    def test_exact_rank_leverage(self):
        hits = sum(t_cur(exact_rank(seed), 3, 15, 15, ProbSpec.leverage(3), seed).rse <= 1e-6 for seed in range(20))
        self.assertGreaterEqual(hits, 16)

    def test_noisy_uniform_within_factor_of_best(self):
        hits = 0
        for seed in range(20):
            a = noisy_rank(200 + seed)
            best = rse_frob(a, truncated_tsvd(a, 3))
            hits += t_cur(a, 3, 10, 30, ProbSpec.uniform(), seed).rse <= 2.0 * best
        self.assertGreaterEqual(hits, 14)

    def test_factors_recompute_and_dims(self):
        a = noisy_rank(14)
        res = t_cur(a, 3, 12, 16, ProbSpec.leverage(3), seed=6)
        c, l = res.lateral_plan.count, res.horizontal_plan.count
        self.assertEqual(res.c_tensor.dims, (40, c, 4))
        self.assertEqual(res.u_tensor.dims, (c, l, 4))
        self.assertEqual(res.r_tensor.dims, (l, 30, 4))
        self.assertLess((res.recompute() - res.approx).frob_norm(), 1e-10 * max(1.0, a.frob_norm()))

    def test_never_beats_cx_for_same_columns(self):
        for seed in range(5):
            a = noisy_rank(300 + seed)
            cx = t_cx(a, 3, 12, ProbSpec.leverage(3), seed)
            cur = t_cur(a, 3, 12, 20, ProbSpec.leverage(3), seed)
            np.testing.assert_array_equal(cx.plan.indices, cur.lateral_plan.indices)
            self.assertGreaterEqual((a - cur.approx).frob_norm(), (a - cx.approx).frob_norm() - 1e-10)

    def test_reproducible(self):
        a = noisy_rank(15)
        r1 = t_cur(a, 3, 10, 12, ProbSpec.uniform(), seed=7)
        r2 = t_cur(a, 3, 10, 12, ProbSpec.uniform(), seed=7)
        np.testing.assert_array_equal(r1.horizontal_plan.indices, r2.horizontal_plan.indices)
        np.testing.assert_array_equal(r1.approx.array, r2.approx.array)

    def test_argument_errors(self):
        a = exact_rank(16, 6, 5, 2, 2)
        with self.assertRaises(ValueError):
            t_cur(a, 2, 3, 0, ProbSpec.uniform(), 0)


class TestCoherence(unittest.TestCase):
    def test_identity_basis(self):
        v = Tensor3(t_identity(6, 3).array[:, :2, :])
        self.assertAlmostEqual(mu0(v), 6 * 3 / 2)

    def test_spread_basis_is_minimal(self):
        h = np.array([[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]]) / 2.0
        self.assertAlmostEqual(mu0(Tensor3.from_matrix(h[:, :2])), 1.0, places=12)

    def test_report(self):
        l = exact_rank(17, 20, 15, 3, 2)
        rep = coherence(l, 2, c_opt=10)
        svd = t_svd(l).truncate(2)
        joint = circ_oracle(svd.U, t_transpose(svd.V))
        brute = max(20 * 15 * 9 / 2 * joint.array[i, j, k] ** 2
                    for i in range(20) for j in range(15) for k in range(3))
        self.assertAlmostEqual(rep.mu1, brute, delta=1e-8 * brute)
        self.assertAlmostEqual(rep.rho, 2 * rep.mu0_v / 3)
        self.assertAlmostEqual(rep.rho_c, 10 * rep.mu0_u / 3)
        for value in (rep.mu0_u, rep.mu0_v, rep.mu1, rep.rho):
            self.assertTrue(np.isfinite(value) and value > 0)
        self.assertIsNone(coherence(l, 2).rho_c)

    def test_rank_too_large(self):
        with self.assertRaises(RankTooLarge):
            coherence(exact_rank(18, 10, 8, 2, 2), 3)

    def test_left_coherence_survives_slice_sampling(self):
        l = exact_rank(19, 30, 60, 3, 2)
        c = t_cx(l, 2, 20, ProbSpec.leverage(2), seed=8).c_tensor
        u_c = t_svd(c).truncate(2).U
        self.assertAlmostEqual(mu0(u_c), coherence(l, 2).mu0_u, delta=1e-8)

    def test_right_coherence_bound_under_leverage_sampling(self):
        r, eps, delta = 2, 0.5, 0.1
        c = spectral_sample_size(r, eps, delta)
        l = exact_rank(26, 10, 4 * c, 3, r)
        v = t_svd(l).truncate(r).V
        bound = mu0(v) / (1 - eps / 2)
        p = lateral_leverage(v, r)
        held = 0
        for seed in range(50):
            sub = draw_plan(p, c, seed).gather_lateral(l)
            held += mu0(t_svd(sub).truncate(r).V) <= bound
        self.assertGreaterEqual(held, 45)


class TestRegression(unittest.TestCase):
    def test_baseline_on_row_space(self):
        rng = np.random.default_rng(20)
        lowrank = exact_rank(21, 10, 12, 3, 2)
        a = t_product(rand(rng, 10, 10, 3), lowrank)
        np.testing.assert_allclose(regression_baseline(a, lowrank).array, a.array, atol=1e-8)

    def test_full_plan_matches_baseline(self):
        rng = np.random.default_rng(22)
        a, lowrank = rand(rng, 6, 8, 3), exact_rank(23, 6, 8, 3, 2)
        np.testing.assert_allclose(
            slice_regression(a, lowrank, full_plan(8)).array,
            regression_baseline(a, lowrank).array, atol=1e-8)

    def test_sampled_close_to_baseline(self):
        rng = np.random.default_rng(24)
        lowrank = exact_rank(25, 10, 40, 3, 2)
        a = t_product(rand(rng, 10, 10, 3), lowrank)
        plan = draw_distinct_plan(uniform_probs(40), 10, seed=1)
        est = slice_regression(a, lowrank, plan)
        self.assertLess(rse_frob(a, est), 1e-6)

    def test_dims(self):
        with self.assertRaises(DimMismatch):
            regression_baseline(Tensor3.zeros(2, 3, 2), Tensor3.zeros(2, 2, 2))


if __name__ == "__main__":
    unittest.main()

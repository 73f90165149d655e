import importlib
import unittest
import warnings
from unittest.mock import patch

import numpy as np

from tubal_cur.algebra import Tensor3, dft3, spectral_norm, t_svd, tnn
from tubal_cur.decomp import rse_frob
from tubal_cur.errors import DegenerateInput, DimMismatch, IntersectionRankDeficient, NumericalDivergence, RankTooLarge
from tubal_cur.experiments import synthetic_completion_case, synthetic_rpca_case
from tubal_cur.generators import gen_lowrank
from tubal_cur.solvers import (
    AdmmConfig,
    ObservationMask,
    Problem,
    StopReason,
    admm_complete,
    admm_rpca,
    corrupt_salt_pepper,
    cur_tnn,
    default_lambda,
    make_mask,
    soft_threshold,
    t_svt,
)
cur_tnn_module = importlib.import_module("tubal_cur.solvers.cur_tnn")


def rand(rng, *dims) -> Tensor3:
    return Tensor3(rng.standard_normal(dims))


def svt_oracle(m: Tensor3, tau: float) -> np.ndarray:
    """Shrink every full-spectrum slice with a dense SVD."""
    mhat = dft3(m).slices
    out = np.empty_like(mhat)
    for k in range(m.n3):
        u, s, vh = np.linalg.svd(mhat[:, :, k], full_matrices=False)
        out[:, :, k] = (u * np.maximum(s - tau, 0.0)) @ vh
    return np.fft.ifft(out, axis=2).real


class TestProx(unittest.TestCase):
    def test_svt_trivial_thresholds(self):
        m = rand(np.random.default_rng(0), 4, 3, 2)
        np.testing.assert_array_equal(t_svt(m, 0.0).array, m.array)
        self.assertLess(t_svt(m, spectral_norm(m)).max_abs(), 1e-12)
        with self.assertRaises(ValueError):
            t_svt(m, -1.0)

    def test_svt_matches_oracle_and_is_prox(self):
        rng = np.random.default_rng(1)
        m, tau = rand(rng, 4, 3, 2), 0.5
        out = t_svt(m, tau)
        np.testing.assert_allclose(out.array, svt_oracle(m, tau), atol=1e-10)

        def objective(z: Tensor3) -> float:
            return tnn(z) + (z - m).frob_norm() ** 2 / (2 * tau)

        best = objective(out)
        for _ in range(50):
            self.assertLessEqual(best, objective(out + rand(rng, 4, 3, 2) * 0.1) + 1e-12)

    def test_svt_odd_and_even_tubes(self):
        rng = np.random.default_rng(2)
        for n3 in (1, 3, 4):
            m = rand(rng, 5, 4, n3)
            np.testing.assert_allclose(t_svt(m, 0.7).array, svt_oracle(m, 0.7), atol=1e-10)

    def test_svt_contracts(self):
        m = rand(np.random.default_rng(3), 6, 5, 3)
        out = t_svt(m, 1.0)
        self.assertLessEqual(out.frob_norm(), m.frob_norm())
        self.assertLessEqual(tnn(out), tnn(m))

    def test_soft_threshold(self):
        m = Tensor3(np.array([3.0, -0.5, 1.0, -4.0]).reshape(1, 2, 2))
        np.testing.assert_array_equal(soft_threshold(m, 0.0).array, m.array)
        np.testing.assert_allclose(soft_threshold(m, 1.25).array.ravel(order="F"), [1.75, 0.0, 0.0, -2.75])
        self.assertEqual(soft_threshold(m, 4.0).max_abs(), 0.0)
        with self.assertRaises(ValueError):
            soft_threshold(m, -0.1)


class TestMasks(unittest.TestCase):
    def test_make_mask(self):
        self.assertEqual(make_mask((3, 4, 2), 1.0, seed=0).count, 24)
        mask = make_mask((50, 40, 10), 0.5, seed=1)
        n = 50 * 40 * 10
        self.assertAlmostEqual(mask.fraction_observed, mask.count / n, places=12)
        self.assertLessEqual(abs(mask.fraction_observed - 0.5), 4 * np.sqrt(0.25 / n))
        np.testing.assert_array_equal(mask.observed, make_mask((50, 40, 10), 0.5, seed=1).observed)
        with self.assertRaises(ValueError):
            make_mask((2, 2, 2), 0.0, seed=0)

    def test_apply_and_slices(self):
        x = rand(np.random.default_rng(4), 3, 4, 2)
        mask = make_mask(x.dims, 0.5, seed=2)
        applied = mask.apply(x)
        np.testing.assert_array_equal(applied.array[~mask.observed], 0.0)
        np.testing.assert_array_equal(applied.array[mask.observed], x.array[mask.observed])
        self.assertEqual(mask.lateral([0, 2]).dims, (3, 2, 2))
        self.assertEqual(mask.horizontal([1]).dims, (1, 4, 2))
        self.assertEqual(ObservationMask.full((2, 2, 2)).fraction_observed, 1.0)
        with self.assertRaises(DimMismatch):
            mask.apply(Tensor3.zeros(3, 3, 2))

    def test_corruption(self):
        x = rand(np.random.default_rng(5), 4, 5, 3)
        same, hit = corrupt_salt_pepper(x, 0.0, 5.0, seed=1)
        np.testing.assert_array_equal(same.array, x.array)
        self.assertEqual(hit.count, 0)
        full, hit = corrupt_salt_pepper(x, 1.0, 5.0, seed=1)
        np.testing.assert_array_equal(np.abs(full.array), 5.0)
        self.assertEqual(hit.count, x.array.size)
        with self.assertRaises(ValueError):
            corrupt_salt_pepper(x, 1.5, 5.0, seed=1)

    def test_corruption_count(self):
        x = Tensor3.zeros(100, 100, 100)
        _, hit = corrupt_salt_pepper(x, 0.2, 1.0, seed=3)
        n = x.array.size
        self.assertLessEqual(abs(hit.count - 0.2 * n), 4 * np.sqrt(n * 0.2 * 0.8))


class TestAdmmConfig(unittest.TestCase):
    def test_defaults(self):
        cfg = AdmmConfig()
        self.assertEqual((cfg.rho, cfg.mu0, cfg.mu_max, cfg.eps_abs, cfg.max_iters), (1.1, 1e-3, 1e10, 1e-8, 1000))
        self.assertIsNone(cfg.time_limit_s)
        self.assertAlmostEqual(cfg.lambda_for((50, 40, 5)), 1 / np.sqrt(250))
        self.assertEqual(AdmmConfig(lam=0.3).lambda_for((50, 40, 5)), 0.3)
        self.assertAlmostEqual(default_lambda(10, 20, 5), 0.1)

    def test_from_defaults(self):
        cfg = AdmmConfig.from_defaults(max_iters=50, lam=None)
        self.assertEqual(cfg.max_iters, 50)
        self.assertIsNone(cfg.lam)
        self.assertEqual(cfg.rho, 1.1)

    def test_validation(self):
        for bad in ({"lam": 0.0}, {"rho": 1.0}, {"mu0": 0.0}, {"max_iters": 0}, {"time_limit_s": -1.0}):
            with self.assertRaises(ValueError):
                AdmmConfig(**bad)


class TestAdmmRpca(unittest.TestCase):
    def test_zero_input(self):
        rep = admm_rpca(Tensor3.zeros(4, 3, 2))
        self.assertEqual(rep.iters, 1)
        self.assertIs(rep.stop_reason, StopReason.CONVERGED)
        self.assertEqual(rep.l_hat.max_abs(), 0.0)
        self.assertEqual(rep.e_hat.max_abs(), 0.0)

    def test_recovers_low_rank_plus_sparse(self):
        case = synthetic_rpca_case(50, 50, 5, 2, 0.05, 5.0, seed=11)
        rep = admm_rpca(case.x)
        self.assertTrue(rep.converged)
        self.assertLessEqual(rep.iters, 1000)
        self.assertLessEqual(rse_frob(case.truth, rep.l_hat), 1e-3)
        self.assertTrue(all(max(r) <= 1e-8 for r in rep.residual_history[-1:]))
        self.assertTrue(np.isfinite(np.array(rep.residual_history)).all())
        self.assertTrue(rep.feasibility_tail_nonincreasing(rel_slack=1e-3))
        self.assertEqual(len(rep.objective_history), rep.iters)

    def test_no_corruption(self):
        _, clean = gen_lowrank(30, 30, 4, 2, 0.0, seed=12, unit_entries=True)
        rep = admm_rpca(clean)
        self.assertLessEqual(rse_frob(clean, rep.l_hat), 1e-3)
        self.assertLess(rep.e_hat.frob_norm(), 1e-3 * clean.frob_norm())

    def test_deterministic(self):
        case = synthetic_rpca_case(12, 10, 3, 2, 0.1, 3.0, seed=13)
        cfg = AdmmConfig(max_iters=60)
        a, b = admm_rpca(case.x, cfg), admm_rpca(case.x, cfg)
        np.testing.assert_array_equal(a.l_hat.array, b.l_hat.array)
        self.assertEqual(a.residual_history, b.residual_history)

    def test_max_iters_and_time_limit(self):
        x = rand(np.random.default_rng(14), 8, 8, 3)
        rep = admm_rpca(x, AdmmConfig(max_iters=3))
        self.assertEqual((rep.iters, rep.stop_reason), (3, StopReason.MAX_ITERS))
        rep = admm_rpca(x, AdmmConfig(time_limit_s=1e-9))
        self.assertEqual((rep.iters, rep.stop_reason), (1, StopReason.TIME_LIMIT))

    def test_divergence(self):
        x = rand(np.random.default_rng(15), 4, 4, 2)

        def broken(stack, n3, tau):
            return np.full(stack.shape, np.nan, dtype=complex), 0.0

        with patch("tubal_cur.solvers.admm.svt_stack", side_effect=broken):
            with self.assertRaises(NumericalDivergence) as ctx:
                admm_rpca(x)
        self.assertEqual(ctx.exception.iteration, 1)


class TestAdmmComplete(unittest.TestCase):
    def test_full_observation(self):
        _, clean = gen_lowrank(20, 20, 4, 2, 0.0, seed=16, unit_entries=True)
        rep = admm_complete(clean, ObservationMask.full(clean.dims))
        self.assertLessEqual(rse_frob(clean, rep.l_hat), 1e-3)

    def test_half_observed(self):
        case = synthetic_completion_case(40, 40, 5, 2, 0.5, seed=17)
        rep = admm_complete(case.x, case.mask)
        self.assertLessEqual(rep.iters, 1000)
        self.assertLessEqual(rse_frob(case.truth, rep.l_hat), 1e-2)
        on_mask = np.abs(rep.l_hat.array - case.truth.array)[case.mask.observed]
        self.assertLess(on_mask.max(), 1e-6)
        np.testing.assert_array_equal(rep.e_hat.array[case.mask.observed], 0.0)

    def test_single_observed_entry(self):
        x = rand(np.random.default_rng(18), 6, 6, 3)
        observed = np.zeros(x.dims, dtype=bool)
        observed[2, 3, 1] = True
        mask = ObservationMask(observed)
        rep = admm_complete(mask.apply(x), mask)
        self.assertIn(rep.stop_reason, (StopReason.CONVERGED, StopReason.MAX_ITERS))
        self.assertTrue(np.isfinite(rep.l_hat.array).all())

    def test_empty_mask(self):
        x = Tensor3.zeros(3, 3, 2)
        with self.assertRaises(DegenerateInput):
            admm_complete(x, ObservationMask(np.zeros(x.dims, dtype=bool)))
        with self.assertRaises(DimMismatch):
            admm_complete(x, ObservationMask.full((3, 2, 2)))


class TestCurTnn(unittest.TestCase):
    def test_full_selection_matches_full_solve(self):
        case = synthetic_rpca_case(20, 16, 3, 2, 0.05, 4.0, seed=21)
        full = admm_rpca(case.x)
        with self.assertWarns(IntersectionRankDeficient):
            cur, rep = cur_tnn(case.x, 2, c=16, l=20, seed=1)
        self.assertEqual(cur.lateral_plan.count, 16)
        self.assertEqual(cur.horizontal_plan.count, 20)
        self.assertLessEqual(rse_frob(full.l_hat, cur.approx), 1e-6)
        self.assertEqual(len(rep.parts), 2)
        self.assertEqual(rep.iters, sum(p.iters for p in rep.parts))

    def test_rpca_recovery(self):
        case = synthetic_rpca_case(50, 50, 5, 2, 0.05, 5.0, seed=22)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", IntersectionRankDeficient)
            cur, rep = cur_tnn(case.x, 2, 20, 20, seed=3)
        self.assertLessEqual(rse_frob(case.truth, cur.approx), 5e-2)
        self.assertEqual(cur.c_tensor.dims, (50, 20, 5))
        self.assertEqual(cur.r_tensor.dims, (20, 50, 5))
        self.assertEqual(cur.u_tensor.dims, (20, 20, 5))
        np.testing.assert_allclose((rep.l_hat + rep.e_hat).array, case.x.array, atol=1e-12)

    def test_completion(self):
        case = synthetic_completion_case(40, 40, 5, 2, 0.6, seed=23)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", IntersectionRankDeficient)
            cur, rep = cur_tnn(case.x, 2, 20, 20, seed=4, problem=Problem.COMPLETE, mask=case.mask)
        self.assertLessEqual(rse_frob(case.truth, cur.approx), 5e-2)
        np.testing.assert_array_equal(rep.e_hat.array[case.mask.observed], 0.0)

    def test_uniform_lateral_and_determinism(self):
        case = synthetic_rpca_case(16, 14, 3, 2, 0.05, 3.0, seed=24)
        cfg = AdmmConfig(max_iters=80)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", IntersectionRankDeficient)
            a, _ = cur_tnn(case.x, 2, 8, 8, cfg, seed=5, lateral="uniform")
            b, _ = cur_tnn(case.x, 2, 8, 8, cfg, seed=5, lateral="uniform")
        np.testing.assert_array_equal(a.lateral_plan.indices, b.lateral_plan.indices)
        np.testing.assert_array_equal(a.approx.array, b.approx.array)

    def test_never_factors_the_full_tensor(self):
        case = synthetic_rpca_case(18, 16, 3, 2, 0.05, 3.0, seed=25)
        seen = []

        def spy(x):
            seen.append(x.dims)
            return t_svd(x)

        with patch.object(cur_tnn_module, "t_svd", side_effect=spy), warnings.catch_warnings():
            warnings.simplefilter("ignore", IntersectionRankDeficient)
            cur_tnn(case.x, 2, 6, 6, AdmmConfig(max_iters=50), seed=6)
        self.assertTrue(seen)
        self.assertNotIn(case.x.dims, seen)

    def test_argument_errors(self):
        x = Tensor3.zeros(6, 5, 2)
        with self.assertRaises(RankTooLarge):
            cur_tnn(x, 6, 3, 3)
        with self.assertRaises(ValueError):
            cur_tnn(x, 2, 3, 3, problem=Problem.COMPLETE)
        with self.assertRaises(ValueError):
            cur_tnn(x, 2, 3, 3, lateral="leverage")


if __name__ == "__main__":
    unittest.main()

"""
End-to-end accuracy checks at desk scale.

These take minutes rather than seconds; run them on their own with
    python -m unittest tests.integration.test_acceptance
"""

import csv
import io
import math
import tempfile
import time
import unittest
import warnings
from contextlib import redirect_stderr
from pathlib import Path

import numpy as np

from tubal_cur.__main__ import main
from tubal_cur.algebra import Tensor3, t_svd
from tubal_cur.decomp import rse_frob
from tubal_cur.errors import IntersectionRankDeficient
from tubal_cur.experiments import run_bench_multiply, synthetic_rpca_case
from tubal_cur.sampling import draw_plan, lateral_leverage, spectral_sample_size, near_orthogonality
from tubal_cur.solvers import admm_rpca, cur_tnn, master_bound_terms


def quiet_cur_tnn(*args, **kwargs):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntersectionRankDeficient)
        return cur_tnn(*args, **kwargs)


def best_of(times: int, solve) -> float:
    """Fastest wall time of several identical solves, in seconds."""
    best = math.inf
    for _ in range(times):
        start = time.perf_counter()
        solve()
        best = min(best, time.perf_counter() - start)
    return best


class TestMultiplicationStudy(unittest.TestCase):
    def test_leverage_beats_uniform(self):
        rows = run_bench_multiply(2000, 200, 5, 50, 230, 0.05, reps=10, seed=7)
        means = {r.method: r.metrics for r in rows if r.rep == -1}
        self.assertEqual(len(rows), 2 * 10 + 2)
        self.assertEqual(set(means), {"uniform", "leverage"})
        self.assertLess(means["leverage"]["rfe"], means["uniform"]["rfe"])
        self.assertGreater(means["leverage"]["exact_ms"], 0.0)


class TestCurTnn(unittest.TestCase):
    def test_accuracy_on_the_reference_instance(self):
        case = synthetic_rpca_case(50, 50, 5, 2, 0.05, 5.0, seed=7)
        cur, rep = quiet_cur_tnn(case.x, 2, 20, 20, seed=7)
        self.assertLessEqual(rse_frob(case.truth, cur.approx), 5e-2)
        self.assertLessEqual(rep.iters, 2000)

    def test_faster_than_full_solve(self):
        case = synthetic_rpca_case(50, 50, 5, 2, 0.05, 5.0, seed=7)
        full_s = best_of(3, lambda: admm_rpca(case.x))
        cur_s = best_of(3, lambda: quiet_cur_tnn(case.x, 2, 20, 20, seed=7))
        self.assertLess(cur_s, full_s)

    def test_error_bound(self):
        holds = 0
        for seed in range(20):
            case = synthetic_rpca_case(50, 50, 5, 2, 0.05, 5.0, seed=100 + seed)
            l_star = admm_rpca(case.x).l_hat
            cur, _ = quiet_cur_tnn(case.x, 2, 20, 20, seed=seed)
            lhs, rhs = master_bound_terms(l_star, cur)
            holds += lhs <= 3.0 * rhs
        self.assertGreaterEqual(holds, 18)


class TestRpcaCommand(unittest.TestCase):
    def test_cur_row_is_faster_than_full_row(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "rpca.csv"
            with redirect_stderr(io.StringIO()):
                code = main(["rpca", "--synthetic", "--method", "full,cur", "--c", "20", "--l", "20",
                             "--reps", "3", "--quiet", "--out", str(path)])
            self.assertEqual(code, 0)
            with open(path, newline="", encoding="utf-8") as f:
                rows = [r for r in csv.DictReader(f) if r["rep"] != "-1"]
        wall = {m: min(float(r["wall_ms"]) for r in rows if r["method"] == m) for m in ("full", "cur")}
        self.assertLess(wall["cur"], wall["full"])
        for row in rows:
            self.assertLessEqual(float(row["rse_frob"]), 5e-2)


class TestNearOrthogonality(unittest.TestCase):
    def test_sampled_right_factor(self):
        r, eps, delta = 2, 0.5, 0.1
        c = spectral_sample_size(r, eps, delta)
        a = Tensor3(np.random.default_rng(3).standard_normal((10, 4 * c, 3)))
        v = t_svd(a).truncate(r).V
        p = lateral_leverage(v, r)
        lo, hi = math.sqrt(1 - eps / 2), math.sqrt(1 + eps / 2)
        good = sum(
            bool(((s >= lo) & (s <= hi)).all())
            for s in (near_orthogonality(v, draw_plan(p, c, seed)) for seed in range(50))
        )
        self.assertGreaterEqual(good, 45)


if __name__ == "__main__":
    unittest.main()

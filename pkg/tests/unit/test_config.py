import os
import unittest
from unittest.mock import patch

import tubal_cur
from tubal_cur import config
from tubal_cur.config import (
    SOLVER_CONFIG,
    get_default_format,
    get_default_seed,
    get_solver_config,
    get_worker_count,
    set_worker_count,
)
from tubal_cur.rng import derive_seed, make_rng
from tubal_cur.solvers import AdmmConfig


class TestSolverConfig(unittest.TestCase):
    def test_returns_copy(self):
        cfg = get_solver_config()
        cfg["rho"] = 99.0
        self.assertEqual(SOLVER_CONFIG["rho"], 1.1)
        self.assertEqual(get_solver_config()["rho"], 1.1)

    def test_admm_config_follows_defaults(self):
        with patch.dict(config.SOLVER_CONFIG, {"max_iters": 17}):
            self.assertEqual(AdmmConfig.from_defaults().max_iters, 17)
            self.assertEqual(AdmmConfig.from_defaults(max_iters=5).max_iters, 5)


class TestEnvironment(unittest.TestCase):
    def tearDown(self):
        set_worker_count(None)

    def test_defaults(self):
        with patch.dict(os.environ, {}, clear=True):
            self.assertEqual(get_worker_count(), 1)
            self.assertEqual(get_default_seed(), 7)
            self.assertEqual(get_default_format(), "csv")

    def test_overrides(self):
        env = {"TUBAL_CUR_THREADS": "4", "TUBAL_CUR_SEED": "123", "TUBAL_CUR_FORMAT": "JSON"}
        with patch.dict(os.environ, env, clear=True):
            self.assertEqual(get_worker_count(), 4)
            self.assertEqual(get_default_seed(), 123)
            self.assertEqual(get_default_format(), "json")

    @patch("tubal_cur.utils.print_warning")
    def test_invalid_values_fall_back(self, mock_warn):
        env = {"TUBAL_CUR_THREADS": "0", "TUBAL_CUR_SEED": "abc", "TUBAL_CUR_FORMAT": "xml"}
        with patch.dict(os.environ, env, clear=True):
            self.assertEqual(get_worker_count(), 1)
            self.assertEqual(get_default_seed(), 7)
            self.assertEqual(get_default_format(), "csv")
        self.assertEqual(mock_warn.call_count, 3)

    def test_blank_value_is_unset(self):
        with patch.dict(os.environ, {"TUBAL_CUR_THREADS": "  "}, clear=True):
            self.assertEqual(get_worker_count(), 1)

    def test_process_override(self):
        with patch.dict(os.environ, {"TUBAL_CUR_THREADS": "3"}, clear=True):
            set_worker_count(2)
            self.assertEqual(get_worker_count(), 2)
            set_worker_count(None)
            self.assertEqual(get_worker_count(), 3)
        with self.assertRaises(ValueError):
            set_worker_count(0)


class TestRng(unittest.TestCase):
    def test_derived_seeds(self):
        self.assertEqual(derive_seed(7, "lateral"), derive_seed(7, "lateral"))
        self.assertNotEqual(derive_seed(7, "lateral"), derive_seed(7, "horizontal"))
        self.assertNotEqual(derive_seed(7, "lateral"), derive_seed(8, "lateral"))

    def test_streams_repeat(self):
        a = make_rng(3, "x").standard_normal(5)
        b = make_rng(3, "x").standard_normal(5)
        self.assertEqual(a.tolist(), b.tolist())


class TestPackage(unittest.TestCase):
    def test_exports_resolve(self):
        for name in tubal_cur.__all__:
            self.assertTrue(callable(getattr(tubal_cur, name)), name)
        self.assertFalse(hasattr(tubal_cur, "load_json"))


if __name__ == "__main__":
    unittest.main()

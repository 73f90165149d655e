"""
Runtime configuration: solver defaults, tolerances and environment overrides.
"""

import os

# Try to load environment variables from .env file
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass  # dotenv not installed, rely on system environment variables


# ADMM defaults (rho, mu schedule, stopping rule)
SOLVER_CONFIG = {
    "rho": 1.1,
    "mu0": 1e-3,
    "mu_max": 1e10,
    "eps_abs": 1e-8,
    "max_iters": 1000,
    "time_limit_s": None,
    "cli_time_limit_s": 1200.0,  # 20 minutes
    "log_every": 50,
}

TOLERANCES = {
    "rank": 1e-10,
    "symmetry": 1e-8,
    "orthonormal": 1e-8,
}

# Desk-scale defaults per CLI verb
BENCH_DEFAULTS = {
    "bench-multiply": {"n1": 2000, "n2": 200, "n3": 5, "rank": 50, "slices": "230", "density": 0.05, "reps": 10},
    "decompose": {"n1": 60, "n2": 50, "n3": 8, "rank": 5, "c": "25,35", "l": "25", "noise": 0.1, "reps": 5},
    "rpca": {"n1": 50, "n2": 50, "n3": 5, "rank": 2, "c": 20, "l": 20, "corruption": 0.05, "magnitude": 5.0, "reps": 1},
    "complete": {"n1": 40, "n2": 40, "n3": 5, "rank": 2, "c": 20, "l": 20, "mask_rate": 0.5, "reps": 1},
}

DEFAULT_SEED = 7
DEFAULT_FORMAT = "csv"

_worker_override: int | None = None


def _env_int(name: str, default: int, minimum: int = 0) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        value = minimum - 1
    if value < minimum:
        from .utils import print_warning
        print_warning(f"Ignoring invalid {name}={raw!r}, using {default}")
        return default
    return value


def get_solver_config() -> dict:
    """
    Get the ADMM default parameters.

    Returns:
        A fresh dict; callers may mutate it.
    """
    return dict(SOLVER_CONFIG)


def get_worker_count() -> int:
    """Number of threads used for per-Fourier-slice work."""
    if _worker_override is not None:
        return _worker_override
    return _env_int("TUBAL_CUR_THREADS", 1, minimum=1)


def set_worker_count(n: int | None) -> None:
    """Override the worker count for this process (None restores the env default)."""
    global _worker_override
    if n is not None and n < 1:
        raise ValueError(f"worker count must be >= 1, got {n}")
    _worker_override = n


def get_default_seed() -> int:
    return _env_int("TUBAL_CUR_SEED", DEFAULT_SEED, minimum=0)


def get_default_format() -> str:
    fmt = os.environ.get("TUBAL_CUR_FORMAT", DEFAULT_FORMAT).strip().lower()
    if fmt not in ("csv", "json"):
        from .utils import print_warning
        print_warning(f"Ignoring invalid TUBAL_CUR_FORMAT={fmt!r}, using {DEFAULT_FORMAT}")
        return DEFAULT_FORMAT
    return fmt

"""
Experiment runners behind the CLI verbs.

Each runner loops over repetitions (rep seed = base seed + rep), emits one
MetricsRow per (rep, method) and appends mean rows marked rep = -1.
"""

import time
import warnings
from dataclasses import dataclass, field
from typing import Any, Callable

from tqdm import tqdm

from .algebra import Tensor3, spectral_norm, t_product, t_svd, t_transpose
from .decomp import rfe, rse_frob, rse_spec, t_cur, t_cx, truncated_tsvd
from .errors import IntersectionRankDeficient
from .generators import gen_lowrank, gen_sparse_replicated
from .rng import derive_seed
from .sampling import ProbSpec, auto_slices, horizontal_leverage, rt_product, uniform_probs
from .solvers import (
    AdmmConfig,
    ObservationMask,
    Problem,
    admm_complete,
    admm_rpca,
    corrupt_salt_pepper,
    cur_tnn,
    make_mask,
)
from .utils import print_warning


@dataclass
class MetricsRow:
    experiment: str
    method: str
    rep: int
    seed: int
    params: dict[str, Any] = field(default_factory=dict)
    metrics: dict[str, Any] = field(default_factory=dict)

    def flat(self) -> dict[str, Any]:
        row = {"experiment": self.experiment, "method": self.method, "rep": self.rep, "seed": self.seed}
        row.update(self.params)
        row.update(self.metrics)
        return row


def _ms(start: float) -> float:
    return (time.perf_counter() - start) * 1000.0


def mean_rows(rows: list[MetricsRow], seed: int) -> list[MetricsRow]:
    """
    One averaged row per method (first-seen order), rep = -1.

    Numeric metrics are averaged; non-numeric ones keep the first value.
    """
    groups: dict[tuple, list[MetricsRow]] = {}
    for row in rows:
        key = (row.method, tuple(sorted((k, str(v)) for k, v in row.params.items())))
        groups.setdefault(key, []).append(row)
    out = []
    for members in groups.values():
        first = members[0]
        metrics = {}
        for name, value in first.metrics.items():
            values = [m.metrics.get(name) for m in members]
            if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in values):
                metrics[name] = sum(values) / len(values)
            else:
                metrics[name] = value
        out.append(MetricsRow(first.experiment, first.method, -1, seed, dict(first.params), metrics))
    return out


def _reps(reps: int, desc: str, quiet: bool):
    return tqdm(range(reps), desc=desc, unit="rep", disable=quiet, leave=False)


# =============================================================================
# Randomized multiplication
# =============================================================================

def run_bench_multiply(
    n1: int, n2: int, n3: int, rank: int, slices: int | str, density: float,
    reps: int, seed: int, quiet: bool = True,
) -> list[MetricsRow]:
    """
    Estimate U_r^T * U_r by the rt-product under uniform and leverage sampling.

    U_r holds the top ``rank`` left singular slices of a sparse replicated
    tensor. The inner dimension being sampled is n1.
    Each sampled row also carries the exact product time as ``exact_ms``.
    """
    c = auto_slices(rank) if slices == "auto" else int(slices)
    params = {"n1": n1, "n2": n2, "n3": n3, "rank": rank, "slices": c, "density": density}
    rows: list[MetricsRow] = []
    for rep in _reps(reps, "bench-multiply", quiet):
        s = seed + rep
        x = gen_sparse_replicated(n1, n2, n3, density, s)
        u_r = t_svd(x).truncate(rank).U
        a = t_transpose(u_r)
        norm_f = u_r.frob_norm() ** 2
        norm_2 = spectral_norm(u_r) ** 2

        start = time.perf_counter()
        exact = t_product(a, u_r)
        exact_ms = _ms(start)

        for method, probs in (("uniform", uniform_probs(n1)), ("leverage", horizontal_leverage(u_r))):
            start = time.perf_counter()
            approx, plan = rt_product(a, u_r, probs, c, derive_seed(s, method))
            wall = _ms(start)
            rows.append(MetricsRow("bench-multiply", method, rep, s, params, {
                "rfe": rfe(exact, approx, norm_f),
                "rse_spec": rse_spec(exact, approx, norm_2),
                "kept": plan.count,
                "wall_ms": wall,
                "exact_ms": exact_ms,
            }))
    return rows + mean_rows(rows, seed)


# =============================================================================
# t-CX / t-CUR
# =============================================================================

SCORE_KINDS = ("deterministic", "randomized", "uniform")


def _score_spec(kind: str, rank: int) -> ProbSpec:
    if kind == "uniform":
        return ProbSpec.uniform()
    return ProbSpec.leverage(rank, approx=(kind == "randomized"))


def run_decompose(
    source: Callable[[int], Tensor3], rank: int, cs: list[int], ls: list[int],
    algos: list[str], scores: list[str], reps: int, seed: int,
    params: dict | None = None, factors_out: Callable | None = None, quiet: bool = True,
) -> list[MetricsRow]:
    """
    Run t-CX and/or t-CUR over a grid of (score kind, c, l).

    Args:
        source: Maps a rep seed to the tensor to decompose.
        rank: Target tubal rank (leverage scores and the baseline).
        cs, ls: Lateral and horizontal slice counts.
        algos: Subset of ("cx", "cur").
        scores: Subset of SCORE_KINDS.
        reps, seed: Repetitions and base seed.
        params: Extra constant columns.
        factors_out: Called as factors_out(name, tensor) to persist factors.
    """
    rows: list[MetricsRow] = []
    for rep in _reps(reps, "decompose", quiet):
        s = seed + rep
        a = source(s)
        best_rse = rse_frob(a, truncated_tsvd(a, rank))
        for algo in algos:
            for kind in scores:
                spec = _score_spec(kind, rank)
                for c in cs:
                    for l in (ls if algo == "cur" else [None]):
                        start = time.perf_counter()
                        if algo == "cx":
                            res = t_cx(a, rank, c, spec, s)
                            kept_l = None
                        else:
                            res = t_cur(a, rank, c, l, spec, s)
                            kept_l = res.horizontal_plan.count
                        wall = _ms(start)
                        method = f"t-{algo}-{kind}"
                        row_params = dict(params or {})
                        row_params.update({"rank": rank, "c": c, "l": l})
                        rows.append(MetricsRow("decompose", method, rep, s, row_params, {
                            "rse_frob": res.rse,
                            "best_rse": best_rse,
                            "ratio": res.rse / best_rse if best_rse > 0 else None,
                            "kept_c": res.c_tensor.n2,
                            "kept_l": kept_l,
                            "wall_ms": wall,
                        }))
                        if factors_out is not None:
                            tag = f"{method}_c{c}" + (f"_l{l}" if l is not None else "") + f"_rep{rep}"
                            factors_out(f"{tag}_C", res.c_tensor)
                            if algo == "cur":
                                factors_out(f"{tag}_U", res.u_tensor)
                                factors_out(f"{tag}_R", res.r_tensor)
    return rows + mean_rows(rows, seed)


# =============================================================================
# Robust PCA / completion
# =============================================================================

@dataclass
class RecoveryCase:
    """One problem instance: the data, optional ground truth and mask."""

    x: Tensor3
    truth: Tensor3 | None = None
    mask: ObservationMask | None = None


def synthetic_rpca_case(n1, n2, n3, rank, corruption, magnitude, seed) -> RecoveryCase:
    _, clean = gen_lowrank(n1, n2, n3, rank, 0.0, seed, unit_entries=True)
    x, _ = corrupt_salt_pepper(clean, corruption, magnitude, derive_seed(seed, "corrupt"))
    return RecoveryCase(x=x, truth=clean)


def synthetic_completion_case(n1, n2, n3, rank, mask_rate, seed) -> RecoveryCase:
    _, clean = gen_lowrank(n1, n2, n3, rank, 0.0, seed, unit_entries=True)
    mask = make_mask(clean.dims, mask_rate, derive_seed(seed, "mask"))
    return RecoveryCase(x=mask.apply(clean), truth=clean, mask=mask)


def _recovery_row(experiment, method, rep, s, params, report, truth, wall) -> MetricsRow:
    d_l, d_e, feas = report.final_residuals
    metrics: dict[str, Any] = {}
    if truth is not None:
        metrics["rse_frob"] = rse_frob(truth, report.l_hat)
    metrics.update({
        "iters": report.iters,
        "stop": report.stop_reason.value,
        "res_dl": d_l,
        "res_de": d_e,
        "res_feas": feas,
        "wall_ms": wall,
    })
    return MetricsRow(experiment, method, rep, s, params, metrics)


def _count_rank_deficient(caught: list[warnings.WarningMessage]) -> int:
    """Count rank-deficiency warnings and re-issue any others."""
    count = 0
    for w in caught:
        if issubclass(w.category, IntersectionRankDeficient):
            count += 1
        else:
            warnings.warn_explicit(w.message, w.category, w.filename, w.lineno)
    return count


def run_recovery(
    problem: Problem, case_for: Callable[[int], RecoveryCase], methods: list[str],
    rank: int, c: int, l: int, cfg: AdmmConfig, reps: int, seed: int,
    params: dict | None = None, on_recovered: Callable | None = None, quiet: bool = True,
) -> list[MetricsRow]:
    """
    Full ADMM and/or CUR t-NN on each repetition's instance.

    Args:
        problem: Problem.RPCA or Problem.COMPLETE.
        case_for: Maps a rep seed to a RecoveryCase.
        methods: Subset of ("full", "cur").
        rank, c, l: CUR t-NN parameters.
        cfg: ADMM parameters.
        on_recovered: Called as on_recovered(method, rep, L̂).
    """
    experiment = problem.value
    row_params = dict(params or {})
    row_params.update({"rank": rank, "c": c, "l": l})
    rows: list[MetricsRow] = []
    deficient = 0
    for rep in _reps(reps, experiment, quiet):
        s = seed + rep
        case = case_for(s)
        for method in methods:
            start = time.perf_counter()
            if method == "full":
                if problem is Problem.COMPLETE:
                    report = admm_complete(case.x, case.mask, cfg)
                else:
                    report = admm_rpca(case.x, cfg)
            else:
                with warnings.catch_warnings(record=True) as caught:
                    warnings.simplefilter("always", IntersectionRankDeficient)
                    _, report = cur_tnn(case.x, rank, c, l, cfg, derive_seed(s, "cur"), problem, case.mask)
                deficient += _count_rank_deficient(caught)
            wall = _ms(start)
            rows.append(_recovery_row(experiment, method, rep, s, row_params, report, case.truth, wall))
            if on_recovered is not None:
                on_recovered(method, rep, report.l_hat)
    if deficient:
        print_warning(f"CUR t-NN intersection lost tubal rank in {deficient} of {reps} solve(s); "
                      "the recovered tensor may be poor (try larger --c/--l)")
    return rows + mean_rows(rows, seed)

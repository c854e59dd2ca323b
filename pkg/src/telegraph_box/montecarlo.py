"""Estimation layer over the array simulation engines.

Work is cut into fixed-size batches; batch b consumes the three random
streams (3b, 3b+1, 3b+2) for origin phases, level phases, and absorption
paths.  Per-batch moments are reduced with a fixed pairwise tree, so the
result depends only on (seed, batch layout), never on worker count or
completion order, and the estimate over two half-ranges merges bit for
bit into the full-range estimate.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import analytics
from .core import Boundary, ModelParams, RandomSource, SwitchingProb, validate_params
from .errors import DomainError
from .simulate import _run_absorption, _run_phases

BATCH_SIZE = 2 ** 14

# accumulator rows, in fixed order
_QUANTITIES = (
    "p00", "p0h", "ph0", "phh",
    "m00", "m0h", "mh0", "mhh",
    "mean_m", "absorption_time",
    "wald_half_mu", "wald_minus_one",
)
_NQ = len(_QUANTITIES)


@dataclass(frozen=True)
class MCSummary:
    """Point estimates with standard errors from one estimation run.

    phase_freqs and cycle_means are ordered (00, 0H, H0, HH); the se_*
    tuples match.  Each standard error is the sample standard deviation
    (ddof=1) divided by sqrt(n_paths).
    """

    n_paths: int
    phase_freqs: tuple[float, float, float, float]
    cycle_means: tuple[float, float, float, float]
    mean_m: float
    mean_absorption_time: float
    se_phase_freqs: tuple[float, float, float, float]
    se_cycle_means: tuple[float, float, float, float]
    se_mean_m: float
    se_mean_absorption_time: float


@dataclass(frozen=True)
class QuantityRecord:
    """One validated quantity: estimate vs closed form."""

    name: str
    analytic: float
    estimate: float
    standard_error: float
    z_score: float


@dataclass(frozen=True)
class ValidationReport:
    records: tuple[QuantityRecord, ...]
    overall_pass: bool
    n_paths: int
    seed: int
    z_max: float


def _batch_moments(p: ModelParams, s: SwitchingProb, seed: int,
                   batch: int, size: int) -> np.ndarray:
    """(count, sum, sum of squares) rows for one batch, shape (_NQ, 3)."""
    lam, mu = p.lam, p.mu
    out = np.empty((_NQ, 3))

    endl, dur, _, t_stop, y_stop = _run_phases(
        Boundary.ORIGIN, p, RandomSource(seed, 3 * batch), size)
    cols = {
        "p00": (~endl).astype(float),
        "p0h": endl.astype(float),
        "m00": np.where(~endl, dur, 0.0),
        "m0h": np.where(endl, dur, 0.0),
    }
    for theta, name in ((mu / 2.0, "wald_half_mu"), (-1.0, "wald_minus_one")):
        cols[name] = np.exp(theta * y_stop - lam * t_stop * theta / (mu - theta))

    endl, dur, _, _, _ = _run_phases(
        Boundary.LEVEL, p, RandomSource(seed, 3 * batch + 1), size)
    cols["ph0"] = (~endl).astype(float)
    cols["phh"] = endl.astype(float)
    cols["mh0"] = np.where(~endl, dur, 0.0)
    cols["mhh"] = np.where(endl, dur, 0.0)

    m, total, _ = _run_absorption(p, s, RandomSource(seed, 3 * batch + 2), size)
    cols["mean_m"] = m.astype(float)
    cols["absorption_time"] = total

    for i, name in enumerate(_QUANTITIES):
        x = cols[name]
        out[i] = (x.size, x.sum(), (x * x).sum())
    return out


def _reduce_pairwise(blocks: list[np.ndarray]) -> np.ndarray:
    """Combine per-batch moments with a fixed binary tree (order-stable)."""
    if len(blocks) == 1:
        return blocks[0]
    mid = len(blocks) // 2
    return _reduce_pairwise(blocks[:mid]) + _reduce_pairwise(blocks[mid:])


def _gather(p: ModelParams, s: SwitchingProb, n_paths: int, seed: int,
            threads: int | None) -> np.ndarray:
    validate_params(p)
    if n_paths < 10 ** 3:
        raise DomainError(f"need at least 1000 paths, got {n_paths}")
    if seed < 0:
        raise DomainError(f"seed must be nonnegative, got {seed}")
    sizes = [BATCH_SIZE] * (n_paths // BATCH_SIZE)
    if n_paths % BATCH_SIZE:
        sizes.append(n_paths % BATCH_SIZE)
    jobs = list(enumerate(sizes))
    if threads is not None and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            blocks = list(pool.map(
                lambda job: _batch_moments(p, s, seed, job[0], job[1]), jobs))
    else:
        blocks = [_batch_moments(p, s, seed, b, k) for b, k in jobs]
    return _reduce_pairwise(blocks)


def _mean_se(row: np.ndarray) -> tuple[float, float]:
    n, sx, sxx = row
    mean = sx / n
    var = max(sxx - sx * sx / n, 0.0) / (n - 1.0)
    return float(mean), float(np.sqrt(var / n))


def estimate(p: ModelParams, s: SwitchingProb, n_paths: int, seed: int,
             threads: int | None = None) -> MCSummary:
    """Sample means and standard errors over n_paths phases of each start
    boundary plus n_paths absorption paths, deterministic in (seed)."""
    mom = _gather(p, s, n_paths, seed, threads)
    stats = dict(zip(_QUANTITIES, (_mean_se(row) for row in mom)))
    return MCSummary(
        n_paths=n_paths,
        phase_freqs=tuple(stats[k][0] for k in ("p00", "p0h", "ph0", "phh")),
        cycle_means=tuple(stats[k][0] for k in ("m00", "m0h", "mh0", "mhh")),
        mean_m=stats["mean_m"][0],
        mean_absorption_time=stats["absorption_time"][0],
        se_phase_freqs=tuple(stats[k][1] for k in ("p00", "p0h", "ph0", "phh")),
        se_cycle_means=tuple(stats[k][1] for k in ("m00", "m0h", "mh0", "mhh")),
        se_mean_m=stats["mean_m"][1],
        se_mean_absorption_time=stats["absorption_time"][1],
    )


def _analytic_values(p: ModelParams, s: SwitchingProb) -> dict[str, float]:
    pm = analytics.phase_probabilities(p)
    cm = analytics.expected_cycles(p)
    rep = analytics.expected_absorption_time(p, s)
    return {
        "p00": pm.p00, "p0h": pm.p0h, "ph0": pm.ph0, "phh": pm.phh,
        "m00": cm.m00, "m0h": cm.m0h, "mh0": cm.mh0, "mhh": cm.mhh,
        "mean_m": 1.0 / s.alpha,
        "absorption_time": rep.expected_absorption_time,
        "wald_half_mu": 1.0,
        "wald_minus_one": 1.0,
    }


def validate(p: ModelParams, s: SwitchingProb, n_paths: int, seed: int,
             z_max: float = 4.0, threads: int | None = None) -> ValidationReport:
    """Compare every estimable quantity against its closed form.

    One record per quantity; overall_pass is true iff every |z| <= z_max.
    A zero standard error yields z = 0 only on exact agreement.
    """
    mom = _gather(p, s, n_paths, seed, threads)
    analytic = _analytic_values(p, s)
    records = []
    for name, row in zip(_QUANTITIES, mom):
        mean, se = _mean_se(row)
        ref = analytic[name]
        if se == 0.0:
            z = 0.0 if mean == ref else float("inf")
        else:
            z = (mean - ref) / se
        records.append(QuantityRecord(name, ref, mean, se, z))
    ok = all(abs(r.z_score) <= z_max for r in records)
    return ValidationReport(tuple(records), ok, n_paths, seed, z_max)


def _sig(x: float) -> float:
    # 12 significant digits, enough to express every test tolerance
    return float(f"{x:.12g}")


def validation_report_json(rep: ValidationReport) -> str:
    """Stable JSON rendering; parsing and re-emitting is byte-identical."""
    doc = {
        "n_paths": rep.n_paths,
        "seed": rep.seed,
        "z_max": _sig(rep.z_max),
        "overall_pass": rep.overall_pass,
        "records": [
            {
                "name": r.name,
                "analytic": _sig(r.analytic),
                "estimate": _sig(r.estimate),
                "standard_error": _sig(r.standard_error),
                "z_score": _sig(r.z_score),
            }
            for r in rep.records
        ],
    }
    return json.dumps(doc, indent=2)


def validation_report_table(rep: ValidationReport) -> str:
    head = (f"{'quantity':<16}  {'analytic':>18}  {'estimate':>18}"
            f"  {'std error':>12}  {'z':>8}")
    lines = [head, "-" * len(head)]
    for r in rep.records:
        lines.append(
            f"{r.name:<16}  {r.analytic:>18.12g}  {r.estimate:>18.12g}"
            f"  {r.standard_error:>12.6g}  {r.z_score:>8.3f}")
    lines.append(f"overall: {'PASS' if rep.overall_pass else 'FAIL'} "
                 f"(n={rep.n_paths}, seed={rep.seed}, z_max={rep.z_max:g})")
    return "\n".join(lines)

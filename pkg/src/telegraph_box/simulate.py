"""Exact event-driven simulation of the confined motion.

No time grid: every boundary hit time is computed algebraically from the
exponential sojourn draws, so path identities hold to rounding error.
Scalar entry points return full records with the raw draws attached; the
underscore-prefixed array engines trade records for throughput and feed
the estimation layer.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from itertools import zip_longest
from typing import IO, Iterable

import numpy as np

from .core import Boundary, ModelParams, RandomSource, SwitchingProb, exp_draw, validate_params
from .errors import IdentityViolation, MaxPhasesExceeded, ReversalCapExceeded

# defensive cap on velocity reversals within one phase; phases end with
# probability one, so tripping this signals corrupted parameters
_REVERSAL_CAP = 10 ** 7

# |C - (2T +/- H)| must stay below this times max(1, C)
_DUAL_TOL = 1e-9


@dataclass(frozen=True)
class PhaseRecord:
    """One completed boundary-to-boundary excursion.

    ups and downs hold the raw (untruncated) exponential draws in order;
    the final sojourn was cut short at the boundary and final_cut is the
    portion actually traveled.  duration is the sum of all complete
    sojourns plus final_cut.  n_switches counts velocity reversals, one
    per complete sojourn.
    """

    start: Boundary
    end: Boundary
    duration: float
    n_switches: int
    ups: tuple[float, ...]
    downs: tuple[float, ...]
    final_cut: float

    @property
    def draws(self) -> tuple[tuple[float, float], ...]:
        """(U_i, D_i) pairs in draw order; the absent trailing slot is 0.0."""
        return tuple(zip_longest(self.ups, self.downs, fillvalue=0.0))


@dataclass(frozen=True)
class PathRecord:
    """A full trajectory from the origin to absorption."""

    phases: tuple[PhaseRecord, ...]
    m: int
    absorbed_at: Boundary
    total_time: float


@dataclass(frozen=True)
class DualCheck:
    """Result of replaying a phase through its compound-Poisson dual."""

    t_stop: float
    identity_residual: float


def simulate_phase(start: Boundary, p: ModelParams, rng: RandomSource) -> PhaseRecord:
    """Run one phase from `start` until the first boundary contact.

    Alternates Exp(lam) upward and Exp(mu) downward sojourns, the first
    one directed away from the start boundary, and truncates the sojourn
    during which the particle reaches a boundary.
    """
    validate_params(p)
    h = p.effective_level
    going_up = start is Boundary.ORIGIN
    pos = 0.0 if going_up else h
    ups: list[float] = []
    downs: list[float] = []
    duration = 0.0
    while True:
        if len(ups) + len(downs) >= _REVERSAL_CAP:
            raise ReversalCapExceeded(_REVERSAL_CAP)
        if going_up:
            u = exp_draw(p.lam, rng)
            ups.append(u)
            gap = h - pos
            if u >= gap:
                end, final_cut = Boundary.LEVEL, gap
                duration += gap
                break
            pos += u
            duration += u
        else:
            d = exp_draw(p.mu, rng)
            downs.append(d)
            gap = pos
            if d >= gap:
                end, final_cut = Boundary.ORIGIN, gap
                duration += gap
                break
            pos -= d
            duration += d
        going_up = not going_up
    return PhaseRecord(
        start=start, end=end, duration=duration,
        n_switches=len(ups) + len(downs) - 1,
        ups=tuple(ups), downs=tuple(downs), final_cut=final_cut,
    )


def simulate_until_absorption(p: ModelParams, s: SwitchingProb, rng: RandomSource,
                              max_phases: int = 10 ** 6) -> PathRecord:
    """Chain phases from the origin, flipping a Bernoulli(alpha) coin at
    every boundary contact, until the particle is absorbed.

    Raises MaxPhasesExceeded if absorption has not happened within
    max_phases; the error keeps censored paths out of any statistics.
    """
    validate_params(p)
    if max_phases < 1:
        raise MaxPhasesExceeded(max_phases)
    phases: list[PhaseRecord] = []
    where = Boundary.ORIGIN
    total = 0.0
    for _ in range(max_phases):
        ph = simulate_phase(where, p, rng)
        phases.append(ph)
        total += ph.duration
        where = ph.end
        if rng.gen.random() < s.alpha:
            return PathRecord(tuple(phases), len(phases), where, total)
    raise MaxPhasesExceeded(max_phases)


def _dual_scan_from_origin(ups, downs, h):
    """First boundary crossing of the dual walk for an origin-start phase.

    Returns (end, t_stop, duration) computed only from the raw draws:
    cumulative up time plays the role of the dual clock, cumulative down
    time is the jump process.
    """
    cu = cd = 0.0
    for j, u in enumerate(ups):
        cu += u
        if cu - cd >= h:
            return Boundary.LEVEL, cd + h, 2.0 * cd + h, j + 1, j
        if j < len(downs):
            cd += downs[j]
            if cd >= cu:
                return Boundary.ORIGIN, cu, 2.0 * cu, j + 1, j + 1
    return None


def _dual_scan_from_level(ups, downs, h):
    cu = cd = 0.0
    for j, d in enumerate(downs):
        cd += d
        if cd - cu >= h:
            return Boundary.ORIGIN, cu, 2.0 * cu + h, j, j + 1
        if j < len(ups):
            cu += ups[j]
            if cu >= cd:
                return Boundary.LEVEL, cd, 2.0 * cd, j + 1, j + 1
    return None


def dual_representation_check(ph: PhaseRecord, p: ModelParams) -> DualCheck:
    """Replay a phase through its compound-Poisson dual and verify the
    duration identity.

    The dual walk rebuilt from the same draws must end at the same
    boundary, consume exactly the recorded draws, and predict the phase
    duration as 2*T (returning phases), 2*T - H (origin to level) or
    2*T + H (level to origin).  Raises IdentityViolation otherwise;
    a violation means the simulator itself is wrong.
    """
    validate_params(p)
    h = p.effective_level
    scan = (_dual_scan_from_origin if ph.start is Boundary.ORIGIN
            else _dual_scan_from_level)(ph.ups, ph.downs, h)
    if scan is None:
        raise IdentityViolation(float("nan"), "dual walk never crossed a boundary")
    end, t_stop, c_dual, n_ups, n_downs = scan
    if end is not ph.end:
        raise IdentityViolation(
            float("nan"), f"dual walk ends at {end.value}, phase says {ph.end.value}")
    if n_ups != len(ph.ups) or n_downs != len(ph.downs):
        raise IdentityViolation(
            float("nan"),
            f"dual walk used {n_ups}+{n_downs} draws, record holds "
            f"{len(ph.ups)}+{len(ph.downs)}")
    residual = abs(ph.duration - c_dual)
    if residual >= _DUAL_TOL * max(1.0, ph.duration):
        raise IdentityViolation(residual, "duration identity broken")
    return DualCheck(t_stop=t_stop, identity_residual=residual)


def path_dump_csv(paths: Iterable[PathRecord], out: IO[str]) -> None:
    """Write one row per phase: path_id,phase_index,start,end,duration,n_switches."""
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["path_id", "phase_index", "start", "end", "duration", "n_switches"])
    for pid, path in enumerate(paths):
        for k, ph in enumerate(path.phases):
            w.writerow([pid, k, ph.start.value, ph.end.value,
                        f"{ph.duration:.12g}", ph.n_switches])


# ---------------------------------------------------------------------------
# array engines


def _run_phases(start: Boundary, p: ModelParams, rng: RandomSource, n: int):
    """Simulate n independent phases from one boundary, vectorized.

    Returns arrays (end_is_level, duration, n_switches, t_stop, y_stop):
    t_stop is the dual stopping time rebuilt from raw cumulative sums,
    y_stop the dual jump total at the stop, so duration and t_stop come
    from independent accumulations and identity checks stay meaningful.
    """
    validate_params(p)
    h = p.effective_level
    lam, mu = p.lam, p.mu
    pos = np.zeros(n) if start is Boundary.ORIGIN else np.full(n, h)
    cu = np.zeros(n)
    cd = np.zeros(n)
    dur = np.zeros(n)
    ndraw = np.zeros(n, dtype=np.int64)
    end_level = np.zeros(n, dtype=bool)
    t_stop = np.zeros(n)
    y_stop = np.zeros(n)
    active = np.arange(n)
    going_up = start is Boundary.ORIGIN
    rounds = 0
    while active.size:
        rounds += 1
        if rounds > _REVERSAL_CAP:
            raise ReversalCapExceeded(_REVERSAL_CAP)
        if going_up:
            draw = exp_draw(lam, rng, active.size)
            cu[active] += draw
            gap = h - pos[active]
            hit = draw >= gap
            fin = active[hit]
            dur[fin] += gap[hit]
            end_level[fin] = True
            # dual clock at the stop: origin starts still owe the level
            # offset, level starts have simply returned
            t_stop[fin] = cd[fin] + (h if start is Boundary.ORIGIN else 0.0)
            y_stop[fin] = cd[fin]
        else:
            draw = exp_draw(mu, rng, active.size)
            cd[active] += draw
            gap = pos[active]
            hit = draw >= gap
            fin = active[hit]
            dur[fin] += gap[hit]
            t_stop[fin] = cu[fin]
            y_stop[fin] = cd[fin]
        ndraw[active] += 1
        keep = active[~hit]
        step = draw[~hit]
        pos[keep] += step if going_up else -step
        dur[keep] += step
        active = keep
        going_up = not going_up
    return end_level, dur, ndraw - 1, t_stop, y_stop


def _run_absorption(p: ModelParams, s: SwitchingProb, rng: RandomSource, n: int,
                    max_phases: int = 10 ** 6):
    """Simulate n absorption paths from the origin, vectorized.

    Returns (m, total_time, absorbed_at_level).  Paths advance one phase
    per outer round; within a round directions differ per path, so each
    inner draw lane is scaled by the per-path rate.
    """
    validate_params(p)
    h = p.effective_level
    lam, mu = p.lam, p.mu
    at_level = np.zeros(n, dtype=bool)
    total = np.zeros(n)
    m = np.zeros(n, dtype=np.int64)
    absorbed_level = np.zeros(n, dtype=bool)
    alive = np.arange(n)
    for _ in range(max_phases):
        k = alive.size
        going_up = ~at_level[alive]
        pos = np.where(going_up, 0.0, h)
        end_level = np.zeros(k, dtype=bool)
        dur = np.zeros(k)
        run = np.arange(k)
        rounds = 0
        while run.size:
            rounds += 1
            if rounds > _REVERSAL_CAP:
                raise ReversalCapExceeded(_REVERSAL_CAP)
            up = going_up[run]
            rate = np.where(up, lam, mu)
            draw = rng.gen.standard_exponential(run.size, method="inv") / rate
            gap = np.where(up, h - pos[run], pos[run])
            hit = draw >= gap
            fin = run[hit]
            dur[fin] += gap[hit]
            end_level[fin] = up[hit]
            keep = run[~hit]
            pos[keep] += np.where(up[~hit], draw[~hit], -draw[~hit])
            dur[keep] += draw[~hit]
            going_up[keep] = ~going_up[keep]
            run = keep
        total[alive] += dur
        m[alive] += 1
        at_level[alive] = end_level
        coin = rng.gen.random(k) < s.alpha
        done = alive[coin]
        absorbed_level[done] = end_level[coin]
        alive = alive[~coin]
        if alive.size == 0:
            return m, total, absorbed_level
    raise MaxPhasesExceeded(max_phases)

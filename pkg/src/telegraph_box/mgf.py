"""Exponential-martingale transform layer.

The confined motion has a dual clock: measure time only while the particle
moves up, and let Y(t) be the downward time accumulated by then.  Boundary
visits become linear first crossings of Y, and the exponential martingale
exp(theta*Y(t) - lam*t*theta/(mu - theta)) turns the four phase outcomes
into a pair of two-by-two linear systems.  This module exposes the
frequency map omega(theta), its root pair, the resulting restricted
transforms, and the per-descent conditional laws for phases started at
the upper boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _forms
from .core import ModelParams, validate_params
from .errors import DomainError

# below this spread (scaled by the level) the two roots are treated as
# coincident and the confluent limit forms take over
_ROOT_MERGE = 1e-8


@dataclass(frozen=True)
class RootPair:
    """Real roots theta1 <= theta2 of theta^2 + theta*(lam - mu - omega) + mu*omega = 0.

    Both satisfy omega_of_theta(theta_i) == omega; theta2 < mu on the
    admissible range omega <= (sqrt(lam) - sqrt(mu))^2.
    """

    theta1: float
    theta2: float
    omega: float


def omega_bound(p: ModelParams) -> float:
    """Largest admissible transform argument, (sqrt(lam) - sqrt(mu))^2."""
    return (math.sqrt(p.lam) - math.sqrt(p.mu)) ** 2


def omega_of_theta(theta: float, p: ModelParams) -> float:
    """Frequency omega = theta*(mu - lam - theta)/(mu - theta), theta < mu."""
    validate_params(p)
    if theta >= p.mu:
        raise DomainError(f"theta must be below mu={p.mu}, got {theta}")
    return theta * (p.mu - p.lam - theta) / (p.mu - theta)


def theta_roots(omega: float, p: ModelParams) -> RootPair:
    """Solve the exponent quadratic for a given frequency.

    Stable form: the larger-magnitude root avoids cancellation, the other
    follows from the product mu*omega.  Raises DomainError when omega
    exceeds omega_bound (complex roots).
    """
    validate_params(p)
    lam, mu = p.lam, p.mu
    if omega > omega_bound(p):
        raise DomainError(
            f"omega={omega} above the admissible bound {omega_bound(p)}"
        )
    b = lam - mu - omega
    c = mu * omega
    disc = omega * omega - 2.0 * (lam + mu) * omega + (lam - mu) ** 2
    if disc < 0.0:
        disc = 0.0  # roundoff at the boundary, roots coincide there
    q = -(b + math.copysign(math.sqrt(disc), b)) / 2.0
    other = c / q if q != 0.0 else 0.0
    t1, t2 = (q, other) if q <= other else (other, q)
    return RootPair(t1, t2, omega)


def transform_from_origin(omega: float, p: ModelParams) -> tuple[float, float]:
    """Restricted transforms (F00, F0H) of a phase started at the origin.

    F00 averages exp(omega*T) over phases that return to the origin,
    F0H over phases that reach the level first; at omega=0 the pair is
    exactly the phase-probability row (P00, P0H).
    """
    validate_params(p)
    lam, mu, h = p.lam, p.mu, p.effective_level
    if omega == 0.0:
        cv = _forms.closed_values(lam, mu, h)
        return cv.p00, cv.p0h
    rp = theta_roots(omega, p)
    t1, t2 = rp.theta1, rp.theta2
    delta = t2 - t1
    if delta * max(1.0, h) < _ROOT_MERGE:
        ts = 0.5 * (t1 + t2)
        g = mu - ts
        scale = 1.0 + h * g
        return h * g * g / (mu * scale), math.exp(h * ts) / scale
    emd = math.expm1(-h * delta)
    den = (mu - t1) - (mu - t2) * (emd + 1.0)  # same-sign terms, no blowup
    f00 = -emd * (mu - t1) * (mu - t2) / (mu * den)
    f0h = delta * math.exp(h * t1) / den
    return f00, f0h


def transform_from_H(omega: float, d: float, p: ModelParams) -> tuple[float, float]:
    """Restricted transforms (FHH, FH0) of a phase started at the level,
    conditioned on the first descent lasting d.

    At omega=0 returns the conditional outcome probabilities
    (1 - P_hit, P_hit).  A descent d >= H reaches the origin outright in
    dual time zero, so the pair degenerates to (0, 1) for every omega.
    """
    validate_params(p)
    lam, mu, h = p.lam, p.mu, p.effective_level
    if d < 0.0 or not math.isfinite(d):
        raise DomainError(f"descent duration must be finite and >= 0, got {d}")
    if d >= h:
        return 0.0, 1.0
    if omega == 0.0:
        ph = _forms.conditional_hit(lam, mu, h, d)
        return 1.0 - ph, ph
    rp = theta_roots(omega, p)
    t1, t2 = rp.theta1, rp.theta2
    delta = t2 - t1
    a = h - d
    if delta * max(1.0, h) < _ROOT_MERGE:
        ts = 0.5 * (t1 + t2)
        g = mu - ts
        scale = 1.0 + h * g
        fhh = math.exp(ts * d) * (1.0 + a * g) / scale
        fh0 = d * g * g * math.exp(-ts * a) / (mu * scale)
        return fhh, fh0
    fhh = (math.exp(t1 * d) * ((mu - t2) * math.expm1(-delta * a) - delta)
           / ((mu - t2) * math.expm1(-delta * h) - delta))
    fh0 = (-math.expm1(-delta * d) * (mu - t1) * (mu - t2) * math.exp(-t2 * a)
           / (mu * (delta - (mu - t2) * math.expm1(-delta * h))))
    return fhh, fh0


def conditional_hit_prob(d: float, p: ModelParams) -> float:
    """Probability that a phase from the level ends at the origin, given
    its first descent lasts d.  Returns 1 for d >= H (straight drop)."""
    validate_params(p)
    if d < 0.0 or not math.isfinite(d):
        raise DomainError(f"descent duration must be finite and >= 0, got {d}")
    return _forms.conditional_hit(p.lam, p.mu, p.effective_level, d)


def conditional_cycle_means(d: float, p: ModelParams) -> tuple[float, float]:
    """Restricted dual-time means (MHH, MH0) of a phase from the level,
    given the first descent lasts d < H.

    MHH averages the dual stopping time over phases that return to the
    level, MH0 over phases that reach the origin; the corresponding
    phase durations follow as 2*MHH and 2*MH0 + H*P_hit.  Requires
    clearly distinct rates (DegenerateRates otherwise).
    """
    validate_params(p)
    h = p.effective_level
    if not 0.0 <= d < h:
        raise DomainError(f"descent duration must lie in [0, H={h}), got {d}")
    return _forms.conditional_means(p.lam, p.mu, h, d)


def wald_statistic(theta: float, y_at_stop: float, t_stop: float,
                   p: ModelParams) -> float:
    """Optional-stopping statistic exp(theta*y - lam*t*theta/(mu - theta)).

    Over phases started at the origin, with (y, t) the dual coordinates
    at the phase end, its expectation is exactly 1 for any theta < mu.
    """
    validate_params(p)
    if theta >= p.mu:
        raise DomainError(f"theta must be below mu={p.mu}, got {theta}")
    return math.exp(theta * y_at_stop - p.lam * t_stop * theta / (p.mu - theta))

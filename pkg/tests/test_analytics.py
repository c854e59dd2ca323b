"""Closed-form phase probabilities, cycle means, and the absorption chain.

Oracles: 40-digit independent evaluations frozen as float64 literals,
plus exact rationals for the equal-rate point (0.5, 0.5, 10).
"""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from telegraph_box import (
    Boundary,
    InvalidIndex,
    ModelParams,
    SwitchingProb,
    expected_absorption_time,
    expected_cycles,
    expected_length_L,
    expected_truncated_times,
    matrix_power,
    phase_probabilities,
    q_sum,
)

P121 = ModelParams(1.0, 2.0, 1.0)
PEQ = ModelParams(0.5, 0.5, 10.0)
P255 = ModelParams(2.0, 0.5, 5.0)

rates = st.floats(min_value=0.05, max_value=20.0, allow_nan=False)
levels = st.floats(min_value=0.1, max_value=30.0, allow_nan=False)


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


PHASE_REF = {
    P121: (0.38730016321971794, 0.6126998367802821,
           0.2253996735605641, 0.7746003264394359),
    PEQ: (5.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0, 5.0 / 6.0),
    P255: (0.9995851293577722, 0.00041487064222783755,
           0.750103717660557, 0.24989628233944305),
}

TIME_REF = {
    P121: (0.1475877943364138, 0.6905117160044323,
           0.2951755886728276, 0.02862539064548017),
    PEQ: (650.0 / 216.0, 610.0 / 216.0, 650.0 / 216.0, 125.0 / 108.0),
    P255: (0.6631166632374014, 0.002581971930733622,
           0.16577916580935034, 0.9177961753986159),
}

CYCLE_REF = {
    P121: (0.2951755886728276, 0.7683235952285826,
           0.2826504548515244, 0.5903511773456552),
    PEQ: (650.0 / 108.0, 430.0 / 108.0, 430.0 / 108.0, 650.0 / 108.0),
    P255: (1.3262333264748027, 0.003089590650328056,
           5.586110939100017, 0.3315583316187007),
}

KAPPA_REF = {
    P121: (0.7621364943896823, 1.2539967356056407,
           1.2539967356056407, 0.7621364943896823),
    PEQ: (650.0 / 90.0, 430.0 / 18.0, 430.0 / 18.0, 650.0 / 90.0),
    P255: (1.3267837701096055, 7.447118055249913,
           7.447118055249913, 1.3267837701096055),
}

ETA_REF = {
    P121: {0.2: 4.781157938803137, 0.5: 2.0,
           0.8: 1.299218073981598, 1.0: 1.0634991839014103},
    PEQ: {0.2: 50.0, 0.5: 20.0, 0.8: 12.5, 1.0: 10.0},
    P255: {0.2: 6.656127503330202, 0.5: 2.6608206985575578,
           0.8: 1.6621545312474828, 1.0: 1.3293229171251308},
}

LENGTH_REF = {
    P121: {1: 1.0634991839014103, 2: 2.010280548966595,
           3: 2.9381652420102466, 5: 4.787320551997691},
    PEQ: {1: 10.0, 2: 20.0, 3: 30.0, 5: 50.0},
    P255: {1: 1.3293229171251308, 2: 2.6605494044487408,
           3: 3.992250797152732, 5: 6.655920101263959},
}


@pytest.mark.parametrize("p", PHASE_REF)
def test_phase_probabilities_frozen(p):
    pm = phase_probabilities(p)
    want = PHASE_REF[p]
    for got, ref in zip((pm.p00, pm.p0h, pm.ph0, pm.phh), want):
        assert rel(got, ref) < 1e-13


def test_phase_matrix_entry_lookup():
    pm = phase_probabilities(P121)
    assert pm.entry(Boundary.ORIGIN, Boundary.ORIGIN) == pm.p00
    assert pm.entry(Boundary.ORIGIN, Boundary.LEVEL) == pm.p0h
    assert pm.entry(Boundary.LEVEL, Boundary.ORIGIN) == pm.ph0
    assert pm.entry(Boundary.LEVEL, Boundary.LEVEL) == pm.phh


@given(rates, rates, levels)
@settings(max_examples=150)
def test_phase_rows_sum_to_one(lam, mu, h):
    pm = phase_probabilities(ModelParams(lam, mu, h))
    assert abs(pm.p00 + pm.p0h - 1.0) < 1e-12
    assert abs(pm.ph0 + pm.phh - 1.0) < 1e-12


@given(rates, rates, levels)
@settings(max_examples=150)
def test_phase_detailed_balance(lam, mu, h):
    # mu * p00 == lam * phh links the two start boundaries
    pm = phase_probabilities(ModelParams(lam, mu, h))
    assert rel(mu * pm.p00, lam * pm.phh) < 1e-10


@given(rates, rates, levels)
@settings(max_examples=100)
def test_phase_swap_symmetry(lam, mu, h):
    a = phase_probabilities(ModelParams(lam, mu, h))
    b = phase_probabilities(ModelParams(mu, lam, h))
    assert rel(a.p00, b.phh) < 1e-10
    assert rel(a.p0h, b.ph0) < 1e-10


@pytest.mark.parametrize("p", TIME_REF)
def test_truncated_times_frozen(p):
    tm = expected_truncated_times(p)
    want = TIME_REF[p]
    for got, ref in zip((tm.t00, tm.t0h, tm.thh, tm.th0), want):
        assert rel(got, ref) < 1e-12


@given(rates, rates, levels)
@settings(max_examples=100)
def test_truncated_time_swap_relation(lam, mu, h):
    # th0 of one model equals t0h - h*p0h of the rate-swapped model
    a = expected_truncated_times(ModelParams(lam, mu, h))
    b = expected_truncated_times(ModelParams(mu, lam, h))
    pmb = phase_probabilities(ModelParams(mu, lam, h))
    assert abs(a.th0 - (b.t0h - h * pmb.p0h)) < 1e-10 * max(1.0, abs(a.th0))


@pytest.mark.parametrize("p", CYCLE_REF)
def test_cycle_means_frozen(p):
    cm = expected_cycles(p)
    for got, ref in zip((cm.m00, cm.m0h, cm.mh0, cm.mhh), CYCLE_REF[p]):
        assert rel(got, ref) < 1e-12
    for got, ref in zip(
            (cm.kappa00, cm.kappa0h, cm.kappah0, cm.kappahh), KAPPA_REF[p]):
        assert rel(got, ref) < 1e-12


@given(rates, rates, levels)
@settings(max_examples=100)
def test_cycle_time_identities(lam, mu, h):
    # phase duration doubles the up clock, shifted by h for crossing types
    p = ModelParams(lam, mu, h)
    pm = phase_probabilities(p)
    tm = expected_truncated_times(p)
    cm = expected_cycles(p)
    scale = max(1.0, h)
    assert abs(cm.m00 - 2.0 * tm.t00) < 1e-10 * scale
    assert abs(cm.m0h - (2.0 * tm.t0h - h * pm.p0h)) < 1e-10 * scale
    assert abs(cm.mhh - 2.0 * tm.thh) < 1e-10 * scale
    assert abs(cm.mh0 - (2.0 * tm.th0 + h * pm.ph0)) < 1e-10 * scale


@given(rates, rates, levels)
@settings(max_examples=100)
def test_kappa_symmetry(lam, mu, h):
    cm = expected_cycles(ModelParams(lam, mu, h))
    assert rel(cm.kappa00, cm.kappahh) < 1e-10
    assert rel(cm.kappa0h, cm.kappah0) < 1e-10


def test_kappa_survives_probability_underflow():
    # p0h underflows to exactly 0.0 here, yet the conditional mean is finite
    p = ModelParams(1e3, 0.5, 10.0)
    assert phase_probabilities(p).p0h == 0.0
    cm = expected_cycles(p)
    assert rel(cm.kappa0h, 10.010003000499749) < 1e-12
    assert rel(cm.kappa00, 0.002001000500250125) < 1e-12


def test_equal_rate_cycle_sum_is_level():
    cm = expected_cycles(PEQ)
    assert cm.m00 + cm.m0h == pytest.approx(10.0, abs=1e-12)


def test_matrix_power_conventions():
    pm = phase_probabilities(PEQ)
    ident = matrix_power(pm, 0)
    assert (ident.p00, ident.p0h, ident.ph0, ident.phh) == (1.0, 0.0, 0.0, 1.0)
    one = matrix_power(pm, 1)
    for got, ref in zip((one.p00, one.p0h, one.ph0, one.phh),
                        (pm.p00, pm.p0h, pm.ph0, pm.phh)):
        assert abs(got - ref) < 1e-14
    sq = matrix_power(pm, 2)
    assert rel(sq.p00, 26.0 / 36.0) < 1e-12
    assert rel(sq.p0h, 10.0 / 36.0) < 1e-12
    with pytest.raises(InvalidIndex):
        matrix_power(pm, -1)


@pytest.mark.parametrize("p", [P121, P255])
def test_matrix_power_matches_naive(p):
    pm = phase_probabilities(p)
    m = np.array([[pm.p00, pm.p0h], [pm.ph0, pm.phh]])
    acc = np.eye(2)
    for j in range(0, 21):
        sp = matrix_power(pm, j)
        assert np.allclose(
            [[sp.p00, sp.p0h], [sp.ph0, sp.phh]], acc, rtol=0, atol=1e-13)
        acc = acc @ m


def test_q_sum_conventions_and_example():
    pm = phase_probabilities(PEQ)
    o = Boundary.ORIGIN
    l = Boundary.LEVEL
    assert q_sum(pm, 0, 0, o, o) == 1.0
    assert q_sum(pm, 0, 0, o, l) == 0.0
    assert q_sum(pm, 3, 2, o, o) == 0.0
    got = q_sum(pm, 0, 2, o, o)
    assert rel(got, 92.0 / 36.0) < 1e-12


@pytest.mark.parametrize("p", [P121, PEQ, P255])
def test_q_sum_matches_brute_force(p):
    pm = phase_probabilities(p)
    for i, m in [(0, 0), (0, 5), (1, 1), (1, 7), (2, 6), (4, 4), (3, 12)]:
        for u in Boundary:
            for v in Boundary:
                brute = sum(
                    matrix_power(pm, j).entry(u, v) for j in range(i, m + 1))
                assert abs(q_sum(pm, i, m, u, v) - brute) < 1e-12 * max(1.0, brute)


@pytest.mark.parametrize("p", LENGTH_REF)
def test_expected_length_frozen(p):
    for n, ref in LENGTH_REF[p].items():
        assert rel(expected_length_L(p, n), ref) < 1e-12
    with pytest.raises(InvalidIndex):
        expected_length_L(p, 0)


def test_expected_length_two_term_identity():
    # L2 = L1*(1 + P00) + L1_star*P0H
    pm = phase_probabilities(P121)
    rep = expected_absorption_time(P121, SwitchingProb(1.0))
    want = rep.l1 * (1.0 + pm.p00) + rep.l1_star * pm.p0h
    assert rel(expected_length_L(P121, 2), want) < 1e-13


@pytest.mark.parametrize("p", ETA_REF)
def test_absorption_time_frozen(p):
    for alpha, ref in ETA_REF[p].items():
        rep = expected_absorption_time(p, SwitchingProb(alpha))
        assert rel(rep.expected_absorption_time, ref) < 1e-12


def test_absorption_report_fields():
    rep = expected_absorption_time(P121, SwitchingProb(0.5))
    assert rel(rep.l1, 1.0634991839014103) < 1e-13
    assert rel(rep.l1_star, 0.8730016321971796) < 1e-13
    assert rel(rep.theta_spectral, 0.16190048965915382) < 1e-12


def test_absorption_alpha_one_is_exactly_first_length():
    for p in (P121, PEQ, P255):
        rep = expected_absorption_time(p, SwitchingProb(1.0))
        assert rep.expected_absorption_time == rep.l1


@given(rates, rates, levels, st.floats(min_value=0.05, max_value=1.0))
@settings(max_examples=60, deadline=None)
def test_absorption_time_series_agreement(lam, mu, h, alpha):
    p = ModelParams(lam, mu, h)
    rep = expected_absorption_time(p, SwitchingProb(alpha))
    q = 1.0 - alpha
    total, n, term_w = 0.0, 1, 1.0
    # sum alpha*(1-alpha)^(n-1)*L_n until the geometric tail is negligible
    while term_w > 1e-16 and n < 4000:
        total += alpha * term_w * expected_length_L(p, n)
        term_w *= q
        n += 1
    tail_bound = term_w * expected_length_L(p, n) * (n + 1.0 / max(alpha, 1e-9))
    assert abs(total - rep.expected_absorption_time) < 1e-9 * max(
        1.0, rep.expected_absorption_time) + tail_bound


@given(rates, rates, levels)
@settings(max_examples=60)
def test_absorption_time_decreasing_in_alpha(lam, mu, h):
    p = ModelParams(lam, mu, h)
    etas = [expected_absorption_time(p, SwitchingProb(a)).expected_absorption_time
            for a in (0.2, 0.5, 0.8, 1.0)]
    assert all(a >= b - 1e-12 * abs(a) for a, b in zip(etas, etas[1:]))


def test_equal_rate_absorption_is_level_over_alpha():
    for alpha in (0.2, 0.5, 0.8, 1.0):
        rep = expected_absorption_time(PEQ, SwitchingProb(alpha))
        assert rel(rep.expected_absorption_time, 10.0 / alpha) < 1e-13


def test_velocity_reduces_level():
    fast = ModelParams(110.0, 120.0, 1.0, velocity=10.0)
    slow = ModelParams(110.0, 120.0, 0.1)
    a, b = expected_cycles(fast), expected_cycles(slow)
    assert a == b

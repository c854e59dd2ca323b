"""Parameter containers, validation, and the seeded random source."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from telegraph_box import (
    AlphaOutOfRange,
    Boundary,
    ModelParams,
    NonPositiveParameter,
    RandomSource,
    SwitchingProb,
    exp_draw,
    validate_params,
)


def test_boundary_members():
    assert Boundary.ORIGIN.value == "origin"
    assert Boundary.LEVEL.value == "level"
    assert Boundary("origin") is Boundary.ORIGIN


def test_validate_params_passthrough():
    p = ModelParams(1.0, 2.0, 1.0)
    assert validate_params(p) is p
    assert p.velocity == 1.0


@pytest.mark.parametrize(
    "kwargs,field",
    [
        (dict(lam=0.0, mu=1.0, h=1.0), "lambda"),
        (dict(lam=-1.0, mu=1.0, h=1.0), "lambda"),
        (dict(lam=1.0, mu=0.0, h=1.0), "mu"),
        (dict(lam=1.0, mu=1.0, h=-3.0), "h"),
        (dict(lam=1.0, mu=1.0, h=1.0, velocity=0.0), "velocity"),
        (dict(lam=math.nan, mu=1.0, h=1.0), "lambda"),
        (dict(lam=1.0, mu=math.inf, h=1.0), "mu"),
    ],
)
def test_validate_params_rejects(kwargs, field):
    with pytest.raises(NonPositiveParameter) as exc:
        validate_params(ModelParams(**kwargs))
    assert exc.value.field == field
    assert field in str(exc.value)


def test_effective_level_scales_with_velocity():
    p = ModelParams(1.0, 2.0, h=6.0, velocity=3.0)
    assert p.effective_level == 2.0
    assert ModelParams(1.0, 2.0, 6.0).effective_level == 6.0


def test_switching_prob_accepts_unit_interval():
    assert SwitchingProb(1.0).alpha == 1.0
    assert SwitchingProb(0.25).alpha == 0.25


@pytest.mark.parametrize("bad", [0.0, -0.2, 1.0000001, 2.0, math.nan, math.inf])
def test_switching_prob_rejects(bad):
    with pytest.raises(AlphaOutOfRange):
        SwitchingProb(bad)


def test_random_source_is_reproducible():
    a = RandomSource(42, 0).gen.random(8)
    b = RandomSource(42, 0).gen.random(8)
    assert np.array_equal(a, b)


def test_random_source_streams_differ():
    a = RandomSource(42, 0).gen.random(8)
    b = RandomSource(42, 1).gen.random(8)
    assert not np.array_equal(a, b)


def test_random_source_rejects_negative():
    with pytest.raises(ValueError):
        RandomSource(-1, 0)
    with pytest.raises(ValueError):
        RandomSource(1, -2)


def test_exp_draw_scalar_and_vector():
    rng = RandomSource(7, 0)
    x = exp_draw(2.0, rng)
    assert isinstance(x, float) and x > 0.0
    v = exp_draw(2.0, rng, size=1000)
    assert v.shape == (1000,)
    assert abs(v.mean() - 0.5) < 5.0 * 0.5 / math.sqrt(1000)


@given(st.integers(min_value=0, max_value=2**31), st.integers(min_value=0, max_value=64))
def test_random_source_determinism_property(seed, stream):
    a = RandomSource(seed, stream).gen.standard_normal(4)
    b = RandomSource(seed, stream).gen.standard_normal(4)
    assert np.array_equal(a, b)

"""The iterated-cone window lift."""

import random

import pytest

from gitwin.errors import InputError
from gitwin.gradedmod.complexes import (
    free_module,
    minimize,
    window_test_complex,
)
from gitwin.gradedmod.lift import window_lift, window_lift_with_trace
from gitwin.gradedmod.ring import WeightedRing
from gitwin.gradedmod.support import is_supported_at_origin

from oracles import find_quasi_iso, random_window_complex


def test_lift_raises_a_low_twist(ring11):
    trace = window_lift_with_trace(free_module(ring11, [-1]), 0)
    assert trace.iterations == 1
    assert trace.steps[0].side == "raise_low"
    assert trace.steps[0].weight == -1
    assert trace.complex.terms == {-1: (1,), 0: (0, 0)}
    ok, _ = window_test_complex(trace.complex, 0)
    assert ok


def test_lift_lowers_a_high_twist(ring11):
    trace = window_lift_with_trace(free_module(ring11, [2]), 0)
    assert trace.iterations == 1
    assert trace.steps[0].side == "lower_high"
    assert trace.steps[0].weight == 2
    assert trace.complex.terms == {0: (1, 1), 1: (0,)}
    ok, _ = window_test_complex(trace.complex, 0)
    assert ok


def test_lift_three_variables(ring111):
    trace = window_lift_with_trace(free_module(ring111, [-1]), 0)
    assert trace.iterations == 1
    assert trace.complex.terms == {-2: (2,), -1: (1, 1, 1), 0: (0, 0, 0)}
    block = trace.steps[0].block
    assert block.total_rank() == 8
    assert is_supported_at_origin(block)


def test_lift_leaves_in_window_complexes_alone(ring11):
    F = free_module(ring11, [0, 1])
    trace = window_lift_with_trace(F, 0)
    assert trace.iterations == 0
    assert trace.complex == F


def test_lift_is_idempotent(ring11):
    first = window_lift(free_module(ring11, [-2, 3]), 0)
    assert window_lift(first, 0) == first


def test_lift_rejects_bad_inputs(ring11):
    with pytest.raises(InputError, match="unknown lift strategy"):
        window_lift(free_module(ring11, [0]), 0, strategy="middle_out")
    field = WeightedRing(())
    with pytest.raises(InputError, match="at least one variable"):
        window_lift(free_module(field, [0]), 0)


def test_lift_random_soundness(ring11, ring111):
    rng = random.Random(411)
    for trial in range(8):
        ring = ring11 if trial % 2 else ring111
        F = random_window_complex(rng, ring)
        window_low = rng.randint(-2, 2)
        trace = window_lift_with_trace(F, window_low)
        ok, offending = window_test_complex(trace.complex, window_low)
        assert ok, f"trial {trial}: weights {offending} escaped the window"
        assert trace.complex == minimize(trace.complex)
        span = 0
        if not (M := minimize(F)).is_zero:
            span = M.max_weight() - M.min_weight()
        assert trace.iterations <= span + ring.eta + 2
        for step in trace.steps:
            assert is_supported_at_origin(step.block)


def test_lift_strategies_agree_up_to_acyclics(ring11):
    rng = random.Random(902)
    for trial in range(6):
        F = random_window_complex(rng, ring11)
        low = window_lift(F, 0, strategy="low_first")
        high = window_lift(F, 0, strategy="high_first")
        if low == high:
            continue
        certificate = find_quasi_iso(rng, low, high)
        assert certificate is not None, (
            f"trial {trial}: no quasi-isomorphism between strategy results"
        )

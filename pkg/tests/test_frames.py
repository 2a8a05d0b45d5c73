import math

import numpy as np
import pytest

from teleaudit.config import DEFAULT_EVENT_I, DEFAULT_EVENT_II
from teleaudit.errors import InvalidInputError
from teleaudit.frames import (Event, EventLabel, FrameBoost, IntervalType, Ordering, Verdict, audit, boost,
                              classify, find_reordering_boost, interval, ordering)
from teleaudit.states import maximally_mixed, named_state


def events(first, second):
    return Event(EventLabel.EVENT_I, *first), Event(EventLabel.EVENT_II, *second)


def test_zero_boost_is_identity():
    e = Event(EventLabel.EVENT_I, 1.5, -2.0)
    assert boost(e, 0.0) == e


def test_boost_formula():
    b = boost(Event(EventLabel.EVENT_I, 1.0, 0.0), 0.6)
    assert b.t == pytest.approx(1.25)
    assert b.x == pytest.approx(-0.75)


def test_interval_is_invariant(rng):
    for _ in range(200):
        t1, x1, t2, x2 = rng.uniform(-1, 1, size=4)
        e_i, e_ii = events((t1, x1), (t2, x2))
        beta = rng.uniform(-0.99, 0.99)
        assert abs(interval(boost(e_i, beta), boost(e_ii, beta)) - interval(e_i, e_ii)) <= 1e-12


def test_boost_velocity_bounds():
    for beta in (1.0, -1.0, 1.5, math.nan):
        with pytest.raises(InvalidInputError, match="beta"):
            FrameBoost(beta)


def test_classify():
    assert classify(*events((0, 0), (1, 5))) is IntervalType.SPACELIKE
    assert classify(*events((0, 0), (2, 1))) is IntervalType.TIMELIKE
    assert classify(*events((0, 0), (1, 1))) is IntervalType.LIGHTLIKE


def test_default_events_are_reordered():
    e_i, e_ii = events(DEFAULT_EVENT_I, DEFAULT_EVENT_II)
    assert ordering(e_i, e_ii) is Ordering.I_BEFORE_II

    f = find_reordering_boost(e_i, e_ii)
    assert f.beta == pytest.approx(0.52)
    assert ordering(boost(e_i, f), boost(e_ii, f)) is Ordering.II_BEFORE_I


def test_reordering_for_negative_dx():
    e_i, e_ii = events((0, 0), (1, -3))
    f = find_reordering_boost(e_i, e_ii)
    assert -1 < f.beta < 0
    assert ordering(boost(e_i, f), boost(e_ii, f)) is Ordering.II_BEFORE_I


def test_already_reordered_pair_uses_rest_frame():
    assert find_reordering_boost(*events((1, 0), (0, 4))).beta == 0.0


@pytest.mark.parametrize("second", [(2, 1), (1, 1), (-3, 0.5)])
def test_no_reordering_without_spacelike_separation(second):
    e_i, e_ii = events((0, 0), second)
    assert find_reordering_boost(e_i, e_ii) is None
    rest = ordering(e_i, e_ii)
    for beta in np.linspace(-0.95, 0.95, 9):
        assert ordering(boost(e_i, beta), boost(e_ii, beta)) is rest


def test_pair_at_the_edge_of_the_light_cone():
    e_i, e_ii = events((0.0, 0.0), (1e8, math.nextafter(1e8, 2e8)))
    assert classify(e_i, e_ii) is IntervalType.SPACELIKE

    f = find_reordering_boost(e_i, e_ii)
    if f is not None:
        assert abs(f.beta) < 1
        assert ordering(boost(e_i, f), boost(e_ii, f)) is Ordering.II_BEFORE_I

    report = audit(named_state("zero"), e_i, e_ii)
    assert report.verdict is Verdict.NO_CONTRADICTION
    assert (report.window is None) == (f is None)


def test_identical_events_are_rejected():
    with pytest.raises(InvalidInputError, match="distinct"):
        find_reordering_boost(*events((1, 2), (1, 2)))


def test_audit_pure_state():
    report = audit(named_state("plus"), *events(DEFAULT_EVENT_I, DEFAULT_EVENT_II))
    assert report.interval_type is IntervalType.SPACELIKE
    assert report.rest_order is Ordering.I_BEFORE_II
    assert report.boosted_order is Ordering.II_BEFORE_I
    t_lo, t_hi = report.window
    assert t_lo < t_hi
    assert report.clone_pattern_asserted
    assert abs(report.dist_actual_c - 0.5) <= 1e-9
    np.testing.assert_allclose(report.actual_c_after.mat, np.eye(2) / 2, atol=1e-12)
    assert report.verdict is Verdict.NO_CONTRADICTION
    assert not report.boundary_case
    assert len(report.signal_table) == 4


def test_audit_maximally_mixed_is_the_boundary():
    report = audit(maximally_mixed(2), *events(DEFAULT_EVENT_I, DEFAULT_EVENT_II))
    assert report.verdict is Verdict.FORBIDDEN_PATTERN
    assert report.boundary_case


def test_audit_verdict_ignores_kinematics():
    report = audit(named_state("zero"), *events((0, 0), (2, 1)))
    assert report.beta is None
    assert report.window is None
    assert report.boosted_order is report.rest_order
    assert report.verdict is Verdict.NO_CONTRADICTION


def test_audit_checks_event_roles():
    e_i, e_ii = events(DEFAULT_EVENT_I, DEFAULT_EVENT_II)
    with pytest.raises(InvalidInputError, match="EventI, EventII"):
        audit(named_state("zero"), e_ii, e_i)


@pytest.mark.parametrize("name", ["zero", "one", "plus", "minus", "plus_i", "minus_i"])
def test_audit_every_pauli_eigenstate(name):
    report = audit(named_state(name), *events(DEFAULT_EVENT_I, DEFAULT_EVENT_II))
    assert report.verdict is Verdict.NO_CONTRADICTION
    assert report.clone_pattern_asserted
    assert abs(report.dist_actual_c - 0.5) <= 1e-9


def test_timelike_order_survives_every_boost(rng):
    for _ in range(100):
        t1, x1, dx = rng.uniform(-1, 1, size=3)
        dt = rng.choice([-1, 1]) * (abs(dx) + rng.uniform(0.01, 1))
        e_i, e_ii = events((t1, x1), (t1 + dt, x1 + dx))
        assert classify(e_i, e_ii) is IntervalType.TIMELIKE
        assert find_reordering_boost(e_i, e_ii) is None

        rest = ordering(e_i, e_ii)
        for beta in rng.uniform(-0.99, 0.99, size=100):
            assert ordering(boost(e_i, beta), boost(e_ii, beta)) is rest


def test_spacelike_pairs_are_always_reordered(rng):
    for _ in range(100):
        t1, x1 = rng.uniform(-1, 1, size=2)
        dx = rng.choice([-1, 1]) * rng.uniform(0.1, 2)
        dt = rng.uniform(-0.99, 0.99) * abs(dx)
        e_i, e_ii = events((t1, x1), (t1 + dt, x1 + dx))
        assert classify(e_i, e_ii) is IntervalType.SPACELIKE

        f = find_reordering_boost(e_i, e_ii)
        assert abs(f.beta) < 1
        assert ordering(boost(e_i, f), boost(e_ii, f)) is Ordering.II_BEFORE_I

"""
Kinematics of the frame-ordering argument and its audit.

Events live in 1+1 Minkowski space with c = 1. EventI is the Bell
measurement on A, C and EventII the correction on B. The audit records the
marginals the frame argument asserts at a time t between the two events,
then checks them against what the teleportation channel actually produces.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .config import TOL_EQUAL, TOL_LIGHTLIKE
from .errors import InvalidInputError
from .states import DensityOperator, trace_distance
from .teleport import correction_table, run_teleport

logger = logging.getLogger(__name__)

EVENT_ROLES = {
    "EventI": "Bell measurement on A, C",
    "EventII": "correction on B",
}

WINDOW_NOTE = (
    "The intermediate time is written both as t_II < t < t_I and as t in (t_I, t_II); "
    "the window reported here is t_II < t < t_I in the boosted frame."
)


class EventLabel(str, Enum):
    EVENT_I = "EventI"
    EVENT_II = "EventII"


class IntervalType(str, Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"


class Ordering(str, Enum):
    I_BEFORE_II = "EventI<EventII"
    II_BEFORE_I = "EventII<EventI"
    SIMULTANEOUS = "EventI=EventII"


class Verdict(str, Enum):
    NO_CONTRADICTION = "NoContradiction"
    FORBIDDEN_PATTERN = "ForbiddenPattern"


@dataclass(frozen=True)
class Event:
    label: EventLabel
    t: float
    x: float

    def __post_init__(self):
        object.__setattr__(self, "label", EventLabel(self.label))
        if not (math.isfinite(self.t) and math.isfinite(self.x)):
            raise InvalidInputError(f"Event {self.label.value} has non-finite coordinates ({self.t}, {self.x})")


@dataclass(frozen=True)
class FrameBoost:
    beta: float

    def __post_init__(self):
        if not math.isfinite(self.beta) or abs(self.beta) >= 1:
            raise InvalidInputError(f"Boost velocity must satisfy |beta| < 1, got {self.beta}")

    @property
    def gamma(self):
        return 1 / math.sqrt(1 - self.beta ** 2)


@dataclass(frozen=True, eq=False)
class ScenarioReport:
    rho_c: DensityOperator
    event_i: Event
    event_ii: Event
    rest_order: Ordering
    boosted_order: Ordering
    interval_type: IntervalType
    beta: Optional[float]
    window: Optional[tuple]
    asserted_b_marginal: DensityOperator
    asserted_c_marginal: DensityOperator
    clone_pattern_asserted: bool
    actual_c_after: DensityOperator
    dist_actual_c: float
    verdict: Verdict

    @property
    def boundary_case(self):
        return self.verdict is Verdict.FORBIDDEN_PATTERN

    @property
    def signal_table(self):
        return correction_table()


def boost(e, f):
    """t' = gamma (t - beta x), x' = gamma (x - beta t)"""
    if not isinstance(f, FrameBoost):
        f = FrameBoost(f)
    g = f.gamma
    return Event(e.label, g * (e.t - f.beta * e.x), g * (e.x - f.beta * e.t))


def interval(e1, e2):
    """Invariant dt^2 - dx^2 between two events"""
    dt = e2.t - e1.t
    dx = e2.x - e1.x
    return dt * dt - dx * dx


def classify(e1, e2):
    s = interval(e1, e2)
    if abs(s) <= TOL_LIGHTLIKE:
        return IntervalType.LIGHTLIKE
    return IntervalType.SPACELIKE if s < 0 else IntervalType.TIMELIKE


def ordering(e_i, e_ii):
    if e_ii.t > e_i.t:
        return Ordering.I_BEFORE_II
    if e_ii.t < e_i.t:
        return Ordering.II_BEFORE_I
    return Ordering.SIMULTANEOUS


def find_reordering_boost(e_i, e_ii):
    """
    A boost in which EventII precedes EventI, or None when the pair is not
    spacelike. For rest-frame order II < I the rest frame itself (beta = 0)
    is returned; otherwise beta is the midpoint between the minimal
    reordering velocity dt/dx and the light speed on the same side, kept
    strictly below 1. None also when the closest representable velocity
    still fails to reverse the pair.
    """
    if (e_i.t, e_i.x) == (e_ii.t, e_ii.x):
        raise InvalidInputError("Events must be distinct")

    kind = classify(e_i, e_ii)
    if kind is not IntervalType.SPACELIKE:
        logger.debug(f"Pair is {kind.value}; ordering is frame-invariant")
        return None

    dt = e_ii.t - e_i.t
    dx = e_ii.x - e_i.x
    if dt < 0:
        return FrameBoost(0.0)

    beta_min = dt / dx
    light = math.copysign(1.0, dx)
    beta = (beta_min + light) / 2
    if abs(beta) >= 1:
        beta = math.nextafter(light, 0.0)
    logger.debug(f"Reordering boost: beta_min={beta_min:.17g}, chosen beta={beta:.17g}")

    f = FrameBoost(beta)
    if ordering(boost(e_i, f), boost(e_ii, f)) is not Ordering.II_BEFORE_I:
        logger.warning(f"Boost beta={beta!r} does not reverse the pair in floating point; no reordering frame")
        return None
    return f


def audit(rho_c, e_i, e_ii):
    """
    Audit the frame argument for input ``rho_c``.

    The asserted B marginal is (T rho)_B from the channel; the asserted C
    marginal is rho_C itself, as the argument states it. The verdict only
    looks at the actual (T rho)_C, never at the kinematics.
    """
    if e_i.label is not EventLabel.EVENT_I or e_ii.label is not EventLabel.EVENT_II:
        raise InvalidInputError("audit expects (EventI, EventII) in that order")

    report = run_teleport(rho_c)

    f = find_reordering_boost(e_i, e_ii)
    rest_order = ordering(e_i, e_ii)
    if f is None:
        boosted_order = rest_order
        window = None
    else:
        b_i, b_ii = boost(e_i, f), boost(e_ii, f)
        boosted_order = ordering(b_i, b_ii)
        window = (b_ii.t, b_i.t)

    asserted_b = report.b_marginal
    asserted_c = rho_c
    pattern = trace_distance(asserted_b, rho_c) <= TOL_EQUAL and trace_distance(asserted_c, rho_c) <= TOL_EQUAL

    verdict = Verdict.NO_CONTRADICTION if report.dist_c > TOL_EQUAL else Verdict.FORBIDDEN_PATTERN
    if verdict is Verdict.FORBIDDEN_PATTERN:
        logger.warning("(T rho)_C equals rho_C: boundary case of the maximally mixed input")

    return ScenarioReport(
        rho_c=rho_c,
        event_i=e_i,
        event_ii=e_ii,
        rest_order=rest_order,
        boosted_order=boosted_order,
        interval_type=classify(e_i, e_ii),
        beta=None if f is None else f.beta,
        window=window,
        asserted_b_marginal=asserted_b,
        asserted_c_marginal=asserted_c,
        clone_pattern_asserted=pattern,
        actual_c_after=report.c_marginal,
        dist_actual_c=report.dist_c,
        verdict=verdict,
    )

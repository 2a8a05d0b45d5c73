"""
The explicit C (x) B (x) A teleportation channel.

Input: rho = rho_C (x) rho_BA with rho_BA the singlet Psi- on A, B.
Kraus terms: V_i = U_Bi (x) P_ACi for the four Bell projectors on A, C.
The corrections U_Bi are not written down anywhere; ``derive_corrections``
finds them by searching the Pauli group and keeps the first assignment that
teleports a tomographically complete probe set.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .channels import Side, StructuredKraus, apply, make_channel
from .composite import embed, partial_trace, product, teleport_layout
from .config import TOL_EQUAL, TOL_UNITARY_STRICT
from .errors import ConsistencyError, InvalidInputError
from .linalg import freeze, is_unitary, max_abs
from .states import (BELL_ORDER, BellKind, DensityOperator, bell, maximally_mixed,
                     named_state, pure, random_mixed, random_pure, trace_distance)

logger = logging.getLogger(__name__)

PAULIS = {
    "I": freeze(np.eye(2)),
    "X": freeze([[0, 1], [1, 0]]),
    "Y": freeze([[0, -1j], [1j, 0]]),
    "Z": freeze([[1, 0], [0, -1]]),
}

TOMOGRAPHIC_PROBES = ("zero", "one", "plus", "plus_i")

OUTCOME_BITS = ("00", "01", "10", "11")

LAYOUT = teleport_layout()


class CorrectionEntry(NamedTuple):
    bits: str
    outcome: BellKind
    correction: str


@dataclass(frozen=True, eq=False)
class TeleportReport:
    input_state: DensityOperator
    b_marginal: DensityOperator
    c_marginal: DensityOperator
    dist_b: float
    dist_c: float
    b_matches_input: bool
    c_matches_input: bool
    outcome_probabilities: tuple

    @property
    def boundary_case(self):
        """C kept its state: only the maximally mixed input does this"""
        return self.c_matches_input

    @property
    def expected_outcome(self):
        return self.b_matches_input and not self.c_matches_input


@dataclass(frozen=True)
class TheoremSummary:
    seed: int
    n_pure: int
    n_mixed: int
    max_dist_b: float
    min_dist_c: float
    max_dist_c: float
    max_c_deviation_from_mixed: float

    @property
    def theorem_holds(self):
        return self.max_dist_b <= TOL_EQUAL

    @property
    def corollary_holds(self):
        return self.min_dist_c >= 0.5 - TOL_EQUAL

    @property
    def passed(self):
        return self.theorem_holds and self.corollary_holds


def resource_state():
    """The singlet Psi- as a two-qubit density operator (A first, then B)"""
    return pure(bell(BellKind.PSI_MINUS))


def bell_projectors():
    return tuple(pure(bell(kind)).mat for kind in BELL_ORDER)


def _build_channel(corrections):
    terms = []
    for u, p in zip(corrections, bell_projectors()):
        terms.append(StructuredKraus(
            unitary=embed(u, "B", LAYOUT),
            projector=embed(p, ("A", "C"), LAYOUT),
            side=Side.UNITARY_FIRST,
        ))
    return make_channel(terms)


def input_state(rho_c):
    """rho_C (x) Psi-_AB in canonical C, B, A order"""
    mat = product([(rho_c.mat, "C"), (resource_state().mat, ("A", "B"))], LAYOUT)
    return DensityOperator(mat)


def _teleports(channel, probes):
    for rho_c in probes:
        out = apply(channel, input_state(rho_c))
        if trace_distance(partial_trace(out, "B", LAYOUT), rho_c) > TOL_EQUAL:
            return False
    return True


@lru_cache(maxsize=None)
def derive_correction_labels():
    """
    Search all 4^4 Pauli assignments in (I, X, Y, Z) lexicographic order and
    return the first that teleports every tomographic probe.
    """
    probes = [named_state(name) for name in TOMOGRAPHIC_PROBES]

    for labels in itertools.product(PAULIS, repeat=len(BELL_ORDER)):
        channel = _build_channel([PAULIS[label] for label in labels])
        if _teleports(channel, probes):
            logger.info(f"Correction search found {dict(zip([k.value for k in BELL_ORDER], labels))}")
            return labels

    raise ConsistencyError("No Pauli correction assignment teleports the probe set; check the Bell conventions")


def derive_corrections():
    """U_B1..U_B4 as 2x2 unitaries"""
    corrections = tuple(PAULIS[label] for label in derive_correction_labels())
    for label, u in zip(derive_correction_labels(), corrections):
        if not is_unitary(u, TOL_UNITARY_STRICT):
            raise ConsistencyError(f"Correction {label} is not unitary to {TOL_UNITARY_STRICT:.0e}")
    return corrections


@lru_cache(maxsize=None)
def teleport_channel():
    return _build_channel(derive_corrections())


def correction_table():
    """Classical message table: 2-bit label, Bell outcome, correction applied on B"""
    return tuple(
        CorrectionEntry(bits, kind, label)
        for bits, kind, label in zip(OUTCOME_BITS, BELL_ORDER, derive_correction_labels())
    )


def run_teleport(rho_c):
    if rho_c.dim != 2:
        raise InvalidInputError(f"Teleportation input must be a qubit state, got dimension {rho_c.dim}")

    channel = teleport_channel()
    rho = input_state(rho_c)
    out = apply(channel, rho)

    b_marginal = partial_trace(out, "B", LAYOUT)
    c_marginal = partial_trace(out, "C", LAYOUT)
    dist_b = trace_distance(b_marginal, rho_c)
    dist_c = trace_distance(c_marginal, rho_c)

    probabilities = tuple(float(np.trace(term.projector @ rho.mat).real) for term in channel.terms)

    return TeleportReport(
        input_state=rho_c,
        b_marginal=b_marginal,
        c_marginal=c_marginal,
        dist_b=dist_b,
        dist_c=dist_c,
        b_matches_input=dist_b <= TOL_EQUAL,
        c_matches_input=dist_c <= TOL_EQUAL,
        outcome_probabilities=probabilities,
    )


def _c_deviation(report):
    return max_abs(report.c_marginal.mat - maximally_mixed(2).mat)


def c_marginal_deviation(probes):
    """Max entrywise distance of (T rho)_C from I/2 over ``probes``"""
    return max((_c_deviation(run_teleport(rho_c)) for rho_c in probes), default=0.0)


def verify_theorem(n_probes, seed, n_mixed=0):
    """
    Teleport ``n_probes`` Haar-random pure states (and ``n_mixed`` random
    mixtures) drawn from one seeded stream; report extremal distances.
    """
    if n_probes < 1:
        raise InvalidInputError(f"n_probes must be at least 1, got {n_probes}")
    if n_mixed < 0:
        raise InvalidInputError(f"n_mixed must be non-negative, got {n_mixed}")

    rng = np.random.default_rng(seed)
    pure_probes = [pure(random_pure(2, rng)) for _ in range(n_probes)]
    mixed_probes = [random_mixed(2, rng) for _ in range(n_mixed)]
    logger.debug(f"Verifying teleportation on {n_probes} pure and {n_mixed} mixed probes (seed {seed})")

    pure_reports = [run_teleport(rho_c) for rho_c in pure_probes]
    mixed_reports = [run_teleport(rho_c) for rho_c in mixed_probes]
    all_reports = pure_reports + mixed_reports

    return TheoremSummary(
        seed=seed,
        n_pure=n_probes,
        n_mixed=n_mixed,
        max_dist_b=max(r.dist_b for r in all_reports),
        min_dist_c=min(r.dist_c for r in pure_reports),
        max_dist_c=max(r.dist_c for r in pure_reports),
        max_c_deviation_from_mixed=max(_c_deviation(r) for r in all_reports),
    )

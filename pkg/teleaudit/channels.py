"""
Completely positive maps T(rho) = sum_i V_i rho V_i^dagger with V_i = U_i P_i
or P_i U_i, built from (unitary, projector, side) factor pairs.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np

from .config import TOL_CHANNEL
from .errors import ConsistencyError, InvalidInputError
from .linalg import (as_matrix, freeze, hermitian_eigenvalues, is_projector, is_square,
                     is_unitary, max_abs)
from .states import DensityOperator, PositiveOperator

logger = logging.getLogger(__name__)


class Side(str, Enum):
    UNITARY_FIRST = "UP"     # V = U P
    PROJECTOR_FIRST = "PU"   # V = P U


@dataclass(frozen=True, eq=False)
class StructuredKraus:
    unitary: np.ndarray
    projector: np.ndarray
    side: Side = Side.UNITARY_FIRST

    def __post_init__(self):
        unitary = as_matrix(self.unitary, name="unitary")
        projector = as_matrix(self.projector, name="projector")
        side = Side(self.side)

        if not is_square(unitary) or unitary.shape != projector.shape:
            raise InvalidInputError(f"Unitary {unitary.shape} and projector {projector.shape} must be square and equal-sized")
        if not is_unitary(unitary, TOL_CHANNEL):
            residual = max_abs(unitary.conj().T @ unitary - np.eye(unitary.shape[0]))
            raise InvalidInputError(f"Factor is not unitary: max |U^dagger U - I| = {residual:.3e}")
        if not is_projector(projector, TOL_CHANNEL):
            raise InvalidInputError("Factor is not an orthogonal projector (P^2 = P = P^dagger fails)")

        object.__setattr__(self, "unitary", unitary)
        object.__setattr__(self, "projector", projector)
        object.__setattr__(self, "side", side)

    @property
    def dim(self):
        return self.unitary.shape[0]

    @property
    def operator(self):
        if self.side is Side.UNITARY_FIRST:
            return freeze(self.unitary @ self.projector)
        return freeze(self.projector @ self.unitary)


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """
    Validated Kraus channel. ``terms`` is None for channels built through
    the raw-Kraus escape hatch ``from_kraus``.
    """

    dim: int
    operators: tuple
    terms: Optional[tuple] = None

    @property
    def structured(self):
        return self.terms is not None

    def __len__(self):
        return len(self.operators)


class TraceCheck(NamedTuple):
    preserving: bool
    residual: float


@dataclass(frozen=True)
class ChannelCertificate:
    dim: int
    n_terms: int
    structured: bool
    trace_preserving: bool
    tp_residual: float
    choi_min_eigenvalue: float
    completely_positive: bool
    partition_residual: Optional[float]


def _sum_projectors(terms):
    return sum(term.projector for term in terms)


def make_channel(terms):
    """
    Build a channel from StructuredKraus terms.

    Checks that the projectors resolve the identity and are pairwise
    orthogonal; for all-UnitaryFirst channels also asserts trace preservation.
    """
    terms = tuple(terms)
    if not terms:
        raise InvalidInputError("A channel needs at least one Kraus term")

    dim = terms[0].dim
    for i, term in enumerate(terms):
        if term.dim != dim:
            raise InvalidInputError(f"Term {i} has dimension {term.dim}, expected {dim}")

    identity = np.eye(dim)
    residual = max_abs(_sum_projectors(terms) - identity)
    if residual > TOL_CHANNEL:
        raise InvalidInputError(
            f"Projectors should sum to the identity (sum of P_i = I), but the residual norm is {residual:.3e}"
        )

    for i in range(len(terms)):
        for j in range(i + 1, len(terms)):
            overlap = max_abs(terms[i].projector @ terms[j].projector)
            if overlap > TOL_CHANNEL:
                raise InvalidInputError(f"Projectors {i} and {j} are not orthogonal: max |P_i P_j| = {overlap:.3e}")

    channel = KrausChannel(dim=dim, operators=tuple(term.operator for term in terms), terms=terms)

    if all(term.side is Side.UNITARY_FIRST for term in terms):
        check = is_trace_preserving(channel)
        if not check.preserving:
            raise ConsistencyError(f"UnitaryFirst channel with a projector partition is not trace preserving (residual {check.residual:.3e})")

    logger.debug(f"Built structured channel: dim={dim}, terms={len(terms)}")
    return channel


def from_kraus(operators):
    """Unstructured channel from raw Kraus matrices (no partition checks)"""
    ops = tuple(as_matrix(op, name=f"Kraus operator {i}") for i, op in enumerate(operators))
    if not ops:
        raise InvalidInputError("A channel needs at least one Kraus operator")

    dim = ops[0].shape[0]
    for i, op in enumerate(ops):
        if op.shape != (dim, dim):
            raise InvalidInputError(f"Kraus operator {i} has shape {op.shape}, expected ({dim}, {dim})")

    logger.debug(f"Built unstructured channel: dim={dim}, operators={len(ops)}")
    return KrausChannel(dim=dim, operators=ops, terms=None)


def identity_channel(dim):
    return make_channel([StructuredKraus(np.eye(dim), np.eye(dim))])


def kraus_sum(channel, mat):
    """sum_i V_i mat V_i^dagger on any square matrix; never renormalizes"""
    mat = np.asarray(mat)
    if mat.shape != (channel.dim, channel.dim):
        raise InvalidInputError(f"Operator shape {mat.shape} doesn't match channel dimension {channel.dim}")
    out = np.zeros((channel.dim, channel.dim), dtype=np.complex128)
    for v in channel.operators:
        out += v @ mat @ v.conj().T
    return freeze(out)


def apply(channel, rho):
    """
    T(rho). A DensityOperator for trace-preserving channels, otherwise a
    PositiveOperator carrying whatever trace the Kraus sum has; the caller
    decides whether to call ``normalized()``.
    """
    if rho.dim != channel.dim:
        raise InvalidInputError(f"State dimension {rho.dim} doesn't match channel dimension {channel.dim}")
    out = kraus_sum(channel, rho.mat)
    if is_trace_preserving(channel).preserving:
        return DensityOperator(out)
    return PositiveOperator(out)


def choi(channel):
    """Choi matrix sum_jk |j><k| (x) T(|j><k|)"""
    d = channel.dim
    out = np.zeros((d * d, d * d), dtype=np.complex128)
    for j in range(d):
        for k in range(d):
            unit = np.zeros((d, d), dtype=np.complex128)
            unit[j, k] = 1
            out += np.kron(unit, kraus_sum(channel, unit))
    return freeze(out)


def is_trace_preserving(channel):
    total = sum(v.conj().T @ v for v in channel.operators)
    residual = max_abs(total - np.eye(channel.dim))
    return TraceCheck(residual <= TOL_CHANNEL, residual)


def partition_residual(channel):
    """||sum P_i - I||_max, or None for unstructured channels"""
    if not channel.structured:
        return None
    return max_abs(_sum_projectors(channel.terms) - np.eye(channel.dim))


def certify(channel):
    tp = is_trace_preserving(channel)
    min_eig = float(hermitian_eigenvalues(choi(channel), tol=TOL_CHANNEL)[0])
    return ChannelCertificate(
        dim=channel.dim,
        n_terms=len(channel),
        structured=channel.structured,
        trace_preserving=tp.preserving,
        tp_residual=tp.residual,
        choi_min_eigenvalue=min_eig,
        completely_positive=min_eig >= -TOL_CHANNEL,
        partition_residual=partition_residual(channel),
    )

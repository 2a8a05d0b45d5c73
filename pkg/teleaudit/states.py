"""
State vectors, density operators and the Bell family.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .config import MIXTURE_MAX_COMPONENTS, TOL_EQUAL, TOL_STATE
from .errors import InvalidInputError
from .linalg import as_matrix, freeze, hermitian_eigenvalues, hermiticity_residual, is_square

SQRT_HALF = 1 / np.sqrt(2)


@dataclass(frozen=True, eq=False)
class StateVector:
    """Unit vector in C^dim"""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.ndim != 1 or amps.size == 0:
            raise InvalidInputError(f"State vector must be a non-empty 1-D array, got shape {amps.shape}")
        if not np.all(np.isfinite(amps)):
            raise InvalidInputError("State vector contains NaN or infinite amplitudes")

        norm = float(np.linalg.norm(amps))
        if abs(norm - 1) > TOL_STATE:
            raise InvalidInputError(f"State vector is not normalized: norm = {norm:.12f}")

        object.__setattr__(self, "amplitudes", freeze(amps))

    @property
    def dim(self):
        return self.amplitudes.size

    @classmethod
    def normalized(cls, amplitudes):
        amps = np.asarray(amplitudes, dtype=np.complex128)
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise InvalidInputError("Cannot normalize the zero vector")
        return cls(amps / norm)

    def inner(self, other):
        """<self|other>"""
        if other.dim != self.dim:
            raise InvalidInputError(f"Inner product of dimension {self.dim} and {other.dim} vectors")
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Hermitian, positive semidefinite, unit-trace matrix"""

    mat: np.ndarray

    def __post_init__(self):
        mat = as_matrix(self.mat, name="density operator")
        if not is_square(mat):
            raise InvalidInputError(f"Density operator must be square, got shape {mat.shape}")

        residual = hermiticity_residual(mat)
        if residual > TOL_STATE:
            raise InvalidInputError(f"Density operator is not Hermitian: max |rho - rho^dagger| = {residual:.3e}")

        tr = complex(np.trace(mat))
        if abs(tr - 1) > TOL_STATE:
            raise InvalidInputError(f"Density operator trace should be 1, but it is {tr.real:.12f}{tr.imag:+.3e}j")

        lowest = float(hermitian_eigenvalues(mat, tol=TOL_STATE)[0])
        if lowest < -TOL_STATE:
            raise InvalidInputError(f"Density operator is not positive semidefinite: smallest eigenvalue {lowest:.3e}")

        object.__setattr__(self, "mat", mat)

    @property
    def dim(self):
        return self.mat.shape[0]

    def purity(self):
        return float(np.trace(self.mat @ self.mat).real)


@dataclass(frozen=True, eq=False)
class PositiveOperator:
    """
    Hermitian, positive semidefinite matrix of any trace: what a channel
    that does not preserve trace hands back. ``normalized`` is the only way
    to a DensityOperator.
    """

    mat: np.ndarray

    def __post_init__(self):
        mat = as_matrix(self.mat, name="positive operator")
        if not is_square(mat):
            raise InvalidInputError(f"Positive operator must be square, got shape {mat.shape}")

        residual = hermiticity_residual(mat)
        if residual > TOL_STATE:
            raise InvalidInputError(f"Positive operator is not Hermitian: max |a - a^dagger| = {residual:.3e}")

        lowest = float(hermitian_eigenvalues(mat, tol=TOL_STATE)[0])
        if lowest < -TOL_STATE:
            raise InvalidInputError(f"Operator is not positive semidefinite: smallest eigenvalue {lowest:.3e}")

        object.__setattr__(self, "mat", mat)

    @property
    def dim(self):
        return self.mat.shape[0]

    def trace(self):
        return float(np.trace(self.mat).real)

    def normalized(self):
        tr = self.trace()
        if tr <= TOL_STATE:
            raise InvalidInputError(f"Cannot normalize an operator of trace {tr:.3e}")
        return DensityOperator(self.mat / tr)


class BellKind(str, Enum):
    PSI_PLUS = "PsiPlus"
    PSI_MINUS = "PsiMinus"
    PHI_PLUS = "PhiPlus"
    PHI_MINUS = "PhiMinus"


# measurement outcome order chi_1..chi_4
BELL_ORDER = (BellKind.PSI_PLUS, BellKind.PSI_MINUS, BellKind.PHI_PLUS, BellKind.PHI_MINUS)

_BELL_AMPLITUDES = {
    BellKind.PSI_PLUS: (0, 1, 1, 0),
    BellKind.PSI_MINUS: (0, 1, -1, 0),
    BellKind.PHI_PLUS: (1, 0, 0, 1),
    BellKind.PHI_MINUS: (1, 0, 0, -1),
}


def bell(kind):
    """Psi+- = (|01> +- |10>)/sqrt2, Phi+- = (|00> +- |11>)/sqrt2"""
    kind = BellKind(kind)
    return StateVector(SQRT_HALF * np.array(_BELL_AMPLITUDES[kind], dtype=np.complex128))


def ket(*amplitudes):
    return StateVector.normalized(amplitudes)


NAMED_VECTORS = {
    "zero": (1, 0),
    "one": (0, 1),
    "plus": (1, 1),
    "minus": (1, -1),
    "plus_i": (1, 1j),
    "minus_i": (1, -1j),
}

STATE_NAMES = tuple(NAMED_VECTORS) + ("mixed",)


def pure(psi):
    """Rank-1 projector |psi><psi|"""
    if not isinstance(psi, StateVector):
        psi = StateVector(psi)
    vec = psi.amplitudes.reshape(-1, 1)
    return DensityOperator(vec @ vec.conj().T)


def maximally_mixed(dim=2):
    return DensityOperator(np.eye(dim, dtype=np.complex128) / dim)


def named_state(name):
    """One of the six Pauli eigenstates by name, or ``mixed`` for I/2"""
    if name == "mixed":
        return maximally_mixed(2)
    if name not in NAMED_VECTORS:
        raise InvalidInputError(f"Unknown state name '{name}'. Supported names: {', '.join(STATE_NAMES)}")
    return pure(ket(*NAMED_VECTORS[name]))


def pauli_eigenstates():
    """|0>, |1>, |+>, |->, |+i>, |-i> as projectors"""
    return [named_state(name) for name in NAMED_VECTORS]


def trace_distance(rho, sigma):
    """1/2 sum |eigenvalues of (rho - sigma)|"""
    if rho.dim != sigma.dim:
        raise InvalidInputError(f"Trace distance between dimension {rho.dim} and {sigma.dim} operators")
    eigenvalues = hermitian_eigenvalues(rho.mat - sigma.mat, tol=2 * TOL_STATE)
    return float(min(max(0.5 * np.sum(np.abs(eigenvalues)), 0.0), 1.0))


def states_equal(rho, sigma, tol=TOL_EQUAL):
    return trace_distance(rho, sigma) <= tol


def random_pure(dim, seed):
    """
    Haar-random unit vector: complex standard-normal amplitudes, normalized.

    ``seed`` is an unsigned integer or an existing ``numpy.random.Generator``
    (drawn from in place), so batches can share one explicit stream.
    """
    if dim < 1:
        raise InvalidInputError(f"Dimension must be positive, got {dim}")
    rng = np.random.default_rng(seed)
    amps = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return StateVector.normalized(amps)


def random_mixed(dim, seed, max_components=MIXTURE_MAX_COMPONENTS):
    """Convex mixture of 1..max_components Haar-random pure states, Dirichlet weights"""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, max_components + 1))
    weights = rng.dirichlet(np.ones(n))
    mat = sum(w * pure(random_pure(dim, rng)).mat for w in weights)
    return DensityOperator(mat)

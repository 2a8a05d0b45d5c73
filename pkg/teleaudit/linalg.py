"""
Dense complex matrix arithmetic.

Every operator in teleaudit is a read-only ``complex128`` ndarray. The
helpers here validate shape and finiteness on the way in and freeze the
result on the way out.
"""
from functools import reduce

import numpy as np

from .config import TOL_EIGEN_SUM, TOL_HERMITIAN
from .errors import ConsistencyError, InvalidInputError

ComplexMatrix = np.ndarray


def freeze(a):
    """Return a read-only complex128 copy of ``a``"""
    out = np.array(a, dtype=np.complex128, copy=True)
    out.flags.writeable = False
    return out


def as_matrix(data, name="matrix"):
    """
    Convert ``data`` to a validated ComplexMatrix.

    Parameters:
    data: anything numpy can turn into a 2-D array
    name (str): used in error messages

    Returns:
    ComplexMatrix: read-only, finite, 2-D
    """
    try:
        arr = np.asarray(data, dtype=np.complex128)
    except (TypeError, ValueError) as e:
        raise InvalidInputError(f"{name} is not a numeric matrix: {e}") from e

    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise InvalidInputError(f"{name} must be a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} contains NaN or infinite entries")

    return freeze(arr)


def identity(dim):
    return freeze(np.eye(dim, dtype=np.complex128))


def is_square(a):
    return a.ndim == 2 and a.shape[0] == a.shape[1]


def matmul(a, b):
    if a.shape[1] != b.shape[0]:
        raise InvalidInputError(f"Cannot multiply {a.shape} by {b.shape}: inner dimensions differ")
    return freeze(a @ b)


def adjoint(a):
    """Conjugate transpose"""
    return freeze(a.conj().T)


def kron(a, b):
    return freeze(np.kron(a, b))


def kron_all(factors):
    """Kronecker product of a non-empty sequence, leftmost factor slowest"""
    return freeze(reduce(np.kron, factors))


def trace(a):
    if not is_square(a):
        raise InvalidInputError(f"Trace needs a square matrix, got shape {a.shape}")
    return complex(np.trace(a))


def max_abs(a):
    """Max-norm ||a||_max, the largest entry modulus"""
    return float(np.max(np.abs(a))) if a.size else 0.0


def hermiticity_residual(a):
    return max_abs(a - a.conj().T)


def is_hermitian(a, tol=TOL_HERMITIAN):
    return is_square(a) and hermiticity_residual(a) <= tol


def hermitian_eigenvalues(a, tol=TOL_HERMITIAN):
    """
    Ascending real spectrum of a Hermitian matrix.

    Raises InvalidInputError when ``a`` is not square or deviates from its
    adjoint by more than ``tol`` entrywise, and ConsistencyError when the
    eigenvalues do not sum to the trace.
    """
    if not is_square(a):
        raise InvalidInputError(f"Eigenvalues need a square matrix, got shape {a.shape}")

    residual = hermiticity_residual(a)
    if residual > tol:
        raise InvalidInputError(f"Matrix is not Hermitian: max |a - a^dagger| = {residual:.3e} > {tol:.0e}")

    # eigvalsh reads one triangle only
    herm = (a + a.conj().T) / 2
    eigenvalues = np.linalg.eigvalsh(herm)

    drift = abs(float(np.sum(eigenvalues)) - float(np.trace(herm).real))
    if drift > TOL_EIGEN_SUM:
        raise ConsistencyError(f"Eigenvalue sum drifts from the trace by {drift:.3e} > {TOL_EIGEN_SUM:.0e}")

    return eigenvalues


def is_unitary(u, tol):
    if not is_square(u):
        return False
    return max_abs(u.conj().T @ u - np.eye(u.shape[0])) <= tol


def is_projector(p, tol):
    if not is_square(p):
        return False
    return max_abs(p @ p - p) <= tol and hermiticity_residual(p) <= tol

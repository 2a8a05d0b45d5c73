import numpy as np

from teleaudit.states import DensityOperator, pure, random_pure

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
P0 = np.diag([1, 0]).astype(complex)
P1 = np.diag([0, 1]).astype(complex)


def random_matrix(rng, n, m=None):
    m = n if m is None else m
    return rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))


def random_density(rng, dim):
    """Random full-rank density operator A A^dagger / tr"""
    a = random_matrix(rng, dim)
    mat = a @ a.conj().T
    return DensityOperator(mat / np.trace(mat))


def random_pure_density(rng, dim):
    return pure(random_pure(dim, rng))

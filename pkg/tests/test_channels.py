import numpy as np
import pytest

from teleaudit.channels import (Side, StructuredKraus, apply, certify, choi, from_kraus, identity_channel,
                                is_trace_preserving, kraus_sum, make_channel, partition_residual)
from teleaudit.errors import InvalidInputError
from teleaudit.linalg import hermitian_eigenvalues
from teleaudit.states import DensityOperator, PositiveOperator, named_state

from .helpers import H, I2, P0, P1, X, random_density

DEPHASING = [StructuredKraus(I2, P0), StructuredKraus(I2, P1)]


def test_identity_channel_leaves_state_alone(rng):
    rho = random_density(rng, 2)
    np.testing.assert_allclose(apply(identity_channel(2), rho).mat, rho.mat, atol=1e-15)


def test_dephasing_kills_off_diagonals():
    channel = make_channel(DEPHASING)
    rho = DensityOperator([[0.7, 0.2 + 0.1j], [0.2 - 0.1j, 0.3]])
    np.testing.assert_allclose(apply(channel, rho).mat, np.diag([0.7, 0.3]), atol=1e-15)
    np.testing.assert_allclose(apply(channel, named_state("plus")).mat, np.eye(2) / 2, atol=1e-15)


def test_partition_violation_is_rejected():
    with pytest.raises(InvalidInputError, match="sum to the identity.*residual norm"):
        make_channel([StructuredKraus(I2, I2), StructuredKraus(I2, I2)])


def test_bad_factors_are_rejected():
    with pytest.raises(InvalidInputError, match="not unitary"):
        StructuredKraus(2 * I2, I2)
    with pytest.raises(InvalidInputError, match="projector"):
        StructuredKraus(I2, np.array([[1, 1], [0, 0]]))
    with pytest.raises(InvalidInputError, match="at least one"):
        make_channel([])


def test_choi_of_identity():
    expected = np.zeros((4, 4))
    for i in (0, 3):
        for j in (0, 3):
            expected[i, j] = 1
    np.testing.assert_allclose(choi(identity_channel(2)), expected)


def test_choi_is_psd_with_trace_dim():
    channel = make_channel([StructuredKraus(H, P0), StructuredKraus(np.diag([1, 1j]), P1)])
    c = choi(channel)
    assert hermitian_eigenvalues(c)[0] >= -1e-10
    assert abs(np.trace(c) - 2) <= 1e-12


def test_trace_preservation_checks():
    check = is_trace_preserving(identity_channel(2))
    assert check.preserving and check.residual == 0

    single = StructuredKraus(H, P0, Side.PROJECTOR_FIRST)
    check = is_trace_preserving(from_kraus([single.operator]))
    assert not check.preserving
    assert check.residual > 0.1


def test_projector_first_output_is_never_renormalized():
    channel = make_channel([
        StructuredKraus(H, P0, Side.PROJECTOR_FIRST),
        StructuredKraus(I2, P1, Side.PROJECTOR_FIRST),
    ])
    assert not is_trace_preserving(channel).preserving

    out = kraus_sum(channel, named_state("one").mat)
    assert abs(np.trace(out) - 1.5) <= 1e-12

    applied = apply(channel, named_state("one"))
    assert isinstance(applied, PositiveOperator)
    assert abs(applied.trace() - 1.5) <= 1e-12
    np.testing.assert_allclose(applied.mat, out, atol=1e-15)
    assert abs(np.trace(applied.normalized().mat) - 1) <= 1e-12


def test_trace_increasing_channel_is_applied():
    channel = make_channel([
        StructuredKraus(I2, P0, Side.PROJECTOR_FIRST),
        StructuredKraus(X, P1, Side.PROJECTOR_FIRST),
    ])
    out = apply(channel, named_state("zero"))
    assert abs(out.trace() - 2) <= 1e-12
    np.testing.assert_allclose(out.normalized().mat, np.eye(2) / 2, atol=1e-12)


def test_trace_preserving_channel_gives_a_density_operator(rng):
    assert isinstance(apply(make_channel(DEPHASING), random_density(rng, 2)), DensityOperator)


def test_unitary_first_terms_give_v_dagger_v_equal_p():
    channel = make_channel([StructuredKraus(H, P0), StructuredKraus(np.diag([1, -1j]), P1)])
    for v, term in zip(channel.operators, channel.terms):
        np.testing.assert_allclose(v.conj().T @ v, term.projector, atol=1e-10)
    assert is_trace_preserving(channel).preserving


def test_apply_is_linear(rng):
    channel = make_channel([StructuredKraus(H, P0), StructuredKraus(I2, P1)])
    for _ in range(10):
        rho, sigma = random_density(rng, 2), random_density(rng, 2)
        w = rng.uniform()
        mixture = DensityOperator(w * rho.mat + (1 - w) * sigma.mat)
        combined = w * apply(channel, rho).mat + (1 - w) * apply(channel, sigma).mat
        np.testing.assert_allclose(apply(channel, mixture).mat, combined, atol=1e-12)
        assert abs(np.trace(apply(channel, rho).mat) - 1) <= 1e-10


def test_apply_dimension_mismatch(rng):
    with pytest.raises(InvalidInputError, match="doesn't match channel"):
        apply(identity_channel(2), random_density(rng, 4))


def test_raw_kraus_escape_hatch():
    channel = from_kraus([np.sqrt(0.5) * I2, np.sqrt(0.5) * np.array([[0, 1], [1, 0]])])
    assert not channel.structured
    assert partition_residual(channel) is None
    cert = certify(channel)
    assert cert.trace_preserving and cert.completely_positive
    assert cert.partition_residual is None


def test_certificate_of_structured_channel():
    cert = certify(make_channel(DEPHASING))
    assert cert.structured
    assert cert.partition_residual <= 1e-10
    assert cert.tp_residual <= 1e-10
    assert cert.choi_min_eigenvalue >= -1e-10

"""
Witness search for the no-cloning statement.

For a channel T on a C, B, A layout and a resource rho_BA, every probe
rho_C is pushed through T and both marginals are compared with rho_C. The
probe with the largest defect is the witness that T does not clone.
"""
import logging
from dataclasses import dataclass

import numpy as np

from .channels import Side, StructuredKraus, kraus_sum, make_channel
from .composite import partial_trace_matrix, product
from .config import DEFAULT_RANDOM_PROBES, TOL_STATE
from .errors import InvalidInputError
from .states import DensityOperator, pauli_eigenstates, pure, random_mixed, random_pure, trace_distance

logger = logging.getLogger(__name__)

CLONE_LABELS = ("C", "B", "A")


@dataclass(frozen=True, eq=False)
class CloneWitness:
    witness_state: DensityOperator
    defect_b: float
    defect_c: float
    probe_index: int

    @property
    def defect(self):
        return max(self.defect_b, self.defect_c)


@dataclass(frozen=True, eq=False)
class InstanceResult:
    seed: int
    n_terms: int
    witness: CloneWitness


def _check_layout(layout):
    missing = [label for label in CLONE_LABELS if label not in layout.labels]
    if missing:
        raise InvalidInputError(f"Layout needs subsystems C, B and A; missing {missing}")


def clone_witness(channel, rho_ba, probes, layout):
    """
    Return the probe maximizing max(defect_b, defect_c); ties go to the
    first probe in order. Channels that do not preserve trace are handled by
    normalizing the marginals with the output trace.
    """
    _check_layout(layout)
    probes = list(probes)
    if not probes:
        raise InvalidInputError("clone_witness needs at least one probe state")
    if channel.dim != layout.total_dim:
        raise InvalidInputError(f"Channel dimension {channel.dim} doesn't match layout dimension {layout.total_dim}")

    ba = layout.canonical(("B", "A"))
    if rho_ba.dim != layout.dim_of(ba):
        raise InvalidInputError(f"Resource dimension {rho_ba.dim} doesn't match B, A dimension {layout.dim_of(ba)}")

    c_dim = layout.dim_of(("C",))
    best = None
    for index, rho_c in enumerate(probes):
        if rho_c.dim != c_dim:
            raise InvalidInputError(f"Probe {index} has dimension {rho_c.dim}, expected {c_dim}")

        out = kraus_sum(channel, product([(rho_c.mat, "C"), (rho_ba.mat, ba)], layout))
        weight = float(np.trace(out).real)
        if weight <= TOL_STATE:
            raise InvalidInputError(f"Channel annihilates probe {index}; no marginals to compare")

        candidate = CloneWitness(
            witness_state=rho_c,
            defect_b=trace_distance(DensityOperator(partial_trace_matrix(out, "B", layout) / weight), rho_c),
            defect_c=trace_distance(DensityOperator(partial_trace_matrix(out, "C", layout) / weight), rho_c),
            probe_index=index,
        )
        if best is None or candidate.defect > best.defect:
            best = candidate

    return best


def default_probes(seed, n_random=DEFAULT_RANDOM_PROBES):
    """The six Pauli eigenstates, then ``n_random`` Haar-random pure qubits"""
    if n_random < 0:
        raise InvalidInputError(f"n_random must be non-negative, got {n_random}")
    rng = np.random.default_rng(seed)
    probes = pauli_eigenstates()
    probes.extend(pure(random_pure(2, rng)) for _ in range(n_random))
    return probes


def haar_unitary(dim, rng):
    """QR of a complex Gaussian matrix, R's diagonal phases folded into Q"""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_partition(dim, n_terms, rng):
    """
    Orthogonal projectors summing to I: a Haar-random basis split into
    ``n_terms`` non-empty contiguous groups at random cut points.
    """
    basis = haar_unitary(dim, rng)
    cuts = np.sort(rng.choice(np.arange(1, dim), size=n_terms - 1, replace=False)) if n_terms > 1 else []
    projectors = []
    for group in np.split(np.arange(dim), cuts):
        columns = basis[:, group]
        projectors.append(columns @ columns.conj().T)
    return projectors


def random_instance(layout, n_terms, seed):
    """Random UnitaryFirst channel with a random projector partition, and a random rho_BA"""
    _check_layout(layout)
    dim = layout.total_dim
    if not 1 <= n_terms <= dim:
        raise InvalidInputError(f"n_terms must be between 1 and {dim}, got {n_terms}")

    rng = np.random.default_rng(seed)
    terms = [
        StructuredKraus(unitary=haar_unitary(dim, rng), projector=p, side=Side.UNITARY_FIRST)
        for p in random_partition(dim, n_terms, rng)
    ]
    channel = make_channel(terms)
    rho_ba = random_mixed(layout.dim_of(layout.canonical(("B", "A"))), rng)
    return channel, rho_ba


def falsify(first_seed, instances, layout, n_random=DEFAULT_RANDOM_PROBES):
    """
    One random instance per seed first_seed, first_seed + 1, ...; the term
    count cycles through 1..4 (capped at the layout dimension).
    """
    if instances < 1:
        raise InvalidInputError(f"instances must be at least 1, got {instances}")

    results = []
    for offset in range(instances):
        seed = first_seed + offset
        n_terms = min(1 + offset % 4, layout.total_dim)
        channel, rho_ba = random_instance(layout, n_terms, seed)
        witness = clone_witness(channel, rho_ba, default_probes(seed, n_random), layout)
        logger.debug(f"Instance seed={seed} terms={n_terms}: defect={witness.defect:.6f}")
        results.append(InstanceResult(seed=seed, n_terms=n_terms, witness=witness))

    logger.info(f"Falsified {instances} instances; minimum defect {min(r.witness.defect for r in results):.6f}")
    return results



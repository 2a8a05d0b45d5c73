"""
Subsystem bookkeeping for composed systems.

A basis state of the full space is |p0> (x) |p1> (x) ... in the layout's
declared part order, leftmost part varying slowest. Every operator that
touches a subset of parts goes through ``embed``/``product`` so callers
never permute indices themselves.
"""
from dataclasses import dataclass
from math import prod

import numpy as np

from .errors import InvalidInputError
from .linalg import freeze, is_square
from .states import DensityOperator


@dataclass(frozen=True)
class SystemLayout:
    """Ordered (label, dim) parts of a composed system"""

    parts: tuple

    def __post_init__(self):
        parts = tuple((str(label), int(dim)) for label, dim in self.parts)
        object.__setattr__(self, "parts", parts)

        if not parts:
            raise InvalidInputError("Layout needs at least one part")
        labels = [label for label, _ in parts]
        if len(set(labels)) != len(labels):
            raise InvalidInputError(f"Layout labels must be distinct, got {labels}")
        for label, dim in parts:
            if dim < 1:
                raise InvalidInputError(f"Part {label} has non-positive dimension {dim}")

    @property
    def labels(self):
        return tuple(label for label, _ in self.parts)

    @property
    def dims(self):
        return tuple(dim for _, dim in self.parts)

    @property
    def total_dim(self):
        return prod(self.dims)

    def dim_of(self, labels):
        """Product of the dims of ``labels``"""
        self.check_labels(labels)
        lookup = dict(self.parts)
        return prod(lookup[label] for label in labels)

    def check_labels(self, labels):
        unknown = [label for label in labels if label not in self.labels]
        if unknown:
            raise InvalidInputError(f"Unknown subsystem label(s) {unknown}; layout has {list(self.labels)}")
        if len(set(labels)) != len(labels):
            raise InvalidInputError(f"Repeated subsystem labels in {list(labels)}")

    def canonical(self, labels):
        """``labels`` sorted into layout order"""
        self.check_labels(labels)
        return tuple(label for label in self.labels if label in labels)


def teleport_layout(dim=2):
    """The C (x) B (x) A layout; B and C share a Hilbert space"""
    return SystemLayout((("C", dim), ("B", dim), ("A", dim)))


def _to_canonical(mat, order, layout):
    """
    Permute an operator whose tensor factors follow ``order`` into layout order.
    """
    n = len(order)
    lookup = dict(layout.parts)
    order_dims = [lookup[label] for label in order]

    tensor = np.asarray(mat).reshape(order_dims + order_dims)
    axes = [order.index(label) for label in layout.labels]
    tensor = tensor.transpose(axes + [n + a for a in axes])

    return freeze(tensor.reshape(layout.total_dim, layout.total_dim))


def _as_label_sequence(on):
    if isinstance(on, str):
        return (on,)
    return tuple(on)


def product(factors, layout):
    """
    Tensor product of operators on disjoint label groups, in layout order.

    Parameters:
    factors: sequence of (operator, labels); each operator's own tensor order
        is the order its labels are listed in
    layout (SystemLayout): must be covered exactly by the label groups

    Returns:
    ComplexMatrix on the full space
    """
    order = []
    mats = []
    for op, on in factors:
        on = _as_label_sequence(on)
        op = np.asarray(op)
        expected = layout.dim_of(on)
        if not is_square(op) or op.shape[0] != expected:
            raise InvalidInputError(f"Operator of shape {op.shape} does not act on {list(on)} (dimension {expected})")
        order.extend(on)
        mats.append(op)

    layout.check_labels(order)
    if set(order) != set(layout.labels):
        missing = [label for label in layout.labels if label not in order]
        raise InvalidInputError(f"Product leaves subsystems {missing} unspecified")

    full = mats[0]
    for m in mats[1:]:
        full = np.kron(full, m)
    return _to_canonical(full, order, layout)


def embed(op, on, layout):
    """
    Lift ``op`` acting on ``on`` (in the listed order) to the full space,
    identity on every other part.
    """
    on = _as_label_sequence(on)
    layout.check_labels(on)
    if not on:
        raise InvalidInputError("embed needs at least one target label")

    rest = tuple(label for label in layout.labels if label not in on)
    factors = [(op, on)]
    if rest:
        factors.append((np.eye(layout.dim_of(rest), dtype=np.complex128), rest))
    return product(factors, layout)


def partial_trace_matrix(mat, keep, layout):
    """
    Trace out every part not in ``keep``; the result is in layout order.

    Works on any square matrix of the layout's dimension, including the
    unnormalized output of a trace-decreasing channel.
    """
    keep = _as_label_sequence(keep)
    if not keep:
        raise InvalidInputError("partial_trace needs a non-empty set of labels to keep")
    keep = layout.canonical(keep)

    mat = np.asarray(mat)
    if mat.shape != (layout.total_dim, layout.total_dim):
        raise InvalidInputError(f"Operator shape {mat.shape} doesn't match layout dimension {layout.total_dim}")

    dims = list(layout.dims)
    labels = list(layout.labels)
    tensor = mat.reshape(dims + dims)

    # trace from the end so earlier axis numbers stay valid
    for idx in reversed(range(len(labels))):
        if labels[idx] in keep:
            continue
        tensor = np.trace(tensor, axis1=idx, axis2=idx + len(dims))
        del dims[idx]
        del labels[idx]

    reduced = prod(dims)
    return freeze(tensor.reshape(reduced, reduced))


def partial_trace(rho, keep, layout):
    """Marginal density operator of ``rho`` on ``keep``"""
    return DensityOperator(partial_trace_matrix(rho.mat, keep, layout))

"""
JSON documents exchanged by the command line: states, channels, reports.

Complex numbers are [re, im] pairs and matrices are lists of rows of pairs.
Floats are written with Python's shortest round-trip repr, so parsing a
printed report reproduces every number exactly.
"""
import json
import math

import numpy as np

from .channels import Side, StructuredKraus, from_kraus, make_channel
from .errors import InvalidInputError
from .states import STATE_NAMES, DensityOperator, named_state


def safe_json_serialization(obj):
    """Convert NaN/inf to null and numpy scalars to Python numbers"""
    if isinstance(obj, dict):
        return {k: safe_json_serialization(v) for k, v in obj.items()}
    elif isinstance(obj, (list, tuple)):
        return [safe_json_serialization(item) for item in obj]
    elif isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    elif isinstance(obj, (np.integer,)):
        return int(obj)
    elif isinstance(obj, (float, np.floating)):
        value = float(obj)
        return None if math.isnan(value) or math.isinf(value) else value
    else:
        return obj


def dumps(payload):
    return json.dumps(safe_json_serialization(payload), indent=2, ensure_ascii=False)


def load_json(text, source="input"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"Malformed JSON in {source}: {e}") from e


def matrix_to_json(mat):
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(mat)]


def matrix_from_json(rows, name="matrix"):
    if not isinstance(rows, list) or not rows:
        raise InvalidInputError(f"{name} must be a non-empty list of rows")

    parsed = []
    for r, row in enumerate(rows):
        if not isinstance(row, list):
            raise InvalidInputError(f"{name} row {r} is not a list")
        values = []
        for c, entry in enumerate(row):
            if (not isinstance(entry, list) or len(entry) != 2
                    or not all(isinstance(part, (int, float)) and not isinstance(part, bool) for part in entry)):
                raise InvalidInputError(f"{name}[{r}][{c}] must be a [re, im] pair of numbers")
            values.append(complex(entry[0], entry[1]))
        parsed.append(values)

    widths = {len(row) for row in parsed}
    if len(widths) != 1:
        raise InvalidInputError(f"{name} rows have different lengths {sorted(widths)}")
    return np.array(parsed, dtype=np.complex128)


def parse_state_document(doc):
    """
    State document -> DensityOperator.

    {"dim": 2, "kind": "named", "name": "plus"} or
    {"dim": 2, "kind": "matrix", "matrix": [[[re, im], ...], ...]}
    """
    if not isinstance(doc, dict):
        raise InvalidInputError("State document must be a JSON object")

    kind = doc.get("kind")
    dim = doc.get("dim")
    has_matrix = doc.get("matrix") is not None
    has_name = doc.get("name") is not None

    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise InvalidInputError(f"State document 'dim' must be a positive integer, got {dim!r}")
    if has_matrix == has_name:
        raise InvalidInputError("State document needs exactly one of 'matrix' or 'name'")

    if kind == "named":
        if not has_name:
            raise InvalidInputError("State document of kind 'named' needs a 'name'")
        if doc["name"] not in STATE_NAMES:
            raise InvalidInputError(f"Unknown state name '{doc['name']}'. Supported names: {', '.join(STATE_NAMES)}")
        rho = named_state(doc["name"])
    elif kind == "matrix":
        if not has_matrix:
            raise InvalidInputError("State document of kind 'matrix' needs a 'matrix'")
        rho = DensityOperator(matrix_from_json(doc["matrix"], name="state matrix"))
    else:
        raise InvalidInputError(f"State document 'kind' must be 'named' or 'matrix', got {kind!r}")

    if rho.dim != dim:
        raise InvalidInputError(f"State document declares dim {dim} but the state has dimension {rho.dim}")
    return rho


def state_document(rho):
    return {"dim": rho.dim, "kind": "matrix", "matrix": matrix_to_json(rho.mat)}


def parse_channel_document(doc):
    """
    Channel document -> KrausChannel.

    Structured: {"dim": n, "terms": [{"unitary": M, "projector": M, "side": "UP"|"PU"}, ...]}
    Raw:        {"dim": n, "kraus": [M, ...]}
    """
    if not isinstance(doc, dict):
        raise InvalidInputError("Channel document must be a JSON object")

    dim = doc.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise InvalidInputError(f"Channel document 'dim' must be a positive integer, got {dim!r}")

    if "terms" in doc and "kraus" in doc:
        raise InvalidInputError("Channel document may give 'terms' or 'kraus', not both")

    if "terms" in doc:
        raw_terms = doc["terms"]
        if not isinstance(raw_terms, list) or not raw_terms:
            raise InvalidInputError("Channel document has an empty Kraus list")
        terms = []
        for i, term in enumerate(raw_terms):
            if not isinstance(term, dict):
                raise InvalidInputError(f"Term {i} must be an object with unitary, projector, side")
            side = term.get("side", Side.UNITARY_FIRST.value)
            if side not in (Side.UNITARY_FIRST.value, Side.PROJECTOR_FIRST.value):
                raise InvalidInputError(f"Term {i} side must be 'UP' or 'PU', got {side!r}")
            terms.append(StructuredKraus(
                unitary=matrix_from_json(term.get("unitary"), name=f"terms[{i}].unitary"),
                projector=matrix_from_json(term.get("projector"), name=f"terms[{i}].projector"),
                side=Side(side),
            ))
        channel = make_channel(terms)
    elif "kraus" in doc:
        raw_ops = doc["kraus"]
        if not isinstance(raw_ops, list) or not raw_ops:
            raise InvalidInputError("Channel document has an empty Kraus list")
        channel = from_kraus([matrix_from_json(op, name=f"kraus[{i}]") for i, op in enumerate(raw_ops)])
    else:
        raise InvalidInputError("Channel document needs 'terms' or 'kraus'")

    if channel.dim != dim:
        raise InvalidInputError(f"Channel document declares dim {dim} but operators have dimension {channel.dim}")
    return channel


def channel_document(channel):
    if channel.structured:
        return {
            "dim": channel.dim,
            "terms": [
                {
                    "unitary": matrix_to_json(term.unitary),
                    "projector": matrix_to_json(term.projector),
                    "side": term.side.value,
                }
                for term in channel.terms
            ],
        }
    return {"dim": channel.dim, "kraus": [matrix_to_json(op) for op in channel.operators]}

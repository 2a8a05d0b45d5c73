"""
Report payloads (the JSON contract) and their fixed-width text rendering.

Text format: a two-column ``field  value`` table built with pandas; matrix
values print as rows of ``re+imj`` entries separated by `` | ``; floats use
6-digit scientific notation. The no-cloning batch prints one row per
instance followed by the summary table.
"""
import pandas as pd

from .config import DEFECT_THRESHOLD
from .documents import matrix_to_json
from .frames import EVENT_ROLES, WINDOW_NOTE, IntervalType

BOUNDARY_NOTE = (
    "Boundary case: the maximally mixed input is the one state for which (T rho)_C = rho_C; "
    "the C marginal map is constant I/2, so C keeps nothing else."
)
NO_REORDERING_NOTE = "No reordering frame exists: the events are not spacelike separated."
UNREPRESENTABLE_BOOST_NOTE = (
    "No reordering frame exists in floating point: the pair is spacelike but so close to the light cone "
    "that no representable |beta| < 1 reverses it."
)


def signal_rows(table):
    return [{"bits": e.bits, "outcome": e.outcome.value, "correction": e.correction} for e in table]


def teleport_payload(report):
    payload = {
        "input_state": matrix_to_json(report.input_state.mat),
        "b_marginal": matrix_to_json(report.b_marginal.mat),
        "c_marginal": matrix_to_json(report.c_marginal.mat),
        "dist_b": report.dist_b,
        "dist_c": report.dist_c,
        "b_matches_input": report.b_matches_input,
        "c_matches_input": report.c_matches_input,
        "boundary_case": report.boundary_case,
        "outcome_probabilities": list(report.outcome_probabilities),
    }
    if report.boundary_case:
        payload["note"] = BOUNDARY_NOTE
    return payload


def audit_payload(report):
    payload = {
        "event_i": {"t": report.event_i.t, "x": report.event_i.x, "role": EVENT_ROLES["EventI"]},
        "event_ii": {"t": report.event_ii.t, "x": report.event_ii.x, "role": EVENT_ROLES["EventII"]},
        "interval_type": report.interval_type.value,
        "rest_order": report.rest_order.value,
        "boosted_order": report.boosted_order.value,
        "beta": report.beta,
        "window": None if report.window is None else {"t_lo": report.window[0], "t_hi": report.window[1]},
        "window_note": WINDOW_NOTE,
        "input_state": matrix_to_json(report.rho_c.mat),
        "asserted_b_marginal": matrix_to_json(report.asserted_b_marginal.mat),
        "asserted_c_marginal": matrix_to_json(report.asserted_c_marginal.mat),
        "clone_pattern_asserted": report.clone_pattern_asserted,
        "actual_c_after": matrix_to_json(report.actual_c_after.mat),
        "dist_actual_c": report.dist_actual_c,
        "verdict": report.verdict.value,
        "boundary_case": report.boundary_case,
        "signal_table": signal_rows(report.signal_table),
    }
    if report.window is None:
        spacelike = report.interval_type is IntervalType.SPACELIKE
        payload["kinematics_note"] = UNREPRESENTABLE_BOOST_NOTE if spacelike else NO_REORDERING_NOTE
    if report.boundary_case:
        payload["note"] = BOUNDARY_NOTE
    return payload


def verify_payload(summary):
    return {
        "seed": summary.seed,
        "n_pure": summary.n_pure,
        "n_mixed": summary.n_mixed,
        "max_dist_b": summary.max_dist_b,
        "min_dist_c": summary.min_dist_c,
        "max_dist_c": summary.max_dist_c,
        "max_c_deviation_from_mixed": summary.max_c_deviation_from_mixed,
        "theorem_holds": summary.theorem_holds,
        "corollary_holds": summary.corollary_holds,
    }


def certificate_payload(cert):
    return {
        "dim": cert.dim,
        "n_terms": cert.n_terms,
        "structured": cert.structured,
        "tp_residual": cert.tp_residual,
        "trace_preserving": cert.trace_preserving,
        "choi_min_eigenvalue": cert.choi_min_eigenvalue,
        "completely_positive": cert.completely_positive,
        "partition_residual": cert.partition_residual,
    }


def witness_frame(results):
    """One row per no-cloning instance"""
    return pd.DataFrame([
        {
            "seed": r.seed,
            "n_terms": r.n_terms,
            "probe": r.witness.probe_index,
            "defect_b": r.witness.defect_b,
            "defect_c": r.witness.defect_c,
            "defect": r.witness.defect,
        }
        for r in results
    ], columns=["seed", "n_terms", "probe", "defect_b", "defect_c", "defect"])


def noclone_payload(results, threshold=DEFECT_THRESHOLD):
    frame = witness_frame(results)
    min_defect = float(frame["defect"].min())
    return {
        "instances": frame.to_dict(orient="records"),
        "min_defect": min_defect,
        "threshold": threshold,
        "all_witnessed": bool(min_defect >= threshold),
    }


def _is_matrix(value):
    return (isinstance(value, list) and value and all(isinstance(row, list) for row in value)
            and all(isinstance(entry, list) and len(entry) == 2 for row in value for entry in row))


def _format_value(value):
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6e}"
    if _is_matrix(value):
        return " | ".join("  ".join(f"{re:+.4f}{im:+.4f}j" for re, im in row) for row in value)
    if isinstance(value, list) and all(isinstance(v, float) for v in value):
        return "  ".join(f"{v:.6f}" for v in value)
    return str(value)


def _flatten(payload, prefix=""):
    rows = []
    for key, value in payload.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            rows.extend(_flatten(value, prefix=f"{name}."))
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            for i, item in enumerate(value):
                rows.extend(_flatten(item, prefix=f"{name}[{i}]."))
        else:
            rows.append((name, _format_value(value)))
    return rows


def render_text(payload):
    """Fixed-width field/value table"""
    frame = pd.DataFrame(_flatten(payload), columns=["field", "value"])
    return frame.to_string(index=False, justify="left")


def render_noclone_text(payload):
    frame = pd.DataFrame(payload["instances"])
    table = frame.to_string(index=False, float_format=lambda v: f"{v:.6e}")
    summary = render_text({k: v for k, v in payload.items() if k != "instances"})
    return f"{table}\n\n{summary}"

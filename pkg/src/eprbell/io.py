"""JSON ingestion and rendering.

Scenario / behavior documents::

    {"settings_a": [[x, y, z], ...],
     "settings_b": [[x, y, z], ...],
     "table": [i][j][a][b]}          # optional for a bare scenario

with outcome index 0 meaning +1 and 1 meaning -1.  Hidden-variable models::

    {"kind": "general" | "local",
     "components": [{"weight": w, "joint": [i][j][a][b]}, ...]
                 | [{"weight": w, "resp_a": [...], "resp_b": [...]}, ...]}

A response table is either a list of P(+1) values, one per setting, or a
list of ``[P(+1), P(-1)]`` rows.  Parse failures raise :class:`ParseError`
naming the JSON path of the offending value.
"""

from __future__ import annotations

import json
import math
from numbers import Real

import numpy as np

from .errors import EPRBellError, ModelError, ParseError
from .lhv import LPResult, Verdict
from .locality import DerivationReport, GeneralState, LambdaModel, LocalityReport, LocalState
from .scenario import DEFAULT_TOL, Behavior, Scenario, make_direction, validate_behavior


def load_json(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(str(path), f"cannot read file ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("$", f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _field(doc, key, path):
    if not isinstance(doc, dict):
        raise ParseError(path, "expected an object")
    if key not in doc:
        raise ParseError(f"{path}.{key}", "missing required field")
    return doc[key]


def _number(value, path) -> float:
    if isinstance(value, bool) or not isinstance(value, Real):
        raise ParseError(path, f"expected a number, got {type(value).__name__}")
    value = float(value)
    if not math.isfinite(value):
        raise ParseError(path, "expected a finite number")
    return value


def _array(value, shape, path) -> np.ndarray:
    """Recursively read a nested list of numbers with a fixed ``shape``.

    ``None`` in ``shape`` accepts any nonzero length at that level.
    """
    if not shape:
        return np.array(_number(value, path))
    if not isinstance(value, list):
        raise ParseError(path, "expected a list")
    length = shape[0]
    if length is None:
        if not value:
            raise ParseError(path, "list must not be empty")
    elif len(value) != length:
        raise ParseError(path, f"expected {length} entries, got {len(value)}")
    return np.stack([_array(v, shape[1:], f"{path}[{k}]") for k, v in enumerate(value)])


def _directions(value, path):
    rows = _array(value, (None, 3), path)
    out = []
    for k, row in enumerate(rows):
        try:
            out.append(make_direction(*row))
        except EPRBellError as exc:
            raise ParseError(f"{path}[{k}]", str(exc)) from exc
    return tuple(out)


def scenario_from_dict(doc, path="$") -> Scenario:
    a = _directions(_field(doc, "settings_a", path), f"{path}.settings_a")
    b = _directions(_field(doc, "settings_b", path), f"{path}.settings_b")
    try:
        return Scenario(a, b)
    except EPRBellError as exc:
        raise ParseError(path, str(exc)) from exc


def behavior_from_dict(doc, tol=DEFAULT_TOL, path="$") -> Behavior:
    """Parse a behavior and reject it unless it validates at ``tol``."""
    s = scenario_from_dict(doc, path)
    table = _array(_field(doc, "table", path), s.table_shape, f"{path}.table")
    b = Behavior(s, table)
    report = validate_behavior(b, tol)
    if not report.ok:
        i, j, oa, ob = report.offending_cells[0]
        raise ParseError(
            f"{path}.table[{i}][{j}][{oa.index}][{ob.index}]",
            "not a valid probability table "
            f"(max negativity {report.max_negativity:g}, "
            f"max normalization error {report.max_normalization_error:g}, tol {tol:g})",
        )
    return b


def _response(value, settings, path) -> np.ndarray:
    if isinstance(value, list) and value and all(not isinstance(v, list) for v in value):
        plus = _array(value, (settings,), path)
        return np.stack([plus, 1.0 - plus], axis=1)
    return _array(value, (settings, 2), path)


def model_from_dict(doc, s: Scenario, tol=DEFAULT_TOL, path="$") -> LambdaModel:
    """Parse a hidden-variable model whose tables match scenario ``s``."""
    kind = _field(doc, "kind", path)
    if kind not in ("general", "local"):
        raise ParseError(f"{path}.kind", f"expected 'general' or 'local', got {kind!r}")
    comps_doc = _field(doc, "components", path)
    if not isinstance(comps_doc, list) or not comps_doc:
        raise ParseError(f"{path}.components", "expected a non-empty list")
    m, n = s.shape
    comps = []
    for k, c in enumerate(comps_doc):
        cpath = f"{path}.components[{k}]"
        w = _number(_field(c, "weight", cpath), f"{cpath}.weight")
        if kind == "general":
            joint = _array(_field(c, "joint", cpath), s.table_shape, f"{cpath}.joint")
            state = GeneralState(joint)
        else:
            ra = _response(_field(c, "resp_a", cpath), m, f"{cpath}.resp_a")
            rb = _response(_field(c, "resp_b", cpath), n, f"{cpath}.resp_b")
            state = LocalState(ra, rb)
        comps.append((w, state))
    try:
        return LambdaModel(tuple(comps), kind=kind, atol=tol)
    except ModelError as exc:
        raise ParseError(f"{path}.components", str(exc)) from exc


def load_scenario(path) -> Scenario:
    return scenario_from_dict(load_json(path))


def load_behavior(path, tol=DEFAULT_TOL) -> Behavior:
    return behavior_from_dict(load_json(path), tol)


def load_model(path, s: Scenario, tol=DEFAULT_TOL) -> LambdaModel:
    return model_from_dict(load_json(path), s, tol)


# --- rendering -------------------------------------------------------------


def scenario_to_dict(s: Scenario) -> dict:
    return {
        "settings_a": [d.as_list() for d in s.settings_a],
        "settings_b": [d.as_list() for d in s.settings_b],
    }


def behavior_to_dict(b: Behavior) -> dict:
    return {**scenario_to_dict(b.scenario), "table": b.table.tolist()}


def model_to_dict(model: LambdaModel) -> dict:
    comps = []
    for w, st in model.components:
        if isinstance(st, GeneralState):
            comps.append({"weight": w, "joint": st.joint.tolist()})
        else:
            comps.append({"weight": w, "resp_a": st.resp_a.tolist(), "resp_b": st.resp_b.tolist()})
    return {"kind": model.kind, "components": comps}


def _cell(cell):
    return [int(v) for v in cell]


def derivation_to_dict(r: DerivationReport) -> dict:
    return {
        "factorized_table": r.factorized_table.table.tolist(),
        "qm_table": r.qm_table.table.tolist(),
        "max_cell_deviation": r.max_cell_deviation,
        "inconsistent": r.inconsistent,
        "verdict": r.verdict,
        "worst_cell": _cell(r.worst_cell),
    }


def locality_to_dict(r: LocalityReport) -> dict:
    return {
        "pi_deviation": r.pi_deviation,
        "oi_deviation": r.oi_deviation,
        "factorization_deviation": r.factorization_deviation,
        "worst_witness": _cell(r.worst_witness),
        "bell_local": r.bell_local,
    }


def lp_to_dict(r: LPResult) -> dict:
    return r.to_dict()


def verdict_to_dict(v: Verdict) -> dict:
    return {
        "conclusion": v.conclusion,
        "part1_established": v.part1_established,
        "part2_established": v.part2_established,
        "chsh": v.chsh,
        "part1": derivation_to_dict(v.part1),
        "part2": lp_to_dict(v.part2),
    }


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False)

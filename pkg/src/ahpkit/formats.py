"""File formats: matrix CSV/JSON, hierarchy documents, weight tables, actions.

Cells may be decimal ("3.8") or rational ("3/2") text in every format;
they are parsed exactly as rationals before the single conversion to
binary floating point, so tie patterns in rankings match hand-computed
exact arithmetic. Serialization uses ``repr`` floats (shortest round
trip), making parse/serialize lossless.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .hierarchy import (
    Action,
    AddAlternative,
    AddCriterion,
    DeleteAlternative,
    DeleteCriterion,
    HierarchyModel,
)
from .kendall import ReversalWeights
from .pcm import PairwiseMatrix, validate


class ParseError(ValueError):
    """Input rejected before validation, with the offending position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


def parse_number(text: str | float | int, line: int | None = None, column: int | None = None) -> float:
    """Parse a decimal or "p/q" rational cell into a float, exactly."""
    if isinstance(text, (int, float)):
        value = float(text)
    else:
        try:
            value = float(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad numeric cell {text!r}: {exc}", line, column) from None
    if not np.isfinite(value):
        raise ParseError(f"non-finite cell {text!r}", line, column)
    return value


def format_number(value: float) -> str:
    return repr(float(value))


# ---------------------------------------------------------------------------
# matrices


def parse_matrix_csv(text: str) -> tuple[tuple[str, ...], np.ndarray]:
    """Read a labeled comparison matrix from CSV text.

    Layout: a header row whose first cell is a free title, then one row
    per alternative starting with its label. Row labels must repeat the
    header labels in order.
    """
    rows = list(csv.reader(io.StringIO(text)))
    rows = [r for r in rows if any(cell.strip() for cell in r)]
    if len(rows) < 3:
        raise ParseError("matrix CSV needs a header row and at least two data rows")
    header = [c.strip() for c in rows[0][1:]]
    n = len(header)
    data = np.empty((n, n))
    labels = []
    if len(rows) - 1 != n:
        raise ParseError(f"header names {n} alternatives but file has {len(rows) - 1} data rows")
    for i, row in enumerate(rows[1:], start=2):
        if len(row) != n + 1:
            raise ParseError(f"expected {n + 1} cells, got {len(row)}", line=i)
        labels.append(row[0].strip())
        for j, cell in enumerate(row[1:], start=2):
            data[i - 2, j - 2] = parse_number(cell, line=i, column=j)
    if labels != header:
        raise ParseError(f"row labels {labels} do not match header labels {header}")
    return tuple(labels), data


def matrix_to_csv(matrix: PairwiseMatrix) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["", *matrix.labels])
    for label, row in zip(matrix.labels, matrix.entries):
        writer.writerow([label, *[format_number(v) for v in row]])
    return out.getvalue()


def _matrix_dict(obj: Any, default_labels: Sequence[str] | None = None) -> tuple[tuple[str, ...] | None, np.ndarray]:
    if not isinstance(obj, dict) or "entries" not in obj:
        raise ParseError("matrix JSON must be an object with an 'entries' field")
    entries = obj["entries"]
    if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
        raise ParseError("'entries' must be a list of rows")
    data = np.array(
        [[parse_number(c, line=i + 1, column=j + 1) for j, c in enumerate(row)] for i, row in enumerate(entries)],
        dtype=float,
    )
    labels = obj.get("labels", default_labels)
    return (tuple(str(l) for l in labels) if labels is not None else None), data


def parse_matrix_json(text: str) -> tuple[tuple[str, ...] | None, np.ndarray]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    return _matrix_dict(obj)


def matrix_to_dict(matrix: PairwiseMatrix) -> dict:
    return {"labels": list(matrix.labels), "entries": [[float(v) for v in row] for row in matrix.entries]}


def matrix_to_json(matrix: PairwiseMatrix) -> str:
    return json.dumps(matrix_to_dict(matrix), indent=2) + "\n"


def load_matrix(path: str | Path, fmt: str | None = None) -> PairwiseMatrix:
    """Load, parse and validate a matrix file; format inferred from the suffix."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if fmt is None:
        fmt = "json" if path.suffix.lower() == ".json" else "csv"
    if fmt == "csv":
        labels, data = parse_matrix_csv(text)
    elif fmt == "json":
        labels, data = parse_matrix_json(text)
    else:
        raise ValueError(f"unknown matrix format {fmt!r}")
    return validate(data, labels)


# ---------------------------------------------------------------------------
# hierarchy documents


def model_to_dict(model: HierarchyModel) -> dict:
    return {
        "goal": model.goal,
        "criteria": {
            "labels": list(model.criteria),
            "matrix": matrix_to_dict(model.criteria_matrix) if model.criteria_matrix else None,
        },
        "alternatives": list(model.alternatives),
        "alt_matrices": {
            crit: matrix_to_dict(mat) for crit, mat in zip(model.criteria, model.alt_matrices)
        },
    }


def model_to_json(model: HierarchyModel) -> str:
    return json.dumps(model_to_dict(model), indent=2) + "\n"


def parse_model_dict(obj: Any) -> HierarchyModel:
    if not isinstance(obj, dict):
        raise ParseError("hierarchy document must be a JSON object")
    for key in ("goal", "criteria", "alternatives", "alt_matrices"):
        if key not in obj:
            raise ParseError(f"hierarchy document missing field {key!r}")
    criteria_obj = obj["criteria"]
    if not isinstance(criteria_obj, dict) or "labels" not in criteria_obj:
        raise ParseError("'criteria' must be an object with 'labels' and 'matrix'")
    criteria = tuple(str(c) for c in criteria_obj["labels"])
    alternatives = tuple(str(a) for a in obj["alternatives"])
    crit_matrix_obj = criteria_obj.get("matrix")
    if crit_matrix_obj is None:
        crit_matrix = None
    else:
        labels, data = _matrix_dict(crit_matrix_obj, criteria)
        crit_matrix = validate(data, labels or criteria)
    alt_matrices = []
    for crit in criteria:
        if crit not in obj["alt_matrices"]:
            raise ParseError(f"no alternative matrix for criterion {crit!r}")
        labels, data = _matrix_dict(obj["alt_matrices"][crit], alternatives)
        alt_matrices.append(validate(data, labels or alternatives))
    return HierarchyModel(
        goal=str(obj["goal"]),
        criteria=criteria,
        criteria_matrix=crit_matrix,
        alternatives=alternatives,
        alt_matrices=tuple(alt_matrices),
    )


def parse_model_json(text: str) -> HierarchyModel:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    return parse_model_dict(obj)


def load_model(path: str | Path) -> HierarchyModel:
    return parse_model_json(Path(path).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# weight tables


@dataclass(frozen=True)
class WeightTableDocument:
    """Labeled weight table as stored on disk."""

    criteria_labels: tuple[str, ...]
    criteria_weights: tuple[float, ...]
    alt_labels: tuple[str, ...]
    alt_weights: np.ndarray  # rows = alternatives

    def __post_init__(self):
        aw = np.asarray(self.alt_weights, dtype=float)
        aw.setflags(write=False)
        object.__setattr__(self, "alt_weights", aw)
        if aw.shape != (len(self.alt_labels), len(self.criteria_labels)):
            raise ParseError("weight table shape does not match its labels")


def parse_weight_table_json(text: str) -> WeightTableDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    for key in ("criteria_labels", "criteria_weights", "alt_labels", "alt_weights"):
        if key not in obj:
            raise ParseError(f"weight table missing field {key!r}")
    return WeightTableDocument(
        criteria_labels=tuple(str(c) for c in obj["criteria_labels"]),
        criteria_weights=tuple(parse_number(v) for v in obj["criteria_weights"]),
        alt_labels=tuple(str(a) for a in obj["alt_labels"]),
        alt_weights=np.array([[parse_number(v) for v in row] for row in obj["alt_weights"]]),
    )


def load_weight_table(path: str | Path) -> WeightTableDocument:
    return parse_weight_table_json(Path(path).read_text(encoding="utf-8"))


def weight_table_to_json(doc: WeightTableDocument) -> str:
    obj = {
        "criteria_labels": list(doc.criteria_labels),
        "criteria_weights": list(doc.criteria_weights),
        "alt_labels": list(doc.alt_labels),
        "alt_weights": [[float(v) for v in row] for row in doc.alt_weights],
    }
    return json.dumps(obj, indent=2) + "\n"


# ---------------------------------------------------------------------------
# what-if actions


def parse_action_dict(obj: Any) -> Action:
    if not isinstance(obj, dict) or "action" not in obj:
        raise ParseError("action must be an object with an 'action' field")
    kind = obj["action"]
    if kind == "delete-alternative":
        return DeleteAlternative(label=str(obj["label"]))
    if kind == "delete-criterion":
        return DeleteCriterion(label=str(obj["label"]))
    if kind == "add-alternative":
        judgments = {}
        raw = obj.get("judgments")
        if not isinstance(raw, dict):
            raise ParseError("add-alternative needs a 'judgments' object keyed by criterion")
        for crit, pair in raw.items():
            if not isinstance(pair, dict) or "row" not in pair or "col" not in pair:
                raise ParseError(f"judgments for {crit!r} need 'row' and 'col' vectors")
            judgments[str(crit)] = (
                tuple(parse_number(v) for v in pair["row"]),
                tuple(parse_number(v) for v in pair["col"]),
            )
        return AddAlternative(label=str(obj["label"]), judgments=judgments)
    if kind == "add-criterion":
        matrix_obj = obj.get("matrix")
        if not isinstance(matrix_obj, dict) or "entries" not in matrix_obj:
            raise ParseError("add-criterion needs a 'matrix' object with 'entries'")
        entries = tuple(
            tuple(parse_number(v) for v in row) for row in matrix_obj["entries"]
        )
        return AddCriterion(
            label=str(obj["label"]),
            goal_row=tuple(parse_number(v) for v in obj["goal_row"]),
            goal_col=tuple(parse_number(v) for v in obj["goal_col"]),
            alt_entries=entries,
        )
    raise ParseError(f"unknown action kind {kind!r}")


def parse_action_json(text: str) -> Action:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    return parse_action_dict(obj)


def reversal_weights_from_json(text: str, m: int) -> ReversalWeights:
    """Parse a reversal-weight override: {"nu_alt": [...], "nu_c": x, "nu_w": y}.

    ``nu_alt`` may be omitted for all-zero per-matrix weights; when given
    it must list one weight per criterion matrix.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad reversal-weight JSON: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise ParseError("reversal weights must be a JSON object")
    nu_alt = obj.get("nu_alt", [0.0] * m)
    if len(nu_alt) != m:
        raise ParseError(f"nu_alt must list {m} weights, got {len(nu_alt)}")
    return ReversalWeights(
        nu_alt=tuple(parse_number(v) for v in nu_alt),
        nu_c=parse_number(obj.get("nu_c", 0.0)),
        nu_w=parse_number(obj.get("nu_w", 0.0)),
    )


def sha256_of(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()

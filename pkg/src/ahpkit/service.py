"""HTTP session service for building hierarchies interactively.

A session holds a possibly partial hierarchy: every off-diagonal judgment
starts unset and the two orientations of a pair are entered
independently. Each accepted mutation bumps a revision counter; mutating
requests must carry the expected revision in ``If-Match`` and stale
revisions are rejected, so concurrent editors cannot silently overwrite
each other. Reports are computed over the complete matrices only, and
what-if previews never mutate the session.

Sessions persist in a single-writer SQLite file so a decision process
survives restarts.
"""

from __future__ import annotations

import json
import sqlite3
import threading
import uuid
from datetime import datetime, timezone
from typing import Any

from fastapi import FastAPI, Header, HTTPException, Response
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .formats import ParseError, parse_action_dict, parse_model_dict, parse_number
from .hierarchy import HierarchyModel, analyze_matrix, apply_action, evaluate, what_if
from .pcm import REL_TOL, AdmissibilityError, validate
from .report import SCHEMA_VERSION

CRITERIA_KEY = "criteria"


class RevisionConflict(Exception):
    def __init__(self, expected: int, actual: int):
        super().__init__(f"revision {expected} is stale, session is at {actual}")
        self.expected = expected
        self.actual = actual


class SessionStore:
    """SQLite-backed session storage; one writer, linearized mutations."""

    def __init__(self, path: str = ":memory:"):
        self._conn = sqlite3.connect(path, check_same_thread=False)
        self._lock = threading.RLock()
        with self._lock:
            self._conn.execute(
                "CREATE TABLE IF NOT EXISTS sessions ("
                "id TEXT PRIMARY KEY, revision INTEGER NOT NULL, body TEXT NOT NULL)"
            )
            self._conn.commit()

    def create(self, body: dict) -> dict:
        with self._lock:
            sid = uuid.uuid4().hex
            now = _now()
            body = dict(body, id=sid, revision=1, created_at=now, updated_at=now)
            self._conn.execute(
                "INSERT INTO sessions (id, revision, body) VALUES (?, ?, ?)",
                (sid, 1, json.dumps(body)),
            )
            self._conn.commit()
            return body

    def get(self, sid: str) -> dict | None:
        with self._lock:
            row = self._conn.execute(
                "SELECT body FROM sessions WHERE id = ?", (sid,)
            ).fetchone()
        return json.loads(row[0]) if row else None

    def update(self, sid: str, expected_revision: int, mutate) -> dict:
        """Apply ``mutate(session) -> session`` atomically with a revision check."""
        with self._lock:
            current = self.get(sid)
            if current is None:
                raise KeyError(sid)
            if current["revision"] != expected_revision:
                raise RevisionConflict(expected_revision, current["revision"])
            updated = mutate(dict(current))
            updated["revision"] = current["revision"] + 1
            updated["updated_at"] = _now()
            self._conn.execute(
                "UPDATE sessions SET revision = ?, body = ? WHERE id = ?",
                (updated["revision"], json.dumps(updated), sid),
            )
            self._conn.commit()
            return updated

    def delete(self, sid: str) -> bool:
        with self._lock:
            cur = self._conn.execute("DELETE FROM sessions WHERE id = ?", (sid,))
            self._conn.commit()
            return cur.rowcount > 0

    def close(self) -> None:
        with self._lock:
            self._conn.close()


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _empty_cells(n: int) -> list[list[float | None]]:
    return [[1.0 if i == j else None for j in range(n)] for i in range(n)]


def _cells_from_matrix(entries) -> list[list[float]]:
    return [[float(v) for v in row] for row in entries]


def _session_body_from_model(model: HierarchyModel) -> dict:
    return {
        "goal": model.goal,
        "criteria": list(model.criteria),
        "alternatives": list(model.alternatives),
        "criteria_cells": _cells_from_matrix(model.criteria_matrix.entries)
        if model.criteria_matrix is not None
        else None,
        "alt_cells": {
            crit: _cells_from_matrix(mat.entries)
            for crit, mat in zip(model.criteria, model.alt_matrices)
        },
    }


def _matrix_slots(session: dict) -> list[tuple[str, list[str], list[list[float | None]]]]:
    slots = []
    if session["criteria_cells"] is not None:
        slots.append((CRITERIA_KEY, session["criteria"], session["criteria_cells"]))
    for crit in session["criteria"]:
        slots.append((crit, session["alternatives"], session["alt_cells"][crit]))
    return slots


def _completion(cells: list[list[float | None]]) -> float:
    n = len(cells)
    off_diag = n * (n - 1)
    if off_diag == 0:
        return 1.0
    filled = sum(
        1 for i in range(n) for j in range(n) if i != j and cells[i][j] is not None
    )
    return filled / off_diag


def _pairs(cells: list[list[float | None]]) -> list[dict]:
    n = len(cells)
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            vij, vji = cells[i][j], cells[j][i]
            theta = vij * vji if (vij is not None and vji is not None) else None
            pairs.append({"i": i, "j": j, "value_ij": vij, "value_ji": vji, "theta": theta})
    return pairs


def session_view(session: dict) -> dict:
    matrices = []
    for key, labels, cells in _matrix_slots(session):
        completion = _completion(cells)
        matrices.append(
            {
                "key": key,
                "labels": list(labels),
                "cells": cells,
                "complete": completion == 1.0,
                "completion": completion,
                "pairs": _pairs(cells),
            }
        )
    return {
        "id": session["id"],
        "revision": session["revision"],
        "created_at": session["created_at"],
        "updated_at": session["updated_at"],
        "goal": session["goal"],
        "criteria": list(session["criteria"]),
        "alternatives": list(session["alternatives"]),
        "matrices": matrices,
    }


def _model_from_session(session: dict) -> HierarchyModel:
    """Build the full model; raises ValueError when any matrix is incomplete."""
    incomplete = [
        key for key, _, cells in _matrix_slots(session) if _completion(cells) < 1.0
    ]
    if incomplete:
        raise ValueError(f"incomplete matrices: {', '.join(incomplete)}")
    criteria = tuple(session["criteria"])
    alternatives = tuple(session["alternatives"])
    crit_matrix = (
        validate(session["criteria_cells"], criteria)
        if session["criteria_cells"] is not None
        else None
    )
    alt_matrices = tuple(
        validate(session["alt_cells"][crit], alternatives) for crit in criteria
    )
    return HierarchyModel(session["goal"], criteria, crit_matrix, alternatives, alt_matrices)


def build_report(session: dict) -> dict:
    """Report over the filled portion: complete matrices now, hierarchy when whole."""
    matrices = []
    incomplete = []
    all_complete = True
    for key, labels, cells in _matrix_slots(session):
        completion = _completion(cells)
        if completion == 1.0:
            section = analyze_matrix(validate(cells, labels), name=key)
            matrices.append(section.to_dict())
        else:
            all_complete = False
            incomplete.append({"matrix": key, "completion": completion})
    hierarchy_dict = None
    if all_complete:
        report = evaluate(_model_from_session(session))
        assert report.hierarchy is not None
        hierarchy_dict = report.hierarchy.to_dict()
    return {
        "schema_version": SCHEMA_VERSION,
        "revision": session["revision"],
        "complete": all_complete,
        "matrices": matrices,
        "incomplete": incomplete,
        "hierarchy": hierarchy_dict,
    }


class CreateSessionRequest(BaseModel):
    seed: dict | None = None
    goal: str | None = None
    criteria: list[str] | None = None
    alternatives: list[str] | None = None


class JudgmentRequest(BaseModel):
    matrix: str
    i: int
    j: int
    value: float | str


def _require_if_match(if_match: str | None) -> int:
    if if_match is None:
        raise HTTPException(
            status_code=428,
            detail="mutations must carry If-Match with the current revision",
        )
    try:
        return int(if_match.strip().strip('"'))
    except ValueError:
        raise HTTPException(status_code=428, detail=f"bad If-Match value {if_match!r}")


def create_app(store: SessionStore | None = None) -> FastAPI:
    store = store or SessionStore()
    app = FastAPI(title="ahpkit session service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
        expose_headers=["ETag"],
    )

    def _get_or_404(sid: str) -> dict:
        session = store.get(sid)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown session {sid}")
        return session

    @app.post("/sessions", status_code=201)
    def create_session(req: CreateSessionRequest, response: Response):
        if req.seed is not None:
            try:
                model = parse_model_dict(req.seed)
            except (ParseError, AdmissibilityError, ValueError) as exc:
                raise HTTPException(status_code=422, detail=str(exc))
            body = _session_body_from_model(model)
        else:
            if not (req.goal and req.criteria and req.alternatives):
                raise HTTPException(
                    status_code=422,
                    detail="provide either a seed model or goal, criteria and alternatives",
                )
            if len(req.alternatives) < 2:
                raise HTTPException(status_code=422, detail="need at least two alternatives")
            m, n = len(req.criteria), len(req.alternatives)
            body = {
                "goal": req.goal,
                "criteria": list(req.criteria),
                "alternatives": list(req.alternatives),
                "criteria_cells": _empty_cells(m) if m > 1 else None,
                "alt_cells": {crit: _empty_cells(n) for crit in req.criteria},
            }
        session = store.create(body)
        response.headers["ETag"] = str(session["revision"])
        return session_view(session)

    @app.get("/sessions/{sid}")
    def get_session(sid: str, response: Response):
        session = _get_or_404(sid)
        response.headers["ETag"] = str(session["revision"])
        return session_view(session)

    @app.put("/sessions/{sid}/judgment")
    def put_judgment(
        sid: str,
        req: JudgmentRequest,
        response: Response,
        if_match: str | None = Header(default=None, alias="If-Match"),
    ):
        expected = _require_if_match(if_match)
        session = _get_or_404(sid)

        slots = {key: (labels, cells) for key, labels, cells in _matrix_slots(session)}
        if req.matrix not in slots:
            raise HTTPException(status_code=422, detail=f"unknown matrix {req.matrix!r}")
        labels, cells = slots[req.matrix]
        n = len(labels)
        if not (0 <= req.i < n and 0 <= req.j < n):
            raise HTTPException(status_code=422, detail=f"cell ({req.i},{req.j}) out of range")
        if req.i == req.j:
            raise HTTPException(status_code=422, detail="diagonal judgments are fixed at 1")
        try:
            value = parse_number(req.value)
        except ParseError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        if value <= 0.0:
            raise HTTPException(status_code=422, detail="judgments must be positive")

        mirror = cells[req.j][req.i]
        if mirror is not None and value * mirror > 1.0 + REL_TOL:
            raise HTTPException(
                status_code=422,
                detail={
                    "error": "pair-product-bound",
                    "message": "the two orientations of a pair must multiply to at most 1",
                    "theta": value * mirror,
                    "suggestion": {"a_ij": 1.0 / mirror, "a_ji": 1.0 / value},
                },
            )

        def mutate(body: dict) -> dict:
            target = (
                body["criteria_cells"]
                if req.matrix == CRITERIA_KEY
                else body["alt_cells"][req.matrix]
            )
            target[req.i][req.j] = value
            return body

        try:
            updated = store.update(sid, expected, mutate)
        except RevisionConflict as exc:
            raise HTTPException(
                status_code=409,
                detail={"error": "revision-conflict", "current_revision": exc.actual},
            )
        response.headers["ETag"] = str(updated["revision"])
        theta = value * mirror if mirror is not None else None
        return {
            "session": session_view(updated),
            "pair": {
                "matrix": req.matrix,
                "i": req.i,
                "j": req.j,
                "value_ij": value,
                "value_ji": mirror,
                "theta": theta,
            },
        }

    @app.get("/sessions/{sid}/report")
    def get_report(sid: str, response: Response):
        session = _get_or_404(sid)
        response.headers["ETag"] = str(session["revision"])
        return build_report(session)

    def _run_what_if(session: dict, action_obj: dict):
        try:
            model = _model_from_session(session)
        except (ValueError, AdmissibilityError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        try:
            action = parse_action_dict(action_obj)
            return model, action, what_if(model, action)
        except (ParseError, AdmissibilityError, KeyError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    @app.post("/sessions/{sid}/whatif")
    def post_whatif(sid: str, action_obj: dict):
        session = _get_or_404(sid)
        _, _, result = _run_what_if(session, action_obj)
        return result.to_dict()

    @app.post("/sessions/{sid}/commit-whatif")
    def post_commit_whatif(
        sid: str,
        action_obj: dict,
        response: Response,
        if_match: str | None = Header(default=None, alias="If-Match"),
    ):
        expected = _require_if_match(if_match)
        session = _get_or_404(sid)
        model, action, result = _run_what_if(session, action_obj)
        new_model = apply_action(model, action)

        def mutate(body: dict) -> dict:
            replacement = _session_body_from_model(new_model)
            body.update(replacement)
            return body

        try:
            updated = store.update(sid, expected, mutate)
        except RevisionConflict as exc:
            raise HTTPException(
                status_code=409,
                detail={"error": "revision-conflict", "current_revision": exc.actual},
            )
        response.headers["ETag"] = str(updated["revision"])
        return {"session": session_view(updated), "whatif": result.to_dict()}

    @app.delete("/sessions/{sid}", status_code=204)
    def delete_session(sid: str):
        if not store.delete(sid):
            raise HTTPException(status_code=404, detail=f"unknown session {sid}")
        return Response(status_code=204)

    return app

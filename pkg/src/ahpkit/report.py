"""Analysis report records and rendering.

The report is the engine's main output: per-matrix diagnostics plus, for
full hierarchies, the synthesized weights and reversal-risk summary.
Reports are plain frozen values; ``to_dict`` fixes the JSON key order so
identical inputs yield identical bytes. Human-readable rendering rounds
to 4 decimal places, JSON keeps full precision.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Mapping

SCHEMA_VERSION = 1


def _fmt(x: float) -> str:
    return f"{x:.4f}"


@dataclass(frozen=True)
class MatrixSection:
    name: str
    labels: tuple[str, ...]
    sbd: float
    reciprocal: bool
    approx_consistent: bool
    witness: Mapping[str, Any] | None
    lambda_max: float
    priorities: tuple[float, ...]
    eigen_residual: float
    eigen_converged: bool
    ranking: tuple[str, ...]
    kendall: float
    pd: float

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "labels": list(self.labels),
            "sbd": self.sbd,
            "reciprocal": self.reciprocal,
            "approx_consistent": self.approx_consistent,
            "witness": dict(self.witness) if self.witness is not None else None,
            "lambda_max": self.lambda_max,
            "priorities": list(self.priorities),
            "eigen_residual": self.eigen_residual,
            "eigen_converged": self.eigen_converged,
            "ranking": list(self.ranking),
            "kendall": self.kendall,
            "pd": self.pd,
        }


@dataclass(frozen=True)
class HierarchySection:
    goal: str
    criteria: tuple[str, ...]
    alternatives: tuple[str, ...]
    criteria_weights: tuple[float, ...]
    alt_weights: tuple[tuple[float, ...], ...]  # rows = alternatives
    final_weights: tuple[float, ...]
    ranking: tuple[str, ...]
    matrix_pds: tuple[float, ...]
    criteria_pd: float
    table_pd: float
    reversal_weights: Mapping[str, Any]
    global_pd: float

    @property
    def winner(self) -> str:
        return self.ranking[0]

    def to_dict(self) -> dict:
        return {
            "goal": self.goal,
            "criteria": list(self.criteria),
            "alternatives": list(self.alternatives),
            "criteria_weights": list(self.criteria_weights),
            "alt_weights": [list(row) for row in self.alt_weights],
            "final_weights": list(self.final_weights),
            "ranking": list(self.ranking),
            "winner": self.winner,
            "matrix_pds": list(self.matrix_pds),
            "criteria_pd": self.criteria_pd,
            "table_pd": self.table_pd,
            "reversal_weights": dict(self.reversal_weights),
            "global_pd": self.global_pd,
        }


@dataclass(frozen=True)
class AnalysisReport:
    matrices: tuple[MatrixSection, ...]
    hierarchy: HierarchySection | None = None
    provenance: Mapping[str, Any] | None = None

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"schema_version": SCHEMA_VERSION}
        out["matrices"] = [m.to_dict() for m in self.matrices]
        out["hierarchy"] = self.hierarchy.to_dict() if self.hierarchy else None
        if self.provenance is not None:
            out["provenance"] = dict(self.provenance)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def with_provenance(self, provenance: Mapping[str, Any]) -> "AnalysisReport":
        return AnalysisReport(self.matrices, self.hierarchy, dict(provenance))


def render_matrix_section(section: MatrixSection) -> str:
    lines = [f"matrix: {section.name} (n={len(section.labels)})"]
    lines.append(f"  sbd                {_fmt(section.sbd)}")
    lines.append(f"  reciprocal         {'yes' if section.reciprocal else 'no'}")
    verdict = "yes" if section.approx_consistent else "no"
    lines.append(f"  approx consistent  {verdict}")
    if section.witness is not None:
        w = section.witness
        lines.append(
            f"  disagreement       {w['axis_a'][0]} {w['axis_a'][1]} vs "
            f"{w['axis_b'][0]} {w['axis_b'][1]}"
        )
    lines.append(f"  lambda_max         {_fmt(section.lambda_max)}")
    pris = " ".join(
        f"{lab}={_fmt(p)}" for lab, p in zip(section.labels, section.priorities)
    )
    lines.append(f"  priorities         {pris}")
    lines.append(f"  ranking            {' > '.join(section.ranking)}")
    lines.append(f"  kendall K          {_fmt(section.kendall)}")
    lines.append(f"  reversal p_d       {_fmt(section.pd)}")
    return "\n".join(lines)


def render_report(report: AnalysisReport) -> str:
    blocks = [render_matrix_section(m) for m in report.matrices]
    h = report.hierarchy
    if h is not None:
        lines = [f"goal: {h.goal}"]
        cw = " ".join(f"{c}={_fmt(w)}" for c, w in zip(h.criteria, h.criteria_weights))
        lines.append(f"  criteria weights   {cw}")
        for alt, row in zip(h.alternatives, h.alt_weights):
            lines.append(f"  {alt:<18} " + " ".join(_fmt(v) for v in row))
        fw = " ".join(f"{a}={_fmt(w)}" for a, w in zip(h.alternatives, h.final_weights))
        lines.append(f"  final weights      {fw}")
        lines.append(f"  ranking            {' > '.join(h.ranking)}")
        lines.append(f"  winner             {h.winner}")
        mp = " ".join(f"{c}={_fmt(p)}" for c, p in zip(h.criteria, h.matrix_pds))
        lines.append(f"  matrix p_d         {mp}")
        lines.append(f"  criteria p_d       {_fmt(h.criteria_pd)}")
        lines.append(f"  structural p_d     {_fmt(h.table_pd)}")
        lines.append(f"  global p_d         {_fmt(h.global_pd)}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"

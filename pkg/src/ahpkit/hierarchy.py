"""Three-level decision hierarchies: goal, criteria, alternatives.

A model bundles one comparison matrix over the criteria plus one matrix
over the alternatives per criterion. Evaluation derives every priority
vector, synthesizes final weights, and attaches the reversal-risk
summary. What-if actions (add/delete an alternative or criterion) return
new models; the report states both the observed effect on the ranking
and whether the structure *guarantees* the ranking could not move.

Dependence between levels is declared metadata only (alternatives depend
on criteria, no same-level dependence); there is no operational test for
dependence, so it is validated for shape, not semantics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

import numpy as np

from . import report as report_mod
from .consistency import is_approx_consistent
from .kendall import (
    ReversalWeights,
    default_reversal_weights,
    kendall_w,
    pd_global,
    pd_single,
    pd_weights,
)
from .pcm import PairwiseMatrix, is_reciprocal, sbd, validate
from .priorities import order_by_weight, principal_eigen

STOCHASTIC_TOL = 1e-9


@dataclass(frozen=True)
class Dependence:
    """Declared level-dependence metadata; shape-validated, not inferred."""

    outer: str = "alternatives-on-criteria"
    inner: bool = False

    def __post_init__(self):
        if self.outer != "alternatives-on-criteria":
            raise ValueError(f"unsupported outer dependence {self.outer!r}")
        if self.inner:
            raise ValueError("inner dependence is not supported")


@dataclass(frozen=True)
class HierarchyModel:
    goal: str
    criteria: tuple[str, ...]
    criteria_matrix: PairwiseMatrix | None  # None exactly when there is one criterion
    alternatives: tuple[str, ...]
    alt_matrices: tuple[PairwiseMatrix, ...]
    dependence: Dependence = field(default_factory=Dependence)

    def __post_init__(self):
        object.__setattr__(self, "criteria", tuple(self.criteria))
        object.__setattr__(self, "alternatives", tuple(self.alternatives))
        object.__setattr__(self, "alt_matrices", tuple(self.alt_matrices))
        if not self.goal:
            raise ValueError("hierarchy needs a goal label")
        m = len(self.criteria)
        if m < 1:
            raise ValueError("hierarchy needs at least one criterion")
        if len(set(self.criteria)) != m:
            raise ValueError("criterion labels must be unique")
        if len(self.alt_matrices) != m:
            raise ValueError(f"{m} criteria but {len(self.alt_matrices)} alternative matrices")
        if m == 1:
            if self.criteria_matrix is not None:
                raise ValueError("single-criterion model must not carry a criteria matrix")
        else:
            if self.criteria_matrix is None:
                raise ValueError("multi-criteria model needs a criteria matrix")
            if self.criteria_matrix.labels != self.criteria:
                raise ValueError("criteria matrix labels do not match criteria")
        if len(self.alternatives) < 2:
            raise ValueError("hierarchy needs at least two alternatives")
        for crit, mat in zip(self.criteria, self.alt_matrices):
            if mat.labels != self.alternatives:
                raise ValueError(
                    f"alternative matrix under {crit!r} has labels {mat.labels}, "
                    f"expected {self.alternatives}"
                )

    @property
    def m(self) -> int:
        return len(self.criteria)

    @property
    def n(self) -> int:
        return len(self.alternatives)

    def alt_matrix(self, criterion: str) -> PairwiseMatrix:
        return self.alt_matrices[self.criteria.index(criterion)]

    @classmethod
    def single_criterion(
        cls, matrix: PairwiseMatrix, goal: str = "goal", criterion: str = "C"
    ) -> "HierarchyModel":
        return cls(
            goal=goal,
            criteria=(criterion,),
            criteria_matrix=None,
            alternatives=matrix.labels,
            alt_matrices=(matrix,),
        )


def ratio_model_from_weights(
    goal: str,
    criteria: Sequence[str],
    criteria_weights: Sequence[float],
    alternatives: Sequence[str],
    alt_weights,
) -> HierarchyModel:
    """Build a model of consistent ratio matrices reproducing given weights.

    Each matrix entry is w_i / w_j, so every eigenvector recovers the
    weights exactly (up to normalization). Handy for studying structural
    reversal risk of a bare weight table.
    """
    aw = np.asarray(alt_weights, dtype=float)
    cw = np.asarray(criteria_weights, dtype=float)
    if aw.shape != (len(alternatives), len(criteria)):
        raise ValueError("alternative weight table shape mismatch")

    def ratio(w: np.ndarray, labels: Sequence[str]) -> PairwiseMatrix:
        return validate(w[:, None] / w[None, :], labels)

    crit_mat = ratio(cw, criteria) if len(criteria) > 1 else None
    alts = tuple(ratio(aw[:, j], alternatives) for j in range(len(criteria)))
    return HierarchyModel(goal, tuple(criteria), crit_mat, tuple(alternatives), alts)


@dataclass(frozen=True)
class WeightTable:
    """Criteria weights plus one column of alternative weights per criterion."""

    criteria_weights: np.ndarray
    alt_weights: np.ndarray  # shape (n, m), columns sum to 1

    def __post_init__(self):
        cw = np.asarray(self.criteria_weights, dtype=float)
        aw = np.asarray(self.alt_weights, dtype=float)
        cw.setflags(write=False)
        aw.setflags(write=False)
        object.__setattr__(self, "criteria_weights", cw)
        object.__setattr__(self, "alt_weights", aw)
        if cw.ndim != 1 or aw.ndim != 2:
            raise ValueError("bad weight table shapes")
        if aw.shape[1] != cw.size:
            raise ValueError(f"{cw.size} criteria weights but {aw.shape[1]} weight columns")
        if abs(float(cw.sum()) - 1.0) > STOCHASTIC_TOL:
            raise ValueError("criteria weights must sum to 1")
        col_sums = aw.sum(axis=0)
        if np.max(np.abs(col_sums - 1.0)) > STOCHASTIC_TOL:
            raise ValueError("every alternative weight column must sum to 1")

    @property
    def n(self) -> int:
        return self.alt_weights.shape[0]

    @property
    def m(self) -> int:
        return self.alt_weights.shape[1]


def weight_table(model: HierarchyModel) -> WeightTable:
    """Eigenvector weights for the criteria and for each criterion's alternatives."""
    if model.m == 1:
        cw = np.array([1.0])
    else:
        assert model.criteria_matrix is not None
        cw = principal_eigen(model.criteria_matrix).as_array()
    aw = np.column_stack([principal_eigen(mat).as_array() for mat in model.alt_matrices])
    return WeightTable(cw, aw)


def synthesize(table: WeightTable) -> np.ndarray:
    """Final alternative weights: per-criterion weights blended by criteria weights."""
    final = table.alt_weights @ table.criteria_weights
    if abs(float(final.sum()) - 1.0) > STOCHASTIC_TOL:
        raise ValueError("synthesized weights do not sum to 1")
    return final


def analyze_matrix(matrix: PairwiseMatrix, name: str) -> report_mod.MatrixSection:
    """Full per-matrix diagnostics: symmetry breaking, consistency, eigen, reversal."""
    ac = is_approx_consistent(matrix)
    witness = None
    if ac.witness is not None:
        w = ac.witness
        witness = {
            "axis_a": list(w.axis_a),
            "ranks_a": list(w.ranking_a.ranks),
            "axis_b": list(w.axis_b),
            "ranks_b": list(w.ranking_b.ranks),
        }
    pv = principal_eigen(matrix)
    k = 1.0 - pd_single(matrix)
    return report_mod.MatrixSection(
        name=name,
        labels=matrix.labels,
        sbd=sbd(matrix),
        reciprocal=is_reciprocal(matrix),
        approx_consistent=ac.consistent,
        witness=witness,
        lambda_max=pv.lambda_max,
        priorities=pv.weights,
        eigen_residual=pv.residual,
        eigen_converged=pv.converged,
        ranking=order_by_weight(pv.weights, matrix.labels),
        kendall=k,
        pd=1.0 - k,
    )


def evaluate(
    model: HierarchyModel, weights: ReversalWeights | None = None
) -> report_mod.AnalysisReport:
    """Evaluate a hierarchy: per-matrix diagnostics, synthesis, reversal summary."""
    sections = []
    if model.criteria_matrix is not None:
        sections.append(analyze_matrix(model.criteria_matrix, "criteria"))
    for crit, mat in zip(model.criteria, model.alt_matrices):
        sections.append(analyze_matrix(mat, crit))

    table = weight_table(model)
    final = synthesize(table)
    ranking = order_by_weight(tuple(final), model.alternatives)

    matrix_pds = tuple(pd_single(mat) for mat in model.alt_matrices)
    # a lone criterion has no peers to disagree with
    criteria_pd = pd_single(model.criteria_matrix) if model.criteria_matrix is not None else 0.0
    table_pd = pd_weights(table.alt_weights)
    if weights is None:
        weights = default_reversal_weights(matrix_pds, criteria_pd, table_pd)
    global_pd = pd_global(matrix_pds, criteria_pd, table_pd, weights)

    hierarchy_section = report_mod.HierarchySection(
        goal=model.goal,
        criteria=model.criteria,
        alternatives=model.alternatives,
        criteria_weights=tuple(float(v) for v in table.criteria_weights),
        alt_weights=tuple(tuple(float(v) for v in row) for row in table.alt_weights),
        final_weights=tuple(float(v) for v in final),
        ranking=ranking,
        matrix_pds=matrix_pds,
        criteria_pd=criteria_pd,
        table_pd=table_pd,
        reversal_weights=weights.to_dict(),
        global_pd=global_pd,
    )
    return report_mod.AnalysisReport(tuple(sections), hierarchy_section)


# ---------------------------------------------------------------------------
# what-if actions


def delete_alternative(model: HierarchyModel, label: str) -> HierarchyModel:
    """Remove one alternative from every matrix; criteria are untouched."""
    if label not in model.alternatives:
        raise KeyError(f"unknown alternative {label!r}")
    if model.n <= 2:
        raise ValueError("cannot delete: at least two alternatives must remain")
    k = model.alternatives.index(label)
    keep = [i for i in range(model.n) if i != k]
    labels = tuple(model.alternatives[i] for i in keep)
    mats = tuple(
        PairwiseMatrix(mat.entries[np.ix_(keep, keep)], labels) for mat in model.alt_matrices
    )
    return HierarchyModel(model.goal, model.criteria, model.criteria_matrix, labels, mats)


def add_alternative(
    model: HierarchyModel,
    label: str,
    judgments: Mapping[str, tuple[Sequence[float], Sequence[float]]],
) -> HierarchyModel:
    """Extend every alternative matrix with one new row and column.

    ``judgments[criterion]`` supplies ``(row, col)``: the new alternative
    judged against each existing one, and each existing one judged against
    the new. Each extended matrix is re-validated, so a pair product
    above 1 in the new entries is rejected.
    """
    if label in model.alternatives:
        raise ValueError(f"alternative {label!r} already present")
    missing = [c for c in model.criteria if c not in judgments]
    if missing:
        raise ValueError(f"missing judgments for criteria: {missing}")
    labels = model.alternatives + (label,)
    mats = []
    for crit, mat in zip(model.criteria, model.alt_matrices):
        row, col = judgments[crit]
        row = np.asarray(row, dtype=float)
        col = np.asarray(col, dtype=float)
        if row.shape != (model.n,) or col.shape != (model.n,):
            raise ValueError(f"judgment vectors under {crit!r} must have length {model.n}")
        ext = np.ones((model.n + 1, model.n + 1))
        ext[: model.n, : model.n] = mat.entries
        ext[model.n, : model.n] = row
        ext[: model.n, model.n] = col
        mats.append(PairwiseMatrix(ext, labels))
    return HierarchyModel(model.goal, model.criteria, model.criteria_matrix, labels, tuple(mats))


def delete_criterion(model: HierarchyModel, label: str) -> HierarchyModel:
    """Drop one criterion and its alternative matrix; re-evaluation is up to the caller."""
    if label not in model.criteria:
        raise KeyError(f"unknown criterion {label!r}")
    if model.m == 1:
        raise ValueError("cannot delete the only criterion")
    k = model.criteria.index(label)
    keep = [j for j in range(model.m) if j != k]
    criteria = tuple(model.criteria[j] for j in keep)
    mats = tuple(model.alt_matrices[j] for j in keep)
    assert model.criteria_matrix is not None
    if len(criteria) == 1:
        crit_mat = None
    else:
        crit_mat = PairwiseMatrix(model.criteria_matrix.entries[np.ix_(keep, keep)], criteria)
    return HierarchyModel(model.goal, criteria, crit_mat, model.alternatives, mats)


def add_criterion(
    model: HierarchyModel,
    label: str,
    goal_row: Sequence[float],
    goal_col: Sequence[float],
    alt_entries,
) -> HierarchyModel:
    """Add a criterion: goal-level judgments plus its alternative matrix.

    ``goal_row`` holds the new criterion judged against each existing one,
    ``goal_col`` the existing ones judged against the new.
    """
    if label in model.criteria:
        raise ValueError(f"criterion {label!r} already present")
    row = np.asarray(goal_row, dtype=float)
    col = np.asarray(goal_col, dtype=float)
    if row.shape != (model.m,) or col.shape != (model.m,):
        raise ValueError(f"goal-level judgment vectors must have length {model.m}")
    base = model.criteria_matrix.entries if model.criteria_matrix is not None else np.ones((1, 1))
    ext = np.ones((model.m + 1, model.m + 1))
    ext[: model.m, : model.m] = base
    ext[model.m, : model.m] = row
    ext[: model.m, model.m] = col
    criteria = model.criteria + (label,)
    crit_mat = PairwiseMatrix(ext, criteria)
    new_alt = PairwiseMatrix(np.asarray(alt_entries, dtype=float), model.alternatives)
    return HierarchyModel(
        model.goal, criteria, crit_mat, model.alternatives, model.alt_matrices + (new_alt,)
    )


@dataclass(frozen=True)
class DeleteAlternative:
    label: str

    def describe(self) -> dict:
        return {"action": "delete-alternative", "label": self.label}


@dataclass(frozen=True)
class AddAlternative:
    label: str
    judgments: Mapping[str, tuple[tuple[float, ...], tuple[float, ...]]]

    def describe(self) -> dict:
        return {"action": "add-alternative", "label": self.label}


@dataclass(frozen=True)
class DeleteCriterion:
    label: str

    def describe(self) -> dict:
        return {"action": "delete-criterion", "label": self.label}


@dataclass(frozen=True)
class AddCriterion:
    label: str
    goal_row: tuple[float, ...]
    goal_col: tuple[float, ...]
    alt_entries: tuple[tuple[float, ...], ...]

    def describe(self) -> dict:
        return {"action": "add-criterion", "label": self.label}


Action = DeleteAlternative | AddAlternative | DeleteCriterion | AddCriterion


def apply_action(model: HierarchyModel, action: Action) -> HierarchyModel:
    if isinstance(action, DeleteAlternative):
        return delete_alternative(model, action.label)
    if isinstance(action, AddAlternative):
        return add_alternative(model, action.label, action.judgments)
    if isinstance(action, DeleteCriterion):
        return delete_criterion(model, action.label)
    if isinstance(action, AddCriterion):
        return add_criterion(
            model, action.label, action.goal_row, action.goal_col, action.alt_entries
        )
    raise TypeError(f"unknown action {action!r}")


def _identical_criterion_rankings(model: HierarchyModel) -> bool:
    return kendall_w(weight_table(model).alt_weights) == 1.0


def _all_matrices_agree(model: HierarchyModel) -> bool:
    return all(is_approx_consistent(mat).consistent for mat in model.alt_matrices)


def equilibrium_guarantee(
    model: HierarchyModel, action: Action, after: HierarchyModel
) -> tuple[bool, str]:
    """Decide whether the structure guarantees the action cannot reorder alternatives.

    The guarantees are structural, not observational: a False verdict
    means "no guarantee", not "reversal will happen".
    """
    if isinstance(action, DeleteAlternative):
        if model.m == 1:
            if is_approx_consistent(model.alt_matrices[0]).consistent:
                return True, "rows and columns agree; deletion keeps the survivors' order"
            return False, "no guarantee: matrix rows and columns rank the alternatives differently"
        if not _all_matrices_agree(model):
            return False, "no guarantee: some matrix ranks inconsistently across its rows and columns"
        if not _identical_criterion_rankings(model):
            return False, "no guarantee: criteria rank the alternatives differently (structural reversal possible)"
        return True, "all criteria rank the alternatives identically; deletion keeps the final order"
    if isinstance(action, AddAlternative):
        if model.m == 1:
            if is_approx_consistent(after.alt_matrices[0]).consistent:
                return True, "extended matrix still agrees across rows and columns; old order embedded unchanged"
            return False, "no guarantee: extended matrix rows and columns disagree"
        if _identical_criterion_rankings(model) and _identical_criterion_rankings(after):
            return True, "all criteria rank the extended alternative set identically; old order unchanged"
        return False, "no guarantee: criterion rankings are not identical after the addition"
    if isinstance(action, DeleteCriterion):
        if _identical_criterion_rankings(model):
            return True, "all criteria rank the alternatives identically; dropping one cannot reorder them"
        return False, "no guarantee: criteria rank the alternatives differently"
    if isinstance(action, AddCriterion):
        if _identical_criterion_rankings(model) and _identical_criterion_rankings(after):
            return True, "new criterion ranks the alternatives like the existing common ranking"
        return False, "no guarantee: the new criterion's ranking differs from the existing ones"
    raise TypeError(f"unknown action {action!r}")


@dataclass(frozen=True)
class WhatIfReport:
    action: Mapping[str, Any]
    ranking_before: tuple[str, ...]
    ranking_after: tuple[str, ...]
    ranking_preserved: bool
    equilibrium: bool
    theorem_basis: str
    pd_summary: Mapping[str, Any]

    def to_dict(self) -> dict:
        return {
            "action": dict(self.action),
            "ranking_before": list(self.ranking_before),
            "ranking_after": list(self.ranking_after),
            "ranking_preserved": self.ranking_preserved,
            "equilibrium": self.equilibrium,
            "theorem_basis": self.theorem_basis,
            "pd_summary": dict(self.pd_summary),
        }


def _restriction_preserved(
    action: Action, before: tuple[str, ...], after: tuple[str, ...]
) -> bool:
    if isinstance(action, DeleteAlternative):
        return [l for l in before if l != action.label] == list(after)
    if isinstance(action, AddAlternative):
        return [l for l in after if l != action.label] == list(before)
    return before == after


def what_if(
    model: HierarchyModel, action: Action, weights: ReversalWeights | None = None
) -> WhatIfReport:
    """Preview an action: before/after rankings, guarantee verdict, risk summary."""
    before_report = evaluate(model, weights)
    after_model = apply_action(model, action)
    after_report = evaluate(after_model)
    assert before_report.hierarchy is not None and after_report.hierarchy is not None
    before_ranking = before_report.hierarchy.ranking
    after_ranking = after_report.hierarchy.ranking
    guaranteed, basis = equilibrium_guarantee(model, action, after_model)
    h = before_report.hierarchy
    pd_summary = {
        "matrix_pds": {c: p for c, p in zip(h.criteria, h.matrix_pds)},
        "criteria_pd": h.criteria_pd,
        "table_pd": h.table_pd,
        "reversal_weights": dict(h.reversal_weights),
        "global_pd": h.global_pd,
    }
    return WhatIfReport(
        action=action.describe(),
        ranking_before=before_ranking,
        ranking_after=after_ranking,
        ranking_preserved=_restriction_preserved(action, before_ranking, after_ranking),
        equilibrium=guaranteed,
        theorem_basis=basis,
        pd_summary=pd_summary,
    )

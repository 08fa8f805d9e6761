"""Hierarchy synthesis, add/delete actions, and what-if reports."""

import numpy as np
import pytest

from ahpkit import (
    AddAlternative,
    AddCriterion,
    AdmissibilityError,
    DeleteAlternative,
    DeleteCriterion,
    HierarchyModel,
    WeightTable,
    add_alternative,
    add_criterion,
    delete_alternative,
    delete_criterion,
    evaluate,
    is_approx_consistent,
    principal_eigen,
    ratio_model_from_weights,
    synthesize,
    validate,
    weight_table,
    what_if,
)
from tests.conftest import CARS, W3_ROWS, exact, rat


class TestModelValidation:
    def test_alt_label_mismatch_rejected(self, table1):
        bad = validate(np.ones((3, 3)), ("a", "b", "c"))
        with pytest.raises(ValueError, match="labels"):
            HierarchyModel("g", table1.labels, table1, CARS, (bad,) * 4)

    def test_matrix_count_must_match_criteria(self, table1, car_model):
        with pytest.raises(ValueError, match="matrices"):
            HierarchyModel("g", table1.labels, table1, CARS, car_model.alt_matrices[:2])

    def test_single_criterion_carries_no_criteria_matrix(self, a1sigma, table1):
        with pytest.raises(ValueError, match="single-criterion"):
            HierarchyModel("g", ("C",), table1, a1sigma.labels, (a1sigma,))

    def test_multi_criteria_needs_matrix(self, car_model):
        with pytest.raises(ValueError, match="criteria matrix"):
            HierarchyModel("g", car_model.criteria, None, CARS, car_model.alt_matrices)

    def test_single_criterion_factory(self, a1sigma):
        model = HierarchyModel.single_criterion(a1sigma)
        assert model.m == 1 and model.criteria_matrix is None


class TestSynthesis:
    def test_car_final_weights(self, car_model):
        final = synthesize(weight_table(car_model))
        expected = (0.3443, 0.2002, 0.4556)
        for got, want in zip(final, expected):
            assert got == pytest.approx(want, abs=1e-3)
        assert float(final.sum()) == pytest.approx(1.0, abs=1e-9)

    def test_modified_criteria_final_weights(self, car_model_table6):
        final = synthesize(weight_table(car_model_table6))
        expected = (0.3417, 0.1998, 0.4585)
        for got, want in zip(final, expected):
            assert got == pytest.approx(want, abs=1e-3)

    def test_single_criterion_passthrough(self, a1sigma_model, a1sigma):
        final = synthesize(weight_table(a1sigma_model))
        assert np.allclose(final, principal_eigen(a1sigma).as_array(), atol=1e-12)

    def test_column_stochasticity_enforced(self):
        with pytest.raises(ValueError, match="sum to 1"):
            WeightTable(np.array([0.5, 0.5]), np.array([[0.9, 0.5], [0.3, 0.5]]))


class TestEvaluate:
    def test_car_report(self, car_model):
        report = evaluate(car_model)
        h = report.hierarchy
        assert h.winner == "Honda Civic"
        assert h.ranking == ("Honda Civic", "Acura TL", "Toyota Camry")
        assert h.table_pd == 0.9375
        assert h.matrix_pds == (0.0, 0.0, 0.0, 0.0)
        assert [m.name for m in report.matrices] == ["criteria", *car_model.criteria]

    def test_modified_criteria_report(self, car_model_table6):
        report = evaluate(car_model_table6)
        h = report.hierarchy
        assert h.winner == "Honda Civic"
        assert h.table_pd == 0.9375
        # agreeing alternative matrices split the weight between the
        # criteria comparisons and the structural dependence
        assert h.reversal_weights["nu_c"] == h.reversal_weights["nu_w"] == 0.5
        assert h.global_pd == pytest.approx(0.5 * h.criteria_pd + 0.5 * 0.9375, abs=1e-12)

    def test_deterministic_bytes(self, car_model):
        assert evaluate(car_model).to_json() == evaluate(car_model).to_json()

    def test_consistent_identical_model_has_zero_global_pd(self):
        w = np.array([[0.5, 0.5], [0.3, 0.3], [0.2, 0.2]])
        model = ratio_model_from_weights("g", ("C1", "C2"), (0.6, 0.4), ("a", "b", "c"), w)
        report = evaluate(model)
        assert report.hierarchy.global_pd == 0.0


class TestDeleteAlternative:
    def test_a1sigma_delete_matches_published_submatrix(self, a1sigma_model, a1d):
        after = delete_alternative(a1sigma_model, "x5")
        assert np.array_equal(after.alt_matrices[0].entries, a1d.entries)
        assert after.alternatives == ("x1", "x3", "x4", "x2")

    def test_ranking_restriction_preserved(self, a1sigma_model):
        before = evaluate(a1sigma_model).hierarchy.ranking
        after = evaluate(delete_alternative(a1sigma_model, "x5")).hierarchy.ranking
        assert after == tuple(l for l in before if l != "x5")

    def test_deletion_preserves_approximate_consistency(self, a1sigma_model):
        for label in a1sigma_model.alternatives[:3]:
            reduced = delete_alternative(a1sigma_model, label)
            assert is_approx_consistent(reduced.alt_matrices[0])

    def test_cannot_drop_below_two(self):
        m = validate([[1, 2], [0.5, 1]], ("a", "b"))
        model = HierarchyModel.single_criterion(m)
        with pytest.raises(ValueError, match="remain"):
            delete_alternative(model, "a")

    def test_unknown_label(self, car_model):
        with pytest.raises(KeyError):
            delete_alternative(car_model, "Yugo")


X6_ROW = tuple(rat(v) for v in ("1/6", "1/4", "1/2", "2/3", "5/4"))
X6_COL = tuple(rat(v) for v in (6, 4, 2, "3/2", "2/3"))


class TestAddAlternative:
    def test_published_extension_after_mirror_repair(self, a1sigma_model):
        after = add_alternative(a1sigma_model, "x6", {"C": (X6_ROW, X6_COL)})
        assert after.alternatives == ("x1", "x3", "x4", "x5", "x2", "x6")
        assert is_approx_consistent(after.alt_matrices[0])
        assert evaluate(after).hierarchy.ranking == ("x1", "x3", "x4", "x5", "x6", "x2")

    def test_published_extension_verbatim_is_rejected(self, a1sigma_model):
        # as published, the (x6, x2) pair multiplies to 1.2
        row = tuple(rat(v) for v in ("1/6", "1/4", "1/2", "2/3", "3/2"))
        col = tuple(rat(v) for v in (6, 4, 2, "3/2", "4/5"))
        with pytest.raises(AdmissibilityError):
            add_alternative(a1sigma_model, "x6", {"C": (row, col)})

    def test_duplicate_judgments_tie_behind_original(self, a1sigma_model, a1sigma):
        # clone x5's comparisons; the clone ranks right after x5
        i = a1sigma.label_index("x5")
        row = tuple(a1sigma.entries[i, :])
        col = tuple(a1sigma.entries[:, i])
        after = add_alternative(a1sigma_model, "x5b", {"C": (row, col)})
        ranking = evaluate(after).hierarchy.ranking
        assert ranking == ("x1", "x3", "x4", "x5", "x5b", "x2")

    def test_missing_criterion_judgments(self, car_model):
        with pytest.raises(ValueError, match="missing judgments"):
            add_alternative(car_model, "Yugo", {"Price": ((1, 1, 1), (1, 1, 1))})


class TestCriterionActions:
    def test_delete_criterion_matches_direct_synthesis(self, car_model):
        after = delete_criterion(car_model, "Prestige")
        assert after.criteria == ("Price", "MPG", "Comfort")
        got = synthesize(weight_table(after))
        # independent recomputation from the reduced criteria matrix
        sub = car_model.criteria_matrix.entries[np.ix_([1, 2, 3], [1, 2, 3])]
        values, vectors = np.linalg.eig(sub)
        k = int(np.argmax(values.real))
        cw = np.abs(vectors[:, k].real)
        cw /= cw.sum()
        alt = np.column_stack(
            [principal_eigen(m).as_array() for m in after.alt_matrices]
        )
        assert np.max(np.abs(got - alt @ cw)) < 1e-9

    def test_delete_to_single_criterion_drops_matrix(self, car_model):
        model = car_model
        for crit in ("Prestige", "Price", "MPG"):
            model = delete_criterion(model, crit)
        assert model.m == 1 and model.criteria_matrix is None
        evaluate(model)

    def test_cannot_delete_only_criterion(self, a1sigma_model):
        with pytest.raises(ValueError, match="only criterion"):
            delete_criterion(a1sigma_model, "C")

    def test_add_criterion_with_matching_ranking_keeps_order(self):
        w = np.array([[0.5, 0.55], [0.3, 0.25], [0.2, 0.20]])
        model = ratio_model_from_weights("g", ("C1", "C2"), (0.5, 0.5), ("a", "b", "c"), w)
        before = evaluate(model).hierarchy.ranking
        new_col = np.array([0.6, 0.3, 0.1])
        after = add_criterion(
            model,
            "C3",
            goal_row=(1.0, 1.0),
            goal_col=(1.0, 1.0),
            alt_entries=new_col[:, None] / new_col[None, :],
        )
        assert evaluate(after).hierarchy.ranking == before

    def test_add_criterion_size_mismatch(self, car_model):
        with pytest.raises(ValueError, match="length"):
            add_criterion(car_model, "Safety", (1.0,), (1.0,), np.ones((3, 3)))


class TestWhatIf:
    def test_delete_from_agreeing_single_criterion_model(self, a1sigma_model):
        result = what_if(a1sigma_model, DeleteAlternative("x5"))
        assert result.equilibrium
        assert result.ranking_preserved
        assert result.ranking_after == ("x1", "x3", "x4", "x2")
        assert "agree" in result.theorem_basis

    def test_add_preserving_agreement(self, a1sigma_model):
        result = what_if(a1sigma_model, AddAlternative("x6", {"C": (X6_ROW, X6_COL)}))
        assert result.equilibrium
        assert result.ranking_preserved
        assert result.ranking_before == ("x1", "x3", "x4", "x5", "x2")

    def test_structural_disagreement_voids_guarantee(self):
        model = ratio_model_from_weights(
            "g", ("C1", "C2", "C3", "C4"), (0.25,) * 4, ("x1", "x2", "x3"), exact(W3_ROWS)
        )
        result = what_if(model, DeleteAlternative("x1"))
        assert not result.equilibrium
        assert "no guarantee" in result.theorem_basis
        assert result.pd_summary["table_pd"] == 0.9375

    def test_inconsistent_single_matrix_voids_guarantee(self, a2):
        model = HierarchyModel.single_criterion(a2)
        result = what_if(model, DeleteAlternative("x5"))
        assert not result.equilibrium
        # reversal needs not happen even without the guarantee
        assert result.ranking_preserved

    def test_delete_criterion_under_identical_rankings(self):
        w = np.array([[0.5, 0.6], [0.3, 0.25], [0.2, 0.15]])
        model = ratio_model_from_weights("g", ("C1", "C2"), (0.7, 0.3), ("a", "b", "c"), w)
        result = what_if(model, DeleteCriterion("C2"))
        assert result.equilibrium
        assert result.ranking_preserved

    def test_add_criterion_with_divergent_ranking_is_flagged(self):
        w = np.array([[0.5, 0.6], [0.3, 0.25], [0.2, 0.15]])
        model = ratio_model_from_weights("g", ("C1", "C2"), (0.7, 0.3), ("a", "b", "c"), w)
        new_col = np.array([0.1, 0.2, 0.7])
        result = what_if(
            model,
            AddCriterion(
                "C3",
                goal_row=(1.0, 1.0),
                goal_col=(1.0, 1.0),
                alt_entries=tuple(
                    tuple(new_col[i] / new_col[j] for j in range(3)) for i in range(3)
                ),
            ),
        )
        assert not result.equilibrium

    def test_report_carries_action_descriptor(self, car_model):
        result = what_if(car_model, DeleteAlternative("Acura TL"))
        assert result.action == {"action": "delete-alternative", "label": "Acura TL"}
        assert set(result.pd_summary) == {
            "matrix_pds",
            "criteria_pd",
            "table_pd",
            "reversal_weights",
            "global_pd",
        }


def test_ratio_model_reproduces_weights():
    w = exact(W3_ROWS)
    model = ratio_model_from_weights(
        "g", ("C1", "C2", "C3", "C4"), (0.25,) * 4, ("x1", "x2", "x3"), w
    )
    table = weight_table(model)
    assert np.max(np.abs(table.alt_weights - w)) < 1e-9
    assert np.max(np.abs(table.criteria_weights - 0.25)) < 1e-9

"""Pairwise comparison matrices without the reciprocal assumption.

A pairwise comparison matrix holds positive preference intensities a_ij
("how strongly is alternative i preferred to alternative j"). Classical
practice forces a_ji = 1/a_ij; here the two orientations are independent
judgments constrained only by

    0 < a_ij * a_ji <= 1        (admissibility product bound)

The pair product theta_ij = a_ij * a_ji measures how far a pair deviates
from reciprocity (theta = 1 means reciprocal). Matrices violating the
upper bound can be repaired explicitly with :func:`mirror_normalize`,
which maps each offending pair onto its sub-reciprocal mirror image
(theta -> 1/theta); the repair is opt-in, never silent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

#: Relative tolerance for the unit-diagonal and product-bound checks.
#: Judgment data are low-precision rationals; this separates real
#: violations from parse rounding.
REL_TOL = 1e-9


def default_labels(n: int) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(n))


def _as_square(entries) -> np.ndarray:
    arr = np.array(entries, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if arr.shape[0] < 2:
        raise ValueError("pairwise comparison needs at least 2 alternatives")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite numbers")
    return arr


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class CellViolation:
    """One admissibility failure at cell (i, j) (0-based)."""

    rule: str  # "positivity" | "unit-diagonal" | "product-bound"
    i: int
    j: int
    value: float

    def describe(self) -> str:
        if self.rule == "positivity":
            return f"a[{self.i},{self.j}] = {self.value} is not positive"
        if self.rule == "unit-diagonal":
            return f"a[{self.i},{self.i}] = {self.value} differs from 1"
        return (
            f"a[{self.i},{self.j}]*a[{self.j},{self.i}] = {self.value} "
            f"exceeds 1"
        )


@dataclass(frozen=True)
class AdmissibilityReport:
    n: int
    violations: tuple[CellViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def describe(self) -> str:
        if self.ok:
            return "admissible"
        return "; ".join(v.describe() for v in self.violations)


class AdmissibilityError(ValueError):
    """Raised when a matrix violates the admissibility invariants."""

    def __init__(self, report: AdmissibilityReport):
        super().__init__(report.describe())
        self.report = report


def check(entries, tol: float = REL_TOL) -> AdmissibilityReport:
    """Check admissibility of a raw square array without constructing a matrix.

    Reports every violated cell: positivity of all entries, unit diagonal,
    and the product bound a_ij * a_ji <= 1 per unordered pair.
    """
    arr = _as_square(entries)
    n = arr.shape[0]
    violations: list[CellViolation] = []
    for i in range(n):
        for j in range(n):
            if not arr[i, j] > 0.0:
                violations.append(CellViolation("positivity", i, j, float(arr[i, j])))
    if not violations:
        for i in range(n):
            if abs(arr[i, i] - 1.0) > tol:
                violations.append(CellViolation("unit-diagonal", i, i, float(arr[i, i])))
        for i in range(n):
            for j in range(i + 1, n):
                prod = float(arr[i, j] * arr[j, i])
                if prod > 1.0 + tol:
                    violations.append(CellViolation("product-bound", i, j, prod))
    return AdmissibilityReport(n=n, violations=tuple(violations))


@dataclass(frozen=True)
class PairwiseMatrix:
    """Admissible matrix of preference intensities, immutable after construction."""

    entries: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        arr = _frozen(_as_square(self.entries))
        object.__setattr__(self, "entries", arr)
        labels = tuple(str(l) for l in self.labels)
        if len(labels) != arr.shape[0]:
            raise ValueError(f"{len(labels)} labels for a {arr.shape[0]}x{arr.shape[0]} matrix")
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be unique")
        object.__setattr__(self, "labels", labels)
        report = check(arr)
        if not report.ok:
            raise AdmissibilityError(report)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def label_index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown label {label!r}") from None

    def row(self, i: int) -> np.ndarray:
        return self.entries[i, :]

    def column(self, j: int) -> np.ndarray:
        return self.entries[:, j]

    def relabel(self, labels: Iterable[str]) -> "PairwiseMatrix":
        return PairwiseMatrix(self.entries, tuple(labels))


def validate(entries, labels: Sequence[str] | None = None, tol: float = REL_TOL) -> PairwiseMatrix:
    """Validate a raw array and return a :class:`PairwiseMatrix`.

    Raises :class:`AdmissibilityError` carrying the full violation report
    when any cell breaks positivity, the unit diagonal, or the product
    bound. Inputs with a_ij * a_ji > 1 are rejected here; repairing them
    is the explicit job of :func:`mirror_normalize`.
    """
    arr = _as_square(entries)
    report = check(arr, tol)
    if not report.ok:
        raise AdmissibilityError(report)
    if labels is None:
        labels = default_labels(arr.shape[0])
    return PairwiseMatrix(arr, tuple(labels))


def mirror_normalize(entries, labels: Sequence[str] | None = None, tol: float = REL_TOL) -> PairwiseMatrix:
    """Repair super-reciprocal pairs by reflecting them below the bound.

    For every pair with a_ij * a_ji > 1, both entries are replaced by the
    reciprocals of their transposes (a_ij <- 1/a_ji, a_ji <- 1/a_ij), so
    the new pair product is the reciprocal of the old one. Pairs already
    within the bound are untouched, which makes the operation idempotent.
    """
    arr = _as_square(entries)
    n = arr.shape[0]
    base = check(arr, tol)
    blocking = tuple(v for v in base.violations if v.rule != "product-bound")
    if blocking:
        raise AdmissibilityError(AdmissibilityReport(n=n, violations=blocking))
    out = arr.copy()
    for i in range(n):
        for j in range(i + 1, n):
            if arr[i, j] * arr[j, i] > 1.0 + tol:
                out[i, j] = 1.0 / arr[j, i]
                out[j, i] = 1.0 / arr[i, j]
    if labels is None:
        labels = default_labels(n)
    return PairwiseMatrix(out, tuple(labels))


@dataclass(frozen=True)
class ThetaMatrix:
    """Symmetric matrix of pair products theta_ij = a_ij * a_ji."""

    entries: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen(self.entries))
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def theta(matrix: PairwiseMatrix) -> ThetaMatrix:
    """Pair products of a matrix; exactly symmetric with unit diagonal."""
    return ThetaMatrix(matrix.entries * matrix.entries.T, matrix.labels)


def sbd(matrix: PairwiseMatrix) -> float:
    """Symmetry-breaking degree: mean pair product over the strict upper triangle.

    Lies in (0, 1]; equals 1 exactly when every stored pair product is 1,
    i.e. the matrix is multiplicatively reciprocal.
    """
    th = theta(matrix).entries
    iu = np.triu_indices(matrix.n, k=1)
    return float(np.mean(th[iu]))


def is_reciprocal(matrix: PairwiseMatrix, tol: float = REL_TOL) -> bool:
    """True when every pair product is 1 within tolerance."""
    th = theta(matrix).entries
    return bool(np.max(np.abs(th - 1.0)) <= tol)


@dataclass(frozen=True)
class IntervalMatrix:
    """Matrix of positive closed intervals [lower_ij, upper_ij].

    The off-diagonal intervals are coupled across the diagonal:
    lower_ij * upper_ji = upper_ij * lower_ji = 1, and diagonal intervals
    are [1, 1]. Interval width is zero exactly where the underlying pair
    is reciprocal.
    """

    lower: np.ndarray
    upper: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        lo = _frozen(_as_square(self.lower))
        up = _frozen(_as_square(self.upper))
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", up)
        object.__setattr__(self, "labels", tuple(self.labels))
        n = lo.shape[0]
        if up.shape != lo.shape:
            raise ValueError("lower/upper shape mismatch")
        if len(self.labels) != n:
            raise ValueError("label count mismatch")
        if not (np.all(lo > 0.0) and np.all(up > 0.0)):
            raise ValueError("interval bounds must be positive")
        if np.any(lo > up * (1.0 + REL_TOL)):
            raise ValueError("lower bound exceeds upper bound")
        diag_lo = np.diag(lo)
        diag_up = np.diag(up)
        if np.max(np.abs(diag_lo - 1.0)) > REL_TOL or np.max(np.abs(diag_up - 1.0)) > REL_TOL:
            raise ValueError("diagonal intervals must be [1, 1]")
        coupled_a = lo * up.T
        coupled_b = up * lo.T
        if np.max(np.abs(coupled_a - 1.0)) > REL_TOL or np.max(np.abs(coupled_b - 1.0)) > REL_TOL:
            raise ValueError("intervals are not reciprocally coupled")

    @property
    def n(self) -> int:
        return self.lower.shape[0]


def to_interval(matrix: PairwiseMatrix) -> IntervalMatrix:
    """Equivalent interval form: lower = a_ij, upper = 1/a_ji."""
    lower = matrix.entries.copy()
    upper = 1.0 / matrix.entries.T
    return IntervalMatrix(lower, upper, matrix.labels)


def from_interval(interval: IntervalMatrix) -> PairwiseMatrix:
    """Collapse an interval matrix back to point judgments (the lower bounds).

    Exact round trip: ``from_interval(to_interval(A))`` returns the stored
    entries of ``A`` bit for bit.
    """
    return PairwiseMatrix(interval.lower, interval.labels)


def uncertainty_index(interval: IntervalMatrix) -> float:
    """Mean of lower_ij * lower_ji over unordered pairs; 1 iff degenerate reciprocal."""
    prod = interval.lower * interval.lower.T
    iu = np.triu_indices(interval.n, k=1)
    return float(np.mean(prod[iu]))


@dataclass(frozen=True)
class HomogeneityReport:
    rho: float
    offenders: tuple[tuple[int, int, float], ...]

    @property
    def ok(self) -> bool:
        return not self.offenders


def homogeneity_check(matrix: PairwiseMatrix, rho: float) -> HomogeneityReport:
    """Check that every intensity, in both orientations, lies in [1/rho, rho]."""
    if rho < 1.0:
        raise ValueError("rho must be >= 1")
    arr = matrix.entries
    offenders = []
    for i in range(matrix.n):
        for j in range(matrix.n):
            v = float(arr[i, j])
            # v >= 1/rho is checked as v*rho >= 1 to keep the boundary
            # case exact when rho itself was derived from these entries.
            if v > rho * (1.0 + REL_TOL) or v * rho < 1.0 - REL_TOL:
                offenders.append((i, j, v))
    return HomogeneityReport(rho=float(rho), offenders=tuple(offenders))

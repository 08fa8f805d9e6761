"""Kendall concordance and ranking-reversal possibility degrees.

The agreement of several rankings is measured by Kendall's coefficient
of concordance K in [0, 1]; rank sums are computed in exact rational
arithmetic so perfect concordance is detected exactly. The possibility
degree of ranking reversal is its complement, p_d = 1 - K: 0 means the
rankings agree everywhere and add/delete actions provably cannot reorder
alternatives, 1 means maximal disagreement.

Three granularities are covered: a rectangular score table (one ranking
per column), a single comparison matrix (rows and columns each supply n
rankings), and a whole hierarchy (convex combination of component
degrees).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

import numpy as np

from .consistency import rank_vector
from .pcm import PairwiseMatrix

Orientation = Literal["columns", "rows"]


@dataclass(frozen=True)
class RankMatrix:
    """Integer ranks of a score table, within each column or within each row."""

    ranks: np.ndarray
    orientation: Orientation

    def __post_init__(self):
        arr = np.asarray(self.ranks, dtype=int)
        arr.setflags(write=False)
        object.__setattr__(self, "ranks", arr)
        n, m = arr.shape
        if self.orientation == "columns":
            for j in range(m):
                if sorted(arr[:, j]) != list(range(1, n + 1)):
                    raise ValueError(f"column {j} is not a permutation of 1..{n}")
        elif self.orientation == "rows":
            for i in range(n):
                if sorted(arr[i, :]) != list(range(1, m + 1)):
                    raise ValueError(f"row {i} is not a permutation of 1..{m}")
        else:
            raise ValueError(f"unknown orientation {self.orientation!r}")

    @property
    def shape(self) -> tuple[int, int]:
        return self.ranks.shape


def rank_matrix(scores, orientation: Orientation = "columns") -> RankMatrix:
    """First-method rank matrix of a score table."""
    b = np.asarray(scores, dtype=float)
    if b.ndim != 2 or b.size == 0:
        raise ValueError("expected a non-empty 2-d score table")
    n, m = b.shape
    if orientation == "columns":
        ranks = np.column_stack([rank_vector(b[:, j]).ranks for j in range(m)])
    else:
        ranks = np.vstack([rank_vector(b[i, :]).ranks for i in range(n)])
    return RankMatrix(ranks, orientation)


def _spread(rank_sums: Sequence[int], m: int, n: int) -> Fraction:
    # sum of squared deviations of the rank sums from their mean m(n+1)/2,
    # via the algebraic identity S = sum r_i^2 - m^2 n (n+1)^2 / 4
    total = sum(int(r) * int(r) for r in rank_sums)
    return Fraction(total) - Fraction(m * m * n * (n + 1) ** 2, 4)


def _spread_max(m: int, n: int) -> Fraction:
    return Fraction(m * m * n * (n * n - 1), 12)


def kendall_w(scores) -> float:
    """Concordance of the column rankings of an n x m score table.

    Ranks within each column, sums ranks per row, and normalizes the
    spread of the row sums by its maximum; 1 iff all columns induce the
    same ranking.
    """
    b = np.asarray(scores, dtype=float)
    if b.ndim != 2:
        raise ValueError("expected a 2-d score table")
    n, m = b.shape
    if n <= 1:
        raise ValueError("concordance needs at least two ranked items")
    ranks = rank_matrix(b, "columns").ranks
    row_sums = ranks.sum(axis=1)
    k = _spread(row_sums, m, n) / _spread_max(m, n)
    return float(k)


def kendall_single(matrix: PairwiseMatrix) -> float:
    """Concordance of all row- and column-induced rankings of one matrix.

    The column rank matrix contributes its row sums, the row rank matrix
    its column sums; both spreads are normalized together against twice
    the single-table maximum.
    """
    a = matrix.entries
    n = matrix.n
    col_ranks = rank_matrix(a, "columns").ranks
    row_ranks = rank_matrix(a, "rows").ranks
    s_c = _spread(col_ranks.sum(axis=1), n, n)
    s_r = _spread(row_ranks.sum(axis=0), n, n)
    return float((s_r + s_c) / (2 * _spread_max(n, n)))


def pd_single(matrix: PairwiseMatrix) -> float:
    """Possibility degree of ranking reversal for one comparison matrix."""
    return 1.0 - kendall_single(matrix)


def pd_weights(alt_weights) -> float:
    """Possibility degree of structural ranking reversal of a weight table.

    Takes the alternatives-by-criteria priority block; the criteria
    weights themselves never enter the ranking.
    """
    return 1.0 - kendall_w(alt_weights)


@dataclass(frozen=True)
class ReversalWeights:
    """Convex weights over the reversal components of a hierarchy.

    ``nu_alt[i]`` weighs the comparison matrix under criterion i, ``nu_c``
    the criteria matrix, ``nu_w`` the structural weight table.
    """

    nu_alt: tuple[float, ...]
    nu_c: float
    nu_w: float

    def __post_init__(self):
        object.__setattr__(self, "nu_alt", tuple(float(v) for v in self.nu_alt))
        values = [*self.nu_alt, self.nu_c, self.nu_w]
        if any(v < 0.0 or v > 1.0 for v in values):
            raise ValueError("reversal weights must lie in [0, 1]")
        if abs(sum(values) - 1.0) > 1e-9:
            raise ValueError(f"reversal weights must sum to 1, got {sum(values)}")

    def to_dict(self) -> dict:
        return {"nu_alt": list(self.nu_alt), "nu_c": self.nu_c, "nu_w": self.nu_w}


def default_reversal_weights(
    matrix_pds: Sequence[float], criteria_pd: float, table_pd: float
) -> ReversalWeights:
    """Default weighting of the reversal components.

    When every per-criterion matrix is free of internal disagreement
    (p_d = 0), the risk is split evenly between the criteria comparisons
    and the structural dependence. Otherwise the weight is spread
    uniformly over all components that actually show disagreement.
    """
    m = len(matrix_pds)
    if all(p == 0.0 for p in matrix_pds):
        return ReversalWeights(nu_alt=(0.0,) * m, nu_c=0.5, nu_w=0.5)
    live = [p > 0.0 for p in [*matrix_pds, criteria_pd, table_pd]]
    share = 1.0 / sum(live)
    parts = [share if flag else 0.0 for flag in live]
    return ReversalWeights(nu_alt=tuple(parts[:m]), nu_c=parts[m], nu_w=parts[m + 1])


def pd_global(
    matrix_pds: Sequence[float],
    criteria_pd: float,
    table_pd: float,
    weights: ReversalWeights,
) -> float:
    """Aggregate possibility degree of a hierarchy: the weighted component sum."""
    if len(matrix_pds) != len(weights.nu_alt):
        raise ValueError(
            f"{len(matrix_pds)} matrix degrees but {len(weights.nu_alt)} weights"
        )
    total = sum(nu * p for nu, p in zip(weights.nu_alt, matrix_pds))
    return float(total + weights.nu_c * criteria_pd + weights.nu_w * table_pd)

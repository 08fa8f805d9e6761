"""Rank vectors, induced rankings, and consistency notions.

A matrix is *consistent* when a_ij * a_jk = a_ik for all triples; it is
*approximately consistent* when every row and every column induces the
same ranking of alternatives. Approximate consistency is the weaker,
tie-tolerant notion that survives the loss of reciprocity.

Ranks follow the "first method" for ties: the rank vector is always a
permutation of 1..n, and of two equal values the one with the smaller
index receives the smaller rank. Rank n marks the largest value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .pcm import PairwiseMatrix

Axis = tuple[str, int]  # ("row" | "column", 0-based index)


@dataclass(frozen=True)
class RankVector:
    """Integer ranks 1..n forming a permutation; rank n = largest value."""

    ranks: tuple[int, ...]

    def __post_init__(self):
        n = len(self.ranks)
        if n == 0:
            raise ValueError("empty rank vector")
        if sorted(self.ranks) != list(range(1, n + 1)):
            raise ValueError(f"ranks {self.ranks} are not a permutation of 1..{n}")

    @property
    def n(self) -> int:
        return len(self.ranks)

    def descending_indices(self) -> tuple[int, ...]:
        """Indices ordered from highest rank (most preferred) to lowest."""
        return tuple(sorted(range(self.n), key=lambda i: -self.ranks[i]))


def rank_vector(values: Sequence[float]) -> RankVector:
    """First-method ranks of a value vector.

    For distinct values the rank counts how many values are <= the entry;
    tied values receive consecutive ranks in index order (earlier index,
    smaller rank), keeping the result a permutation of 1..n.
    """
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("expected a non-empty 1-d sequence")
    order = np.argsort(arr, kind="stable")
    ranks = np.empty(arr.size, dtype=int)
    ranks[order] = np.arange(1, arr.size + 1)
    return RankVector(tuple(int(r) for r in ranks))


def induced_ranking(matrix: PairwiseMatrix, axis: Literal["row", "column"], index: int) -> RankVector:
    """Ranking of the alternatives induced by one row or column.

    Column j ranks alternatives directly by their intensities over x_j:
    larger a_ij means x_i is stronger. Row i ranks them inversely: larger
    a_ij means x_j is *weaker*, so the row values are negated before
    ranking (which also keeps first-method tie order intact).
    """
    if not 0 <= index < matrix.n:
        raise IndexError(f"axis index {index} out of range for n={matrix.n}")
    if axis == "column":
        return rank_vector(matrix.column(index))
    if axis == "row":
        return rank_vector(-matrix.row(index))
    raise ValueError(f"axis must be 'row' or 'column', got {axis!r}")


@dataclass(frozen=True)
class RankingDisagreement:
    axis_a: Axis
    axis_b: Axis
    ranking_a: RankVector
    ranking_b: RankVector

    def describe(self) -> str:
        return (
            f"{self.axis_a[0]} {self.axis_a[1]} ranks {self.ranking_a.ranks} "
            f"but {self.axis_b[0]} {self.axis_b[1]} ranks {self.ranking_b.ranks}"
        )


@dataclass(frozen=True)
class ApproxConsistencyResult:
    consistent: bool
    ranking: RankVector | None  # the common ranking when consistent
    witness: RankingDisagreement | None  # one disagreeing pair otherwise

    def __bool__(self) -> bool:
        return self.consistent


def is_approx_consistent(matrix: PairwiseMatrix) -> ApproxConsistencyResult:
    """Check that all n columns and n rows induce one identical ranking."""
    axes: list[Axis] = [("column", j) for j in range(matrix.n)]
    axes += [("row", i) for i in range(matrix.n)]
    rankings = [induced_ranking(matrix, kind, idx) for kind, idx in axes]
    reference = rankings[0]
    for axis, ranking in zip(axes[1:], rankings[1:]):
        if ranking.ranks != reference.ranks:
            witness = RankingDisagreement(axes[0], axis, reference, ranking)
            return ApproxConsistencyResult(False, None, witness)
    return ApproxConsistencyResult(True, reference, None)


def is_consistent(matrix: PairwiseMatrix, tol: float = 1e-9) -> bool:
    """Exact multiplicative transitivity a_ij * a_jk = a_ik, within tol (relative)."""
    a = matrix.entries
    products = np.einsum("ij,jk->ijk", a, a)
    return bool(np.all(np.abs(products - a[:, None, :]) <= tol * a[:, None, :]))


@dataclass(frozen=True)
class Permutation:
    """Reordering of 1..n alternatives; ``order[k]`` is the original index placed at k."""

    order: tuple[int, ...]

    def __post_init__(self):
        n = len(self.order)
        if sorted(self.order) != list(range(n)):
            raise ValueError(f"{self.order} is not a permutation of 0..{n - 1}")

    @property
    def n(self) -> int:
        return len(self.order)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for k, v in enumerate(self.order):
            inv[v] = k
        return Permutation(tuple(inv))


class NotApproximatelyConsistent(ValueError):
    """Raised when an operation requires approximate consistency."""

    def __init__(self, witness: RankingDisagreement):
        super().__init__(f"matrix is not approximately consistent: {witness.describe()}")
        self.witness = witness


def canonical_permutation(matrix: PairwiseMatrix) -> Permutation:
    """Permutation sorting alternatives from most to least preferred.

    Applying it puts every row in nondecreasing and every column in
    nonincreasing order. Requires approximate consistency; fails with the
    disagreement witness otherwise.
    """
    result = is_approx_consistent(matrix)
    if not result:
        assert result.witness is not None
        raise NotApproximatelyConsistent(result.witness)
    assert result.ranking is not None
    return Permutation(result.ranking.descending_indices())


def apply_permutation(matrix: PairwiseMatrix, sigma: Permutation) -> PairwiseMatrix:
    """Matrix with entry (i, j) = a[sigma(i), sigma(j)] and labels permuted to match."""
    if sigma.n != matrix.n:
        raise ValueError(f"permutation size {sigma.n} != matrix size {matrix.n}")
    idx = np.asarray(sigma.order)
    entries = matrix.entries[np.ix_(idx, idx)]
    labels = tuple(matrix.labels[k] for k in sigma.order)
    return PairwiseMatrix(entries, labels)


def ranking_labels(ranking: RankVector, labels: Sequence[str]) -> tuple[str, ...]:
    """Labels ordered from most to least preferred according to a rank vector."""
    if len(labels) != ranking.n:
        raise ValueError("label count does not match ranking size")
    return tuple(labels[i] for i in ranking.descending_indices())

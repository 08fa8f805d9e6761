"""Priority elicitation via the principal eigenvector.

Every admissible matrix is entrywise positive, so it has a simple
dominant eigenvalue with a positive eigenvector (Perron). Power
iteration is sufficient and keeps the dependency surface small; the
eigenvalue is reported through the 1-norm growth factor at convergence.

Note that without reciprocity the dominant eigenvalue may fall *below*
the matrix order n, so no lambda >= n assertion is made anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .pcm import PairwiseMatrix


@dataclass(frozen=True)
class PriorityVector:
    """Normalized positive weights with their eigenvalue and solve diagnostics."""

    weights: tuple[float, ...]
    lambda_max: float
    residual: float  # max |A w - lambda w|
    converged: bool
    iterations: int

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("weights must be a non-empty vector")
        if abs(float(w.sum()) - 1.0) > 1e-12:
            raise ValueError("weights must sum to 1")
        if not np.all(w > 0.0):
            raise ValueError("weights must be strictly positive")
        if not self.lambda_max > 0.0:
            raise ValueError("principal eigenvalue must be positive")

    @property
    def n(self) -> int:
        return len(self.weights)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)


def principal_eigen(
    matrix: PairwiseMatrix,
    tol: float = 1e-12,
    max_iter: int = 10000,
    start: Sequence[float] | None = None,
) -> PriorityVector:
    """Dominant eigenpair of a positive matrix by power iteration.

    Starts from the uniform vector (or any strictly positive ``start``),
    renormalizes to unit 1-norm each step, and stops when successive
    iterates agree to ``tol`` in the sup norm and the eigenvalue estimate
    has stabilized. On hitting ``max_iter`` the last iterate is returned
    with ``converged=False``.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    a = matrix.entries
    n = matrix.n
    if start is None:
        x = np.full(n, 1.0 / n)
    else:
        x = np.asarray(start, dtype=float)
        if x.shape != (n,) or not np.all(x > 0.0):
            raise ValueError("start vector must be strictly positive with matching size")
        x = x / x.sum()
    lam = 0.0
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        y = a @ x
        lam_new = float(y.sum())  # 1-norm growth: x has unit 1-norm, y > 0
        x_new = y / lam_new
        if np.max(np.abs(x_new - x)) < tol and abs(lam_new - lam) < tol * max(1.0, lam_new):
            x, lam = x_new, lam_new
            converged = True
            break
        x, lam = x_new, lam_new
    residual = float(np.max(np.abs(a @ x - lam * x)))
    return PriorityVector(
        weights=tuple(float(v) for v in x),
        lambda_max=lam,
        residual=residual,
        converged=converged,
        iterations=iterations,
    )


def order_by_weight(weights: Sequence[float], labels: Sequence[str]) -> tuple[str, ...]:
    """Labels sorted by descending weight; ties keep original label order."""
    if len(labels) != len(weights):
        raise ValueError("label count does not match weight count")
    order = sorted(range(len(weights)), key=lambda i: (-weights[i], i))
    return tuple(labels[i] for i in order)


def rank_alternatives(priorities: PriorityVector, labels: Sequence[str]) -> tuple[str, ...]:
    """Rank alternatives by their priority weights, most preferred first."""
    return order_by_weight(priorities.weights, labels)


def rsb_decomposition(matrix: PairwiseMatrix, priorities: PriorityVector) -> tuple[np.ndarray, float]:
    """Factor a_ij = eps_ij * w_i / w_j and report how far eps is from the ideal form.

    The ideal decomposition has eps symmetric with eps_ij = sqrt(a_ij * a_ji).
    Returns the eps matrix computed from the given weights together with the
    worst deviation from both properties; a small residual certifies the
    decomposition, exact decomposability is not asserted.
    """
    if priorities.n != matrix.n:
        raise ValueError("matrix and priority vector sizes differ")
    w = priorities.as_array()
    if np.any(w <= 0.0):
        raise ValueError("weights must be strictly positive")
    eps = matrix.entries * (w[None, :] / w[:, None])
    ideal = np.sqrt(matrix.entries * matrix.entries.T)
    residual = max(
        float(np.max(np.abs(eps - ideal))),
        float(np.max(np.abs(eps - eps.T))),
    )
    return eps, residual

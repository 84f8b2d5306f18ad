"""Bipartite node matching between two networks.

Nodes of the source network are assigned one-to-one to nodes of the
target network so that the total pairwise affinity is maximal.  Affinity
is either neighborhood cosine (semantic mode) or the inverse mean
relative difference of the six node metrics (topologic mode).  The
matching similarity of the pair is the fraction of matched nodes whose
labels coincide, out of the smaller node count.

The assignment problem is padded square with zero-weight dummy nodes and
solved exactly.  A vanishing label-preference bonus is added to equal
label pairs first, so among equally good assignments the one keeping
labels fixed wins; dummy pairs never count toward accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .network import WordNetwork
from .topo import NodeMetrics, node_metrics, relative_differences

MODES = ("semantic", "topologic")

# Strictly smaller than any meaningful weight difference; big enough to
# dominate float noise when breaking exact ties.
_LABEL_BONUS = 1e-9


@dataclass
class AssignmentProblem:
    """Square weight matrix plus row/column labels; None marks a dummy."""

    weights: np.ndarray
    row_labels: tuple
    col_labels: tuple


@dataclass
class MatchingResult:
    assignment: tuple[int, ...]
    total_weight: float
    accuracy: float


def km_assign(problem: AssignmentProblem) -> MatchingResult:
    """Maximum-weight perfect assignment on the padded square problem.

    ``assignment[i]`` is the column matched to row ``i``.  The total is
    exact for the weights as given; accuracy counts label-coincident
    pairs against the smaller real side.
    """
    weights = problem.weights
    n = weights.shape[0]
    if weights.shape != (n, n):
        raise ValueError("assignment weights must be square; pad first")
    rows, cols = linear_sum_assignment(weights, maximize=True)
    assignment = np.empty(n, dtype=np.int64)
    assignment[rows] = cols
    total = float(weights[rows, cols].sum())
    real_rows = sum(1 for lab in problem.row_labels if lab is not None)
    real_cols = sum(1 for lab in problem.col_labels if lab is not None)
    denom = min(real_rows, real_cols)
    hits = 0
    for i, j in enumerate(assignment):
        row_lab = problem.row_labels[i]
        if row_lab is not None and row_lab == problem.col_labels[j]:
            hits += 1
    accuracy = hits / denom if denom else 0.0
    return MatchingResult(
        assignment=tuple(int(j) for j in assignment),
        total_weight=total,
        accuracy=accuracy,
    )


def semantic_weights(s: WordNetwork, t: WordNetwork) -> np.ndarray:
    """Cross-network neighborhood cosine for every source/target node pair.

    Neighborhoods are label sets, so no alignment step is needed; a pair
    with either node isolated scores 0.
    """
    ns_sets = [s.neighbor_labels(i) for i in range(s.n)]
    nt_sets = [t.neighbor_labels(j) for j in range(t.n)]
    weights = np.zeros((s.n, t.n))
    for i, si in enumerate(ns_sets):
        ki = len(si)
        if ki == 0:
            continue
        for j, tj in enumerate(nt_sets):
            kj = len(tj)
            if kj == 0:
                continue
            q = len(si & tj)
            if q:
                weights[i, j] = q / np.sqrt(ki * kj)
    return weights


def topologic_weights(
    s: WordNetwork,
    t: WordNetwork,
    metrics_s: NodeMetrics | None = None,
    metrics_t: NodeMetrics | None = None,
) -> np.ndarray:
    """Affinity ``1 / (1 + mean capped relative difference)`` per node pair.

    The difference runs over the six node metrics with the source node in
    the denominators, using the same zero-denominator policy as the
    network-level dissimilarity.
    """
    ms = (metrics_s or node_metrics(s)).vectors()
    mt = (metrics_t or node_metrics(t)).vectors()
    weights = np.empty((s.n, t.n))
    for i in range(s.n):
        diffs = relative_differences(
            np.broadcast_to(ms[i], mt.shape), mt
        )
        weights[i] = 1.0 / (1.0 + diffs.mean(axis=1))
    return weights


def _pad_square(weights: np.ndarray, row_labels, col_labels) -> AssignmentProblem:
    n_s, n_t = weights.shape
    n = max(n_s, n_t)
    padded = np.zeros((n, n))
    padded[:n_s, :n_t] = weights
    rows = tuple(row_labels) + (None,) * (n - n_s)
    cols = tuple(col_labels) + (None,) * (n - n_t)
    return AssignmentProblem(weights=padded, row_labels=rows, col_labels=cols)


def matching_similarity(
    s: WordNetwork,
    t: WordNetwork,
    mode: str = "semantic",
    metrics_s: NodeMetrics | None = None,
    metrics_t: NodeMetrics | None = None,
) -> MatchingResult:
    """Label-coincidence accuracy of the optimal node assignment."""
    if mode not in MODES:
        raise ValueError(f"unknown matching mode {mode!r}")
    if mode == "semantic":
        weights = semantic_weights(s, t)
    else:
        weights = topologic_weights(s, t, metrics_s, metrics_t)
    bonus = np.zeros_like(weights)
    t_index = {lab: j for j, lab in enumerate(t.labels)}
    for i, lab in enumerate(s.labels):
        j = t_index.get(lab)
        if j is not None:
            bonus[i, j] = _LABEL_BONUS
    problem = _pad_square(weights + bonus, s.labels, t.labels)
    result = km_assign(problem)
    plain = _pad_square(weights, s.labels, t.labels).weights
    rows = np.arange(plain.shape[0])
    total = float(plain[rows, np.array(result.assignment)].sum())
    return MatchingResult(
        assignment=result.assignment,
        total_weight=total,
        accuracy=result.accuracy,
    )

"""Node-level topology and the relative-difference dissimilarity.

Six per-node quantities are measured: undirected degree, in- and
out-degree, betweenness, clustering coefficient and average shortest-path
length within the node's connected component.  A network is summarized by
the mean and population standard deviation of each, giving a 12-component
vector, and two networks are compared by the mean relative difference of
those components.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .network import WordNetwork

METRICS = ("degree", "in_degree", "out_degree", "betweenness", "clustering", "avg_path")

SUMMARY_COMPONENTS = tuple(
    f"{name}_{stat}" for name in METRICS for stat in ("mean", "std")
)

# Relative differences against a zero reference component are capped here.
RELDIFF_CAP = 10.0


@dataclass
class NodeMetrics:
    """Per-node topology of one network, arrays indexed like its labels."""

    labels: tuple[str, ...]
    degree: np.ndarray
    in_degree: np.ndarray
    out_degree: np.ndarray
    betweenness: np.ndarray
    clustering: np.ndarray
    avg_path: np.ndarray

    def vectors(self) -> np.ndarray:
        """Node-by-metric matrix, columns in METRICS order."""
        return np.column_stack(
            [
                self.degree.astype(float),
                self.in_degree.astype(float),
                self.out_degree.astype(float),
                self.betweenness,
                self.clustering,
                self.avg_path,
            ]
        )


@dataclass
class MetricVector:
    """Mean and population std of each metric, in SUMMARY_COMPONENTS order."""

    values: np.ndarray

    def as_dict(self) -> dict[str, float]:
        return {name: float(v) for name, v in zip(SUMMARY_COMPONENTS, self.values)}


def _adjacency_lists(net: WordNetwork) -> list[np.ndarray]:
    a = net.a
    return [a.indices[a.indptr[i] : a.indptr[i + 1]] for i in range(net.n)]


def _directed_degrees(net: WordNetwork) -> tuple[np.ndarray, np.ndarray]:
    # Distinct predecessor / successor counts from W, self loops excluded.
    coo = net.w.tocoo()
    off = coo.row != coo.col
    out_deg = np.bincount(coo.row[off], minlength=net.n).astype(np.int64)
    in_deg = np.bincount(coo.col[off], minlength=net.n).astype(np.int64)
    return in_deg, out_deg


def node_metrics(net: WordNetwork) -> NodeMetrics:
    """Compute all six per-node metrics in one pass over the network.

    Betweenness accumulates shortest-path dependencies source by source
    and halves the total, so it equals the number of shortest paths
    through a node weighted by path multiplicity, endpoints excluded.
    The same breadth-first sweeps yield per-source distance sums for the
    average path length.  Isolated nodes get 0 for path length and nodes
    with fewer than two neighbors get 0 clustering.
    """
    n = net.n
    adj = _adjacency_lists(net)
    degree = np.array([len(a) for a in adj], dtype=np.int64)
    in_deg, out_deg = _directed_degrees(net)

    betweenness = np.zeros(n, dtype=float)
    avg_path = np.zeros(n, dtype=float)
    dist = np.empty(n, dtype=np.int64)
    sigma = np.empty(n, dtype=float)
    delta = np.empty(n, dtype=float)
    for s in range(n):
        dist.fill(-1)
        sigma.fill(0.0)
        dist[s] = 0
        sigma[s] = 1.0
        order: list[int] = []
        preds: list[list[int]] = [[] for _ in range(n)]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            dv = dist[v]
            sv = sigma[v]
            for u in adj[v]:
                if dist[u] < 0:
                    dist[u] = dv + 1
                    queue.append(u)
                if dist[u] == dv + 1:
                    sigma[u] += sv
                    preds[u].append(v)
        reached = len(order) - 1
        if reached > 0:
            total = int(dist[np.asarray(order, dtype=np.int64)].sum())
            avg_path[s] = total / reached
        delta.fill(0.0)
        for v in reversed(order):
            coeff = (1.0 + delta[v]) / sigma[v]
            for p in preds[v]:
                delta[p] += sigma[p] * coeff
            if v != s:
                betweenness[v] += delta[v]
    betweenness /= 2.0

    neighbor_sets = [set(a.tolist()) for a in adj]
    clustering = np.zeros(n, dtype=float)
    for v in range(n):
        k = degree[v]
        if k < 2:
            continue
        links = sum(len(neighbor_sets[v] & neighbor_sets[u]) for u in adj[v])
        clustering[v] = links / (k * (k - 1))

    return NodeMetrics(
        labels=net.labels,
        degree=degree,
        in_degree=in_deg,
        out_degree=out_deg,
        betweenness=betweenness,
        clustering=clustering,
        avg_path=avg_path,
    )


def summarize(metrics: NodeMetrics) -> MetricVector:
    """Mean and population standard deviation per metric."""
    values = []
    for column in metrics.vectors().T:
        values.append(float(np.mean(column)))
        values.append(float(np.std(column)))
    return MetricVector(values=np.array(values))


def relative_differences(
    source: np.ndarray, target: np.ndarray, cap: float = RELDIFF_CAP
) -> np.ndarray:
    """Componentwise ``|target - source| / |source|``.

    A zero source component makes the ratio undefined; the difference is
    reported as 0 when the target component is zero too and as ``cap``
    otherwise.
    """
    source = np.asarray(source, dtype=float)
    target = np.asarray(target, dtype=float)
    out = np.empty(source.shape, dtype=float)
    zero = source == 0.0
    both = zero & (target == 0.0)
    out[both] = 0.0
    out[zero & ~both] = cap
    ok = ~zero
    out[ok] = np.abs(target[ok] - source[ok]) / np.abs(source[ok])
    return out


def topo_dissimilarity(source: MetricVector, target: MetricVector) -> tuple[np.ndarray, float]:
    """Mean relative difference of summary components, target against source.

    Returns the per-component differences and their mean.  The measure is
    asymmetric because the source components sit in the denominators.
    """
    delta = relative_differences(source.values, target.values)
    return delta, float(np.mean(delta))

"""Least-squares scatter descriptors between two networks.

For each of the six node metrics, the nodes both networks share are laid
out as points (target value, source value) and fitted with ordinary least
squares.  The intercept, slope and correlation of the six fits form an
18-component feature vector describing how one text's word statistics map
onto the other's.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InsufficientOverlapError
from .network import WordNetwork
from .topo import METRICS, NodeMetrics, node_metrics


@dataclass(frozen=True)
class ScatterDescriptor:
    """One metric's fit.  ``defined`` is False when the x values are
    constant, in which case the numbers are the (0, 0, 0) sentinel."""

    metric: str
    intercept: float
    slope: float
    r: float
    support: int
    defined: bool


def _fit(x: np.ndarray, y: np.ndarray, metric: str) -> ScatterDescriptor:
    support = len(x)
    x_mean = x.mean()
    y_mean = y.mean()
    sxx = float(np.sum((x - x_mean) ** 2))
    syy = float(np.sum((y - y_mean) ** 2))
    sxy = float(np.sum((x - x_mean) * (y - y_mean)))
    if sxx == 0.0:
        return ScatterDescriptor(metric, 0.0, 0.0, 0.0, support, defined=False)
    slope = sxy / sxx
    intercept = float(y_mean - slope * x_mean)
    # Constant y values leave no association to measure; report r = 0.
    r = sxy / np.sqrt(sxx * syy) if syy > 0.0 else 0.0
    return ScatterDescriptor(metric, intercept, float(slope), float(r), support, defined=True)


def slope_features(
    s: WordNetwork,
    t: WordNetwork,
    metrics_s: NodeMetrics | None = None,
    metrics_t: NodeMetrics | None = None,
) -> list[ScatterDescriptor]:
    """Fit all six metrics over the shared labels.

    Needs at least two shared labels; raises InsufficientOverlapError
    otherwise.
    """
    shared = sorted(set(s.labels) & set(t.labels))
    if len(shared) < 2:
        raise InsufficientOverlapError(
            f"need at least 2 shared labels, got {len(shared)}"
        )
    ms = metrics_s or node_metrics(s)
    mt = metrics_t or node_metrics(t)
    vs = ms.vectors()
    vt = mt.vectors()
    rows_s = np.array([s.index[lab] for lab in shared])
    rows_t = np.array([t.index[lab] for lab in shared])
    descriptors = []
    for m, metric in enumerate(METRICS):
        x = vt[rows_t, m]
        y = vs[rows_s, m]
        descriptors.append(_fit(x, y, metric))
    return descriptors


def descriptor_vector(descriptors) -> tuple[np.ndarray, np.ndarray]:
    """Flatten descriptors to an 18-vector plus a per-metric defined mask.

    Component order is (intercept, slope, r) per metric, metrics in
    METRICS order.
    """
    values = np.zeros(3 * len(descriptors))
    mask = np.zeros(len(descriptors), dtype=bool)
    for i, d in enumerate(descriptors):
        values[3 * i : 3 * i + 3] = (d.intercept, d.slope, d.r)
        mask[i] = d.defined
    return values, mask

"""Bottom-up Ward clustering with deterministic tie-breaking.

Every point starts as its own cluster; each step merges the pair whose
union increases within-cluster variance the least.  The increase for two
singletons is half their squared Euclidean distance, and after a merge
the costs to every other cluster follow the Lance-Williams update, so no
centroid is ever recomputed.  Merge heights are the variance increases
themselves and never decrease.

Ties on cost resolve by the lexicographically smallest pair of cluster
representatives, a representative being the smallest leaf label inside.

The dendrogram exports to Newick with an ultrametric reading: a node
sits at half its merge height, and a branch length is the elevation gap
to the parent, so the path length between two leaves equals the height
of their lowest common merge.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, TooFewRowsError


@dataclass(frozen=True)
class Merge:
    left: int
    right: int
    height: float
    size: int


@dataclass
class Dendrogram:
    """Leaves 0..n-1; merge k creates cluster n+k."""

    leaf_labels: tuple[str, ...]
    merges: tuple[Merge, ...]

    def root_children_leaves(self) -> tuple[frozenset[int], frozenset[int]]:
        """Leaf index sets under the two children of the final merge."""
        n = len(self.leaf_labels)
        members: dict[int, frozenset[int]] = {i: frozenset([i]) for i in range(n)}
        for k, merge in enumerate(self.merges):
            members[n + k] = members[merge.left] | members[merge.right]
        last = self.merges[-1]
        return members[last.left], members[last.right]


def ward_cluster(points, labels) -> Dendrogram:
    """Agglomerate points under Ward's criterion.

    ``points`` is an (n, d) array-like, ``labels`` the n leaf names.
    Needs at least two points of a common dimension.
    """
    x = np.asarray(points, dtype=float)
    if x.ndim != 2:
        raise DimensionMismatchError("points must form a 2-d array")
    n = x.shape[0]
    labels = tuple(labels)
    if len(labels) != n:
        raise DimensionMismatchError(f"{n} points but {len(labels)} labels")
    if n < 2:
        raise TooFewRowsError("clustering needs at least 2 points")

    # cost[(a, b)] with a < b is the Ward variance increase of merging.
    cost: dict[tuple[int, int], float] = {}
    for a in range(n):
        diff = x[a + 1 :] - x[a]
        sq = np.sum(diff * diff, axis=1)
        for off, b in enumerate(range(a + 1, n)):
            cost[(a, b)] = 0.5 * float(sq[off])

    size = {i: 1 for i in range(n)}
    rep = {i: labels[i] for i in range(n)}
    active = set(range(n))
    merges: list[Merge] = []
    for step in range(n - 1):
        best_pair = None
        best_key = None
        for (a, b), c in cost.items():
            pair_rep = tuple(sorted((rep[a], rep[b])))
            key = (c, pair_rep)
            if best_key is None or key < best_key:
                best_key = key
                best_pair = (a, b)
        a, b = best_pair
        height = cost[(a, b)]
        new = n + step
        merges.append(Merge(left=a, right=b, height=height, size=size[a] + size[b]))
        sa, sb = size[a], size[b]
        for c in list(active):
            if c in (a, b):
                continue
            sc = size[c]
            dac = cost[tuple(sorted((a, c)))]
            dbc = cost[tuple(sorted((b, c)))]
            dab = height
            merged = ((sa + sc) * dac + (sb + sc) * dbc - sc * dab) / (sa + sb + sc)
            cost[(c, new)] = merged
        for pair in [p for p in cost if a in p or b in p]:
            del cost[pair]
        active.discard(a)
        active.discard(b)
        active.add(new)
        size[new] = sa + sb
        rep[new] = min(rep[a], rep[b])
    return Dendrogram(leaf_labels=labels, merges=tuple(merges))


def _needs_quoting(label: str) -> bool:
    return any(ch in label for ch in "(),:;'\" \t\n[]")


def _newick_label(label: str) -> str:
    if _needs_quoting(label):
        return "'" + label.replace("'", "''") + "'"
    return label


def export_newick(dendrogram: Dendrogram) -> str:
    """Newick string with branch lengths from the ultrametric reading."""
    n = len(dendrogram.leaf_labels)
    elevation = {i: 0.0 for i in range(n)}
    for k, merge in enumerate(dendrogram.merges):
        elevation[n + k] = merge.height / 2.0

    def render(node: int, parent_elevation: float) -> str:
        length = parent_elevation - elevation[node]
        if node < n:
            return f"{_newick_label(dendrogram.leaf_labels[node])}:{_fmt(length)}"
        merge = dendrogram.merges[node - n]
        inner = ",".join(
            render(child, elevation[node]) for child in (merge.left, merge.right)
        )
        return f"({inner}):{_fmt(length)}"

    root = n + len(dendrogram.merges) - 1
    merge = dendrogram.merges[-1]
    inner = ",".join(
        render(child, elevation[root]) for child in (merge.left, merge.right)
    )
    return f"({inner});"


def _fmt(value: float) -> str:
    text = f"{value:.10g}"
    return text if text != "-0" else "0"

"""Feature tables, small classifiers and seeded cross-validation.

The classifiers are deliberately plain: distance voting, per-class
Gaussians and a binary information-gain tree.  Every tie anywhere
resolves toward the lexicographically smallest candidate, so a run is a
pure function of (table, algorithm, seed).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    EmptyTrainError,
    ManifestError,
    TooFewRowsError,
)

VARIANCE_FLOOR = 1e-9
MAX_TREE_DEPTH = 10


@dataclass(frozen=True)
class FeatureRow:
    id: str
    features: tuple[float, ...]
    label: str


@dataclass
class FeatureTable:
    feature_names: tuple[str, ...]
    rows: list[FeatureRow]

    def __post_init__(self):
        width = len(self.feature_names)
        seen = set()
        for row in self.rows:
            if len(row.features) != width:
                raise DimensionMismatchError(
                    f"row {row.id!r}: {len(row.features)} features, expected {width}"
                )
            if row.id in seen:
                raise ManifestError(f"duplicate row id {row.id!r}")
            seen.add(row.id)

    def matrix(self) -> np.ndarray:
        return np.array([row.features for row in self.rows], dtype=float)

    def labels(self) -> list[str]:
        return [row.label for row in self.rows]


def feature_table_from_json(text: str) -> FeatureTable:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"feature table is not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or "featureNames" not in data or "rows" not in data:
        raise ManifestError("feature table needs 'featureNames' and 'rows'")
    names = data["featureNames"]
    if not isinstance(names, list) or not all(isinstance(x, str) for x in names):
        raise ManifestError("'featureNames' must be a list of strings")
    rows = []
    for i, row in enumerate(data["rows"]):
        where = f"row {i}"
        if not isinstance(row, dict):
            raise ManifestError(f"{where}: expected an object")
        if not isinstance(row.get("id"), str) or not row["id"]:
            raise ManifestError(f"{where}: missing or empty 'id'")
        if not isinstance(row.get("label"), str) or not row["label"]:
            raise ManifestError(f"{where}: missing or empty 'label'")
        feats = row.get("features")
        if not isinstance(feats, list) or not all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in feats
        ):
            raise ManifestError(f"{where}: 'features' must be a list of numbers")
        rows.append(FeatureRow(id=row["id"], features=tuple(float(x) for x in feats), label=row["label"]))
    return FeatureTable(feature_names=tuple(names), rows=rows)


def feature_table_to_json(table: FeatureTable, **dumps_kwargs) -> str:
    data = {
        "featureNames": list(table.feature_names),
        "rows": [
            {"id": r.id, "features": list(r.features), "label": r.label}
            for r in table.rows
        ],
    }
    return json.dumps(data, sort_keys=True, **dumps_kwargs)


def _standardizer(train_matrix: np.ndarray):
    mean = train_matrix.mean(axis=0)
    std = train_matrix.std(axis=0)
    std = np.where(std > 0.0, std, 1.0)
    return mean, std


def knn_classify(train: FeatureTable, query, k: int = 1) -> str:
    """Majority label among the k nearest training rows.

    Features are z-scored with the training statistics before distances
    are taken.  Neighbor order ties break on row id, vote ties on label.
    """
    if not train.rows:
        raise EmptyTrainError("no training rows")
    if not 1 <= k <= len(train.rows):
        raise ValueError(f"k must be in [1, {len(train.rows)}], got {k}")
    x = train.matrix()
    q = np.asarray(query, dtype=float)
    if q.shape != (x.shape[1],):
        raise DimensionMismatchError(
            f"query has {q.shape} features, table has {x.shape[1]}"
        )
    mean, std = _standardizer(x)
    xs = (x - mean) / std
    qs = (q - mean) / std
    dists = np.sqrt(np.sum((xs - qs) ** 2, axis=1))
    ranked = sorted(range(len(dists)), key=lambda i: (dists[i], train.rows[i].id))
    votes: dict[str, int] = {}
    for i in ranked[:k]:
        lab = train.rows[i].label
        votes[lab] = votes.get(lab, 0) + 1
    best = max(votes.values())
    return min(lab for lab, v in votes.items() if v == best)


def _class_stats(x: np.ndarray, labels, floor: float = VARIANCE_FLOOR):
    stats = {}
    names = sorted(set(labels))
    lab_arr = np.array(labels)
    for name in names:
        rows = x[lab_arr == name]
        mean = rows.mean(axis=0)
        var = np.maximum(rows.var(axis=0), floor)
        prior = len(rows) / len(x)
        stats[name] = (mean, var, prior)
    return stats


def naive_bayes_classify(train: FeatureTable, query) -> str:
    """Gaussian class-conditional log-posterior argmax.

    Per-class feature variances are floored so single-point classes do not
    blow up; priors follow class frequency.
    """
    if not train.rows:
        raise EmptyTrainError("no training rows")
    x = train.matrix()
    q = np.asarray(query, dtype=float)
    if q.shape != (x.shape[1],):
        raise DimensionMismatchError(
            f"query has {q.shape} features, table has {x.shape[1]}"
        )
    best_label = None
    best_score = -np.inf
    for name, (mean, var, prior) in sorted(_class_stats(x, train.labels()).items()):
        score = np.log(prior) - 0.5 * np.sum(
            np.log(2.0 * np.pi * var) + (q - mean) ** 2 / var
        )
        if score > best_score:
            best_score = score
            best_label = name
    return best_label


def _entropy(labels) -> float:
    _, counts = np.unique(labels, return_counts=True)
    p = counts / counts.sum()
    return float(-np.sum(p * np.log2(p)))


class _TreeNode:
    __slots__ = ("feature", "threshold", "left", "right", "label")

    def __init__(self, label=None, feature=None, threshold=None, left=None, right=None):
        self.label = label
        self.feature = feature
        self.threshold = threshold
        self.left = left
        self.right = right


def _majority(labels) -> str:
    names, counts = np.unique(labels, return_counts=True)
    best = counts.max()
    return min(str(n) for n, c in zip(names, counts) if c == best)


def _grow(x: np.ndarray, labels: np.ndarray, depth: int) -> _TreeNode:
    if len(set(labels.tolist())) == 1:
        return _TreeNode(label=str(labels[0]))
    if depth >= MAX_TREE_DEPTH:
        return _TreeNode(label=_majority(labels))
    parent_entropy = _entropy(labels)
    total = len(labels)
    best = None  # (neg_gain, feature, threshold) so min() picks max gain
    for f in range(x.shape[1]):
        values = np.unique(x[:, f])
        for lo, hi in zip(values[:-1], values[1:]):
            thr = (lo + hi) / 2.0
            left = labels[x[:, f] <= thr]
            right = labels[x[:, f] > thr]
            gain = parent_entropy - (
                len(left) / total * _entropy(left)
                + len(right) / total * _entropy(right)
            )
            cand = (-gain, f, thr)
            if best is None or cand < best:
                best = cand
    if best is None:
        return _TreeNode(label=_majority(labels))
    _, f, thr = best
    mask = x[:, f] <= thr
    return _TreeNode(
        feature=f,
        threshold=thr,
        left=_grow(x[mask], labels[mask], depth + 1),
        right=_grow(x[~mask], labels[~mask], depth + 1),
    )


def decision_tree_classify(train: FeatureTable, query) -> str:
    """Binary info-gain tree, thresholds at midpoints, depth capped.

    The split with maximal gain wins; equal gains break toward the lower
    feature index, then the smaller threshold.  A node still splits at
    zero gain as long as both sides are nonempty, which is what lets
    parity-style data come apart a level later.
    """
    if not train.rows:
        raise EmptyTrainError("no training rows")
    x = train.matrix()
    q = np.asarray(query, dtype=float)
    if q.shape != (x.shape[1],):
        raise DimensionMismatchError(
            f"query has {q.shape} features, table has {x.shape[1]}"
        )
    root = _grow(x, np.array(train.labels()), 0)
    node = root
    while node.label is None:
        node = node.left if q[node.feature] <= node.threshold else node.right
    return node.label


ALGORITHMS = {
    "knn1": lambda tr, q: knn_classify(tr, q, 1),
    "knn2": lambda tr, q: knn_classify(tr, q, 2),
    "knn3": lambda tr, q: knn_classify(tr, q, 3),
    "knn4": lambda tr, q: knn_classify(tr, q, 4),
    "knn5": lambda tr, q: knn_classify(tr, q, 5),
    "nb": naive_bayes_classify,
    "tree": decision_tree_classify,
}


@dataclass
class CVResult:
    algorithm: str
    folds: int
    seed: int
    per_fold: tuple[float, ...]
    accuracy: float

    def to_json(self, **dumps_kwargs) -> str:
        data = {
            "algorithm": self.algorithm,
            "folds": self.folds,
            "seed": self.seed,
            "perFold": list(self.per_fold),
            "accuracy": self.accuracy,
        }
        return json.dumps(data, sort_keys=True, **dumps_kwargs)


def _fold_assignment(table: FeatureTable, folds: int, seed: int) -> np.ndarray:
    """Stratified fold labels, one per row.

    Rows are grouped by class, each group is put in canonical id order and
    shuffled with the seeded generator, then dealt round-robin with a fold
    cursor carried across classes so fold sizes stay within one of each
    other.  Row order in the table therefore never matters.
    """
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    by_class: dict[str, list[int]] = {}
    for i, row in enumerate(table.rows):
        by_class.setdefault(row.label, []).append(i)
    assignment = np.empty(len(table.rows), dtype=np.int64)
    cursor = 0
    for label in sorted(by_class):
        members = sorted(by_class[label], key=lambda i: table.rows[i].id)
        order = rng.permutation(len(members))
        for j in order:
            assignment[members[j]] = cursor % folds
            cursor += 1
    return assignment


def kfold_cv(table: FeatureTable, algorithm: str, folds: int = 10, seed: int = 0) -> CVResult:
    """Mean accuracy over stratified folds; deterministic given the seed."""
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; pick from {sorted(ALGORITHMS)}")
    if folds < 2:
        raise ValueError(f"need at least 2 folds, got {folds}")
    if len(table.rows) < folds:
        raise TooFewRowsError(f"{len(table.rows)} rows cannot fill {folds} folds")
    classify = ALGORITHMS[algorithm]
    assignment = _fold_assignment(table, folds, seed)
    per_fold = []
    for fold in range(folds):
        train_rows = [r for r, f in zip(table.rows, assignment) if f != fold]
        test_rows = [r for r, f in zip(table.rows, assignment) if f == fold]
        train = FeatureTable(feature_names=table.feature_names, rows=train_rows)
        hits = sum(
            1 for r in test_rows if classify(train, np.array(r.features)) == r.label
        )
        per_fold.append(hits / len(test_rows))
    return CVResult(
        algorithm=algorithm,
        folds=folds,
        seed=int(seed),
        per_fold=tuple(per_fold),
        accuracy=float(np.mean(per_fold)),
    )

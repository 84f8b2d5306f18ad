"""Neighborhood-overlap similarity between same-labeled nodes.

Two networks are first aligned over the sorted union of their labels, so
each node has a binary neighbor row of the same length n in both.  All
four indices are functions of the shared-neighbor count q and the two
degrees:

* cosine      q / sqrt(ks * kt)
* pearson     correlation of the two binary rows, rescaled to [0, 1]
* lhn         n * q / (ks * kt)
* euclid      2 * q / (ks + kt), the overlap complement of the
              degree-normalized squared Euclidean row distance

A text-level score is the unweighted mean over all union labels.  Nodes
where an index is undefined score 0, except pearson which scores the
chance level 0.5 when either row has no variance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .network import WordNetwork, zero_pad_align

KINDS = ("cosine", "pearson", "lhn", "euclid")


@dataclass(frozen=True)
class NodeSimilarity:
    label: str
    shared: int
    score: float


@dataclass
class TextSimilarity:
    kind: str
    per_node: list[NodeSimilarity]
    aggregate: float


def _row(a: sparse.csr_matrix, i: int) -> np.ndarray:
    return a.indices[a.indptr[i] : a.indptr[i + 1]]


def shared_neighbors(a_s: sparse.csr_matrix, a_t: sparse.csr_matrix, i: int) -> int:
    """Number of labels adjacent to node i in both aligned networks."""
    return int(len(np.intersect1d(_row(a_s, i), _row(a_t, i), assume_unique=True)))


def _degrees(a: sparse.csr_matrix) -> np.ndarray:
    return np.diff(a.indptr)


def cosine_node(q: int, ks: int, kt: int) -> float:
    if ks == 0 or kt == 0:
        return 0.0
    return q / np.sqrt(ks * kt)


def pearson_node(q: int, ks: int, kt: int, n: int) -> float:
    """Correlation of two binary rows of length n, mapped to [0, 1].

    With row sums ks and kt and overlap q the correlation is
    ``(q - ks*kt/n) / sqrt(ks(1-ks/n) * kt(1-kt/n))``; a constant row
    (degree 0, or degree n which cannot happen with a zero diagonal)
    has no correlation and scores 0.5.
    """
    if ks == 0 or kt == 0 or ks == n or kt == n:
        return 0.5
    num = q - ks * kt / n
    den = np.sqrt(ks * (1.0 - ks / n) * kt * (1.0 - kt / n))
    rho = num / den
    rho = min(1.0, max(-1.0, rho))
    return (rho + 1.0) / 2.0


def lhn_node(q: int, ks: int, kt: int, n: int) -> float:
    if ks == 0 or kt == 0:
        return 0.0
    return n * q / (ks * kt)


def euclid_node(q: int, ks: int, kt: int) -> float:
    if ks + kt == 0:
        return 0.0
    return 2.0 * q / (ks + kt)


def text_similarity(s: WordNetwork, t: WordNetwork, kind: str) -> TextSimilarity:
    """Score every union label and average.

    The inputs need not be aligned; alignment happens here.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown similarity kind {kind!r}")
    al_s, al_t = zero_pad_align(s, t)
    n = al_s.n
    ks = _degrees(al_s.a)
    kt = _degrees(al_t.a)
    per_node = []
    for i, label in enumerate(al_s.labels):
        q = shared_neighbors(al_s.a, al_t.a, i)
        if kind == "cosine":
            score = cosine_node(q, ks[i], kt[i])
        elif kind == "pearson":
            score = pearson_node(q, ks[i], kt[i], n)
        elif kind == "lhn":
            score = lhn_node(q, ks[i], kt[i], n)
        else:
            score = euclid_node(q, ks[i], kt[i])
        per_node.append(NodeSimilarity(label=label, shared=q, score=float(score)))
    aggregate = float(np.mean([ns.score for ns in per_node]))
    return TextSimilarity(kind=kind, per_node=per_node, aggregate=aggregate)

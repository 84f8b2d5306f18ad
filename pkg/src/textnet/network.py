"""Word adjacency networks built from preprocessed token streams.

Each distinct token becomes a node, numbered in order of first occurrence.
The directed matrix W counts how often one token immediately precedes
another; the undirected matrix A is its symmetrized binarization.  An
immediately repeated token yields a self loop in W, but self loops never
enter A and never count toward degrees or neighborhoods.

Both matrices are stored sparse so vocabulary size is bounded by memory,
not by a dense n-by-n allocation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from collections import Counter

import numpy as np
from scipy import sparse

from .corpus import Document
from .errors import TooFewTokensError


@dataclass
class WordNetwork:
    """Co-occurrence network over a fixed label list.

    ``w`` holds directed precedence counts and ``a`` the undirected binary
    adjacency with a zero diagonal.  ``labels[i]`` names node ``i``.
    """

    labels: tuple[str, ...]
    w: sparse.csr_matrix
    a: sparse.csr_matrix
    index: dict[str, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.index:
            self.index = {lab: i for i, lab in enumerate(self.labels)}

    @property
    def n(self) -> int:
        return len(self.labels)

    def degree(self) -> np.ndarray:
        """Undirected degrees: number of distinct neighbors in ``a``."""
        return np.asarray(self.a.sum(axis=1)).ravel().astype(np.int64)

    def neighbor_ids(self, i: int) -> np.ndarray:
        row = self.a.indices[self.a.indptr[i] : self.a.indptr[i + 1]]
        return np.sort(row)

    def neighbor_labels(self, i: int) -> frozenset[str]:
        return frozenset(self.labels[j] for j in self.neighbor_ids(i))


def _adjacency_from_w(w: sparse.csr_matrix) -> sparse.csr_matrix:
    sym = (w + w.T).tocoo()
    off_diag = sym.row != sym.col
    rows = sym.row[off_diag]
    cols = sym.col[off_diag]
    a = sparse.csr_matrix(
        (np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=w.shape
    )
    a.sort_indices()
    return a


def build_network(doc: Document) -> WordNetwork:
    """Build the co-occurrence network of a token sequence.

    Every consecutive token pair contributes one unit of weight, so the
    entries of W sum to ``len(tokens) - 1``.  Fewer than two tokens leave
    nothing to connect and raise TooFewTokensError.
    """
    tokens = doc.tokens
    if len(tokens) < 2:
        raise TooFewTokensError(f"document {doc.id!r}: need at least 2 tokens, got {len(tokens)}")
    index: dict[str, int] = {}
    for tok in tokens:
        if tok not in index:
            index[tok] = len(index)
    labels = tuple(sorted(index, key=index.__getitem__))
    n = len(labels)
    pair_counts = Counter(zip(tokens[:-1], tokens[1:]))
    rows = np.fromiter((index[a] for a, _ in pair_counts), dtype=np.int64, count=len(pair_counts))
    cols = np.fromiter((index[b] for _, b in pair_counts), dtype=np.int64, count=len(pair_counts))
    vals = np.fromiter(pair_counts.values(), dtype=np.int64, count=len(pair_counts))
    w = sparse.csr_matrix((vals, (rows, cols)), shape=(n, n))
    w.sort_indices()
    return WordNetwork(labels=labels, w=w, a=_adjacency_from_w(w), index=index)


def _remap(w: sparse.csr_matrix, old_labels, new_index, size: int) -> sparse.csr_matrix:
    coo = w.tocoo()
    rows = np.fromiter((new_index[old_labels[i]] for i in coo.row), dtype=np.int64, count=coo.nnz)
    cols = np.fromiter((new_index[old_labels[j]] for j in coo.col), dtype=np.int64, count=coo.nnz)
    out = sparse.csr_matrix((coo.data.copy(), (rows, cols)), shape=(size, size))
    out.sort_indices()
    return out


def zero_pad_align(s: WordNetwork, t: WordNetwork) -> tuple[WordNetwork, WordNetwork]:
    """Re-index both networks over the sorted union of their labels.

    Labels absent from one network become isolated zero rows there, so the
    two results share shape and node numbering.
    """
    union = tuple(sorted(set(s.labels) | set(t.labels)))
    new_index = {lab: i for i, lab in enumerate(union)}
    ws = _remap(s.w, s.labels, new_index, len(union))
    wt = _remap(t.w, t.labels, new_index, len(union))
    aligned_s = WordNetwork(labels=union, w=ws, a=_adjacency_from_w(ws), index=dict(new_index))
    aligned_t = WordNetwork(labels=union, w=wt, a=_adjacency_from_w(wt), index=dict(new_index))
    return aligned_s, aligned_t


def to_json_dict(net: WordNetwork) -> dict:
    """Serializable form: labels plus directed ``[i, j, count]`` triples."""
    coo = net.w.tocoo()
    order = np.lexsort((coo.col, coo.row))
    edges = [[int(coo.row[k]), int(coo.col[k]), int(coo.data[k])] for k in order]
    return {"labels": list(net.labels), "edges": edges}


def from_json_dict(data: dict) -> WordNetwork:
    labels = tuple(data["labels"])
    n = len(labels)
    edges = data["edges"]
    rows = np.array([e[0] for e in edges], dtype=np.int64)
    cols = np.array([e[1] for e in edges], dtype=np.int64)
    vals = np.array([e[2] for e in edges], dtype=np.int64)
    w = sparse.csr_matrix((vals, (rows, cols)), shape=(n, n))
    w.sort_indices()
    return WordNetwork(labels=labels, w=w, a=_adjacency_from_w(w))


def to_json(net: WordNetwork, **dumps_kwargs) -> str:
    return json.dumps(to_json_dict(net), sort_keys=True, **dumps_kwargs)


def from_json(text: str) -> WordNetwork:
    return from_json_dict(json.loads(text))


def to_edgelist(net: WordNetwork) -> str:
    """Tab-separated ``source target count`` lines for the directed edges."""
    coo = net.w.tocoo()
    order = np.lexsort((coo.col, coo.row))
    lines = [
        f"{net.labels[coo.row[k]]}\t{net.labels[coo.col[k]]}\t{int(coo.data[k])}"
        for k in order
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def from_edgelist(text: str) -> WordNetwork:
    """Rebuild a network from ``to_edgelist`` output.

    Labels are numbered in order of first appearance in the file.
    """
    index: dict[str, int] = {}
    triples = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValueError(f"edge list line {lineno}: expected 3 tab-separated fields")
        a, b, c = parts
        count = int(c)
        for lab in (a, b):
            if lab not in index:
                index[lab] = len(index)
        triples.append((index[a], index[b], count))
    labels = tuple(sorted(index, key=index.__getitem__))
    n = len(labels)
    rows = np.array([t[0] for t in triples], dtype=np.int64)
    cols = np.array([t[1] for t in triples], dtype=np.int64)
    vals = np.array([t[2] for t in triples], dtype=np.int64)
    w = sparse.csr_matrix((vals, (rows, cols)), shape=(n, n))
    w.sort_indices()
    return WordNetwork(labels=labels, w=w, a=_adjacency_from_w(w), index=index)

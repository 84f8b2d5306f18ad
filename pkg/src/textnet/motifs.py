"""Directed three-node motifs and their z-score profiles.

The unit of analysis is the weakly connected directed graph on three
nodes.  Up to isomorphism there are thirteen such graphs; the census
counts how many node triples of a network realize each one, reading
direction from the simple digraph behind W (self loops ignored).

Observed counts are judged against an ensemble of uniform random simple
digraphs with the same node and edge counts.  Each motif gets
``z = (observed - mean) / std`` over the ensemble; a zero-spread motif
with a count away from the ensemble mean saturates at ``Z_CAP`` and is
flagged.  Two profiles are compared with the same capped relative
difference used for topology summaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np
from scipy import sparse

from .network import WordNetwork
from .topo import relative_differences

Z_CAP = 1e6

# Local naming for the thirteen classes, in census order.  Representative
# arc sets below pin each name to a structure; direction suffixes read
# relative to the mutual dyad where there is one.
TRIAD_CLASSES = (
    "out_star",         # a->b, a->c
    "in_star",          # b->a, c->a
    "chain",            # a->b->c
    "mutual_in",        # a<->b, c->a
    "mutual_out",       # a<->b, a->c
    "feedforward",      # a->b->c, a->c
    "cycle",            # a->b->c->a
    "double_mutual",    # a<->b<->c
    "mutual_in_star",   # a<->b, c->a, c->b
    "mutual_out_star",  # a<->b, a->c, b->c
    "mutual_chain",     # a<->b, a->c, c->b
    "semi_complete",    # a<->b, a<->c, b->c
    "complete",         # all six arcs
)

_REPRESENTATIVES = (
    ((0, 1), (0, 2)),
    ((1, 0), (2, 0)),
    ((0, 1), (1, 2)),
    ((0, 1), (1, 0), (2, 0)),
    ((0, 1), (1, 0), (0, 2)),
    ((0, 1), (1, 2), (0, 2)),
    ((0, 1), (1, 2), (2, 0)),
    ((0, 1), (1, 0), (1, 2), (2, 1)),
    ((0, 1), (1, 0), (2, 0), (2, 1)),
    ((0, 1), (1, 0), (0, 2), (1, 2)),
    ((0, 1), (1, 0), (0, 2), (2, 1)),
    ((0, 1), (1, 0), (0, 2), (2, 0), (1, 2)),
    ((0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)),
)

_EDGE_BIT = {(0, 1): 0, (1, 0): 1, (0, 2): 2, (2, 0): 3, (1, 2): 4, (2, 1): 5}


def _mask_of(arcs) -> int:
    mask = 0
    for arc in arcs:
        mask |= 1 << _EDGE_BIT[arc]
    return mask


def _arcs_of(mask: int):
    return [arc for arc, bit in _EDGE_BIT.items() if mask >> bit & 1]


def _canonical(mask: int) -> int:
    best = 64
    for perm in permutations(range(3)):
        relabeled = _mask_of((perm[a], perm[b]) for a, b in _arcs_of(mask))
        if relabeled < best:
            best = relabeled
    return best


def _connected(mask: int) -> bool:
    pairs = (mask & 0b000011, mask & 0b001100, mask & 0b110000)
    return sum(1 for p in pairs if p) >= 2


def _build_lut() -> np.ndarray:
    canon_to_class = {}
    for idx, arcs in enumerate(_REPRESENTATIVES):
        canon_to_class[_canonical(_mask_of(arcs))] = idx
    assert len(canon_to_class) == 13
    lut = np.full(64, -1, dtype=np.int8)
    for mask in range(64):
        if _connected(mask):
            lut[mask] = canon_to_class[_canonical(mask)]
    return lut

_CLASS_LUT = _build_lut()


@dataclass
class MotifProfile:
    """Census counts and normalized scores for one network."""

    counts: np.ndarray
    zscores: np.ndarray
    null_mean: np.ndarray
    null_std: np.ndarray
    replicates: int
    seed: int
    degenerate: np.ndarray  # bool per class: zero spread away from the mean


def _directed_edge_keys(net: WordNetwork) -> np.ndarray:
    coo = net.w.tocoo()
    off = coo.row != coo.col
    keys = coo.row[off].astype(np.int64) * net.n + coo.col[off].astype(np.int64)
    return np.sort(keys)


def _member(sorted_keys: np.ndarray, queries: np.ndarray) -> np.ndarray:
    if len(sorted_keys) == 0:
        return np.zeros(queries.shape, dtype=np.int64)
    pos = np.searchsorted(sorted_keys, queries)
    pos_clipped = np.minimum(pos, len(sorted_keys) - 1)
    return (sorted_keys[pos_clipped] == queries).astype(np.int64)


def motif_census(net: WordNetwork) -> np.ndarray:
    """Count weakly connected triples per class, each triple once.

    Triples are enumerated through their center nodes: a triple whose
    skeleton is a path is seen exactly once, from its middle node, while
    a skeleton triangle is seen from all three corners, so triangle tallies
    are divided by three at the end.
    """
    n = net.n
    keys = _directed_edge_keys(net)
    a = net.a
    counts = np.zeros(13, dtype=np.int64)
    tri_counts = np.zeros(13, dtype=np.int64)
    for v in range(n):
        nv = a.indices[a.indptr[v] : a.indptr[v + 1]].astype(np.int64)
        if len(nv) < 2:
            continue
        iu, iw = np.triu_indices(len(nv), k=1)
        u = nv[iu]
        w = nv[iw]
        vv = np.full(len(u), v, dtype=np.int64)
        mask = (
            _member(keys, vv * n + u)
            | _member(keys, u * n + vv) << 1
            | _member(keys, vv * n + w) << 2
            | _member(keys, w * n + vv) << 3
            | _member(keys, u * n + w) << 4
            | _member(keys, w * n + u) << 5
        )
        classes = _CLASS_LUT[mask]
        is_triangle = (mask & 0b110000) != 0
        if np.any(~is_triangle):
            counts += np.bincount(classes[~is_triangle], minlength=13)
        if np.any(is_triangle):
            tri_counts += np.bincount(classes[is_triangle], minlength=13)
    remainder = tri_counts % 3
    if remainder.any():
        raise AssertionError("triangle tallies must come in threes")
    return counts + tri_counts // 3


def random_equivalent(net: WordNetwork, seed) -> WordNetwork:
    """Uniform random simple digraph with the same node and edge counts.

    Self loops in W are not part of the edge count; the sample never has
    any.  Labels are reused for shape compatibility and carry no meaning.
    ``seed`` may be an int or a numpy SeedSequence.
    """
    rng = np.random.default_rng(seed)
    n = net.n
    coo = net.w.tocoo()
    e = int(np.count_nonzero(coo.row != coo.col))
    slots = n * (n - 1)
    if e == 0 or slots == 0:
        empty = sparse.csr_matrix((n, n), dtype=np.int64)
        return WordNetwork(labels=net.labels, w=empty, a=empty.copy().astype(np.int8))
    if e > slots // 2:
        chosen = rng.permutation(slots)[:e]
    else:
        picked: set[int] = set()
        while len(picked) < e:
            draw = rng.integers(0, slots, size=e - len(picked))
            picked.update(draw.tolist())
        chosen = np.fromiter(picked, dtype=np.int64, count=e)
    rows = chosen // (n - 1)
    rem = chosen % (n - 1)
    cols = np.where(rem < rows, rem, rem + 1)
    w = sparse.csr_matrix(
        (np.ones(e, dtype=np.int64), (rows, cols)), shape=(n, n)
    )
    w.sort_indices()
    sym = (w + w.T).tocoo()
    a = sparse.csr_matrix(
        (np.ones(sym.nnz, dtype=np.int8), (sym.row, sym.col)), shape=(n, n)
    )
    a.sort_indices()
    return WordNetwork(labels=net.labels, w=w, a=a)


def motif_zscores(net: WordNetwork, seed: int, replicates: int = 100) -> MotifProfile:
    """Census z-scores against the random ensemble.

    Replicate seeds are spawned from the master seed up front, so the
    profile is a pure function of (network, seed, replicates) no matter
    how the replicates are scheduled.
    """
    if replicates < 2:
        raise ValueError(f"need at least 2 replicates, got {replicates}")
    observed = motif_census(net)
    children = np.random.SeedSequence(seed).spawn(replicates)
    ensemble = np.empty((replicates, 13), dtype=np.int64)
    for i, child in enumerate(children):
        ensemble[i] = motif_census(random_equivalent(net, child))
    null_mean = ensemble.mean(axis=0)
    null_std = ensemble.std(axis=0)
    z = np.zeros(13, dtype=float)
    degenerate = np.zeros(13, dtype=bool)
    spread = null_std > 0
    z[spread] = (observed[spread] - null_mean[spread]) / null_std[spread]
    stuck = ~spread & (observed != null_mean)
    z[stuck] = np.sign(observed[stuck] - null_mean[stuck]) * Z_CAP
    degenerate[stuck] = True
    return MotifProfile(
        counts=observed,
        zscores=z,
        null_mean=null_mean,
        null_std=null_std,
        replicates=replicates,
        seed=int(seed),
        degenerate=degenerate,
    )


def motif_dissimilarity(source: MotifProfile, target: MotifProfile) -> tuple[np.ndarray, float]:
    """Mean capped relative difference between z-score profiles."""
    delta = relative_differences(source.zscores, target.zscores)
    return delta, float(np.mean(delta))

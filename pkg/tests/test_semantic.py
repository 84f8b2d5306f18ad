import math

import numpy as np
import pytest

from textnet.corpus import Document
from textnet.network import build_network, zero_pad_align
from textnet.semantic import (
    KINDS,
    cosine_node,
    euclid_node,
    lhn_node,
    pearson_node,
    text_similarity,
)

from _oracles import net_from_arcs, random_directed_net

# star with hub a, compared against the path a-b-c throughout
STAR = net_from_arcs(["a", "b", "c"], [(0, 1), (0, 2)])


def path_abc():
    return net_from_arcs(["a", "b", "c"], [(0, 1), (1, 2)])


def scores(result):
    return {ns.label: ns.score for ns in result.per_node}


class TestWorkedPair:
    def test_cosine(self):
        """Path vs star: the two degree-1/degree-2 swaps agree, c does not."""
        res = text_similarity(path_abc(), STAR, kind="cosine")
        per = scores(res)
        assert per["a"] == pytest.approx(1 / math.sqrt(2))
        assert per["b"] == pytest.approx(1 / math.sqrt(2))
        assert per["c"] == pytest.approx(0.0)
        assert res.aggregate == pytest.approx(2 / (3 * math.sqrt(2)))

    def test_pearson(self):
        res = text_similarity(path_abc(), STAR, kind="pearson")
        per = scores(res)
        assert per["a"] == pytest.approx(0.75)
        assert per["b"] == pytest.approx(0.75)
        assert per["c"] == pytest.approx(0.25)
        assert res.aggregate == pytest.approx(7 / 12)

    def test_lhn(self):
        res = text_similarity(path_abc(), STAR, kind="lhn")
        per = scores(res)
        assert per["a"] == pytest.approx(1.5)
        assert per["b"] == pytest.approx(1.5)
        assert per["c"] == pytest.approx(0.0)
        assert res.aggregate == pytest.approx(1.0)

    def test_euclid(self):
        res = text_similarity(path_abc(), STAR, kind="euclid")
        per = scores(res)
        assert per["a"] == pytest.approx(2 / 3)
        assert per["b"] == pytest.approx(2 / 3)
        assert per["c"] == pytest.approx(0.0)
        assert res.aggregate == pytest.approx(4 / 9)

    def test_shared_counts_recorded(self):
        res = text_similarity(path_abc(), STAR, kind="cosine")
        shared = {ns.label: ns.shared for ns in res.per_node}
        assert shared == {"a": 1, "b": 1, "c": 0}


class TestSelfAndDisjoint:
    def test_identical_networks_score_one(self):
        net = build_network(Document(id="d", tokens=("x", "y", "z", "x", "w")))
        for kind in ("cosine", "pearson", "euclid"):
            res = text_similarity(net, net, kind=kind)
            assert res.aggregate == pytest.approx(1.0), kind

    def test_disjoint_label_sets(self):
        """No shared vocabulary: overlap-style scores collapse to zero."""
        s = net_from_arcs(["a", "b"], [(0, 1)])
        t = net_from_arcs(["x", "y"], [(0, 1)])
        assert text_similarity(s, t, kind="cosine").aggregate == pytest.approx(0.0)
        assert text_similarity(s, t, kind="lhn").aggregate == pytest.approx(0.0)
        assert text_similarity(s, t, kind="euclid").aggregate == pytest.approx(0.0)

    def test_per_node_covers_sorted_union(self):
        s = net_from_arcs(["b", "d"], [(0, 1)])
        t = net_from_arcs(["a", "b"], [(0, 1)])
        res = text_similarity(s, t, kind="cosine")
        assert [ns.label for ns in res.per_node] == ["a", "b", "d"]

    def test_unknown_kind_rejected(self):
        s = net_from_arcs(["a", "b"], [(0, 1)])
        with pytest.raises(ValueError):
            text_similarity(s, s, kind="jaccard")


class TestNodeFormulas:
    def test_cosine_zero_degree(self):
        assert cosine_node(0, 0, 3) == 0.0
        assert cosine_node(0, 3, 0) == 0.0

    def test_pearson_degenerate_is_half(self):
        # a row of all zeros has no variance; score falls back to 1/2
        assert pearson_node(0, 0, 2, 5) == pytest.approx(0.5)
        assert pearson_node(0, 2, 0, 5) == pytest.approx(0.5)

    def test_lhn_needs_both_degrees(self):
        assert lhn_node(0, 0, 2, 4) == 0.0
        assert lhn_node(1, 1, 2, 4) == pytest.approx(2.0)

    def test_euclid_zero_degrees(self):
        assert euclid_node(0, 0, 0) == 0.0

    def test_matches_row_vector_algebra(self):
        """Node formulas equal the literal row-vector computations."""
        rng = np.random.default_rng(2026)
        for _ in range(20):
            s = random_directed_net(rng, int(rng.integers(2, 10)), p=0.4)
            t = random_directed_net(rng, int(rng.integers(2, 10)), p=0.4)
            s2, t2 = zero_pad_align(s, t)
            n = s2.n
            rows_s = s2.a.toarray().astype(float)
            rows_t = t2.a.toarray().astype(float)
            cos = scores(text_similarity(s, t, kind="cosine"))
            pea = scores(text_similarity(s, t, kind="pearson"))
            euc = scores(text_similarity(s, t, kind="euclid"))
            for i, lab in enumerate(s2.labels):
                rs, rt = rows_s[i], rows_t[i]
                ks, kt = rs.sum(), rt.sum()
                if ks > 0 and kt > 0:
                    assert cos[lab] == pytest.approx(
                        float(rs @ rt) / math.sqrt(ks * kt), abs=1e-12
                    )
                    assert euc[lab] == pytest.approx(
                        1.0 - float(((rs - rt) ** 2).sum()) / (ks + kt), abs=1e-12
                    )
                if 0 < ks < n and 0 < kt < n:
                    rho = float(np.corrcoef(rs, rt)[0, 1])
                    assert pea[lab] == pytest.approx((rho + 1) / 2, abs=1e-12)

    def test_scores_bounded(self):
        rng = np.random.default_rng(31)
        for _ in range(15):
            s = random_directed_net(rng, 8, p=0.4)
            t = random_directed_net(rng, 8, p=0.4)
            for kind in KINDS:
                res = text_similarity(s, t, kind=kind)
                for ns in res.per_node:
                    assert ns.score >= 0.0
                    if kind != "lhn":
                        assert ns.score <= 1.0 + 1e-12

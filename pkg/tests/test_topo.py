import math

import numpy as np
import pytest

from textnet.topo import (
    METRICS,
    RELDIFF_CAP,
    SUMMARY_COMPONENTS,
    node_metrics,
    relative_differences,
    summarize,
    topo_dissimilarity,
)

from _oracles import (
    brute_avg_path,
    brute_betweenness,
    brute_clustering,
    brute_degrees,
    net_from_arcs,
    random_directed_net,
    random_undirected_net,
)


def path3():
    return net_from_arcs(["a", "b", "c"], [(0, 1), (1, 2)])


def star4():
    return net_from_arcs(["h", "x", "y", "z"], [(0, 1), (0, 2), (0, 3)])


class TestNodeMetrics:
    def test_path_graph(self):
        """Three nodes in a line: the middle carries every path."""
        m = node_metrics(path3())
        assert m.degree.tolist() == [1, 2, 1]
        assert m.in_degree.tolist() == [0, 1, 1]
        assert m.out_degree.tolist() == [1, 1, 0]
        assert m.betweenness == pytest.approx([0.0, 1.0, 0.0])
        assert m.clustering == pytest.approx([0.0, 0.0, 0.0])
        assert m.avg_path == pytest.approx([1.5, 1.0, 1.5])

    def test_triangle(self):
        m = node_metrics(net_from_arcs(["a", "b", "c"], [(0, 1), (1, 2), (2, 0)]))
        assert m.degree.tolist() == [2, 2, 2]
        assert m.betweenness == pytest.approx([0.0, 0.0, 0.0])
        assert m.clustering == pytest.approx([1.0, 1.0, 1.0])
        assert m.avg_path == pytest.approx([1.0, 1.0, 1.0])

    def test_star(self):
        m = node_metrics(star4())
        assert m.degree.tolist() == [3, 1, 1, 1]
        assert m.betweenness == pytest.approx([3.0, 0.0, 0.0, 0.0])
        assert m.clustering == pytest.approx([0.0, 0.0, 0.0, 0.0])
        assert m.avg_path == pytest.approx([1.0, 5 / 3, 5 / 3, 5 / 3])

    def test_square_splits_paths(self):
        """Opposite corners of a 4-cycle are joined by two equal paths."""
        m = node_metrics(
            net_from_arcs(["a", "b", "c", "d"], [(0, 1), (1, 2), (2, 3), (3, 0)])
        )
        assert m.betweenness == pytest.approx([0.5, 0.5, 0.5, 0.5])
        assert m.avg_path == pytest.approx([4 / 3] * 4)

    def test_components_and_isolated_node(self):
        """Path averages stay inside the component; isolated nodes get 0."""
        m = node_metrics(
            net_from_arcs(["a", "b", "c", "d", "e"], [(0, 1), (2, 3)])
        )
        assert m.degree.tolist() == [1, 1, 1, 1, 0]
        assert m.avg_path == pytest.approx([1.0, 1.0, 1.0, 1.0, 0.0])
        assert m.clustering == pytest.approx([0.0] * 5)
        assert m.betweenness == pytest.approx([0.0] * 5)

    def test_mutual_arcs_count_one_neighbor(self):
        """A mutual pair is one in-neighbor and one out-neighbor, not two."""
        m = node_metrics(net_from_arcs(["a", "b"], [(0, 1), (1, 0)]))
        assert m.in_degree.tolist() == [1, 1]
        assert m.out_degree.tolist() == [1, 1]
        assert m.degree.tolist() == [1, 1]

    def test_self_loop_ignored_everywhere(self):
        net = net_from_arcs(["a", "b"], [(0, 0), (0, 1)])
        m = node_metrics(net)
        assert m.degree.tolist() == [1, 1]
        assert m.in_degree.tolist() == [0, 1]
        assert m.out_degree.tolist() == [1, 0]

    def test_matches_brute_force_undirected(self):
        rng = np.random.default_rng(411)
        for _ in range(25):
            net = random_undirected_net(rng, int(rng.integers(2, 9)), p=0.45)
            m = node_metrics(net)
            deg, _, _ = brute_degrees(net)
            assert m.degree == pytest.approx(deg, abs=1e-9)
            assert m.betweenness == pytest.approx(brute_betweenness(net), abs=1e-9)
            assert m.clustering == pytest.approx(brute_clustering(net), abs=1e-9)
            assert m.avg_path == pytest.approx(brute_avg_path(net), abs=1e-9)

    def test_matches_brute_force_directed(self):
        rng = np.random.default_rng(412)
        for _ in range(25):
            net = random_directed_net(rng, int(rng.integers(2, 9)), p=0.35)
            m = node_metrics(net)
            deg, ind, outd = brute_degrees(net)
            assert m.degree == pytest.approx(deg, abs=1e-9)
            assert m.in_degree == pytest.approx(ind, abs=1e-9)
            assert m.out_degree == pytest.approx(outd, abs=1e-9)
            assert m.betweenness == pytest.approx(brute_betweenness(net), abs=1e-9)
            assert m.clustering == pytest.approx(brute_clustering(net), abs=1e-9)
            assert m.avg_path == pytest.approx(brute_avg_path(net), abs=1e-9)

    def test_vectors_layout(self):
        m = node_metrics(path3())
        v = m.vectors()
        assert v.shape == (3, len(METRICS))
        assert v[:, 0] == pytest.approx(m.degree)
        assert v[:, 5] == pytest.approx(m.avg_path)


class TestSummarize:
    def test_path_summary_frozen(self):
        s = summarize(node_metrics(path3())).as_dict()
        third = math.sqrt(2.0 / 9.0)
        assert s["degree_mean"] == pytest.approx(4 / 3)
        assert s["degree_std"] == pytest.approx(third)
        assert s["in_degree_mean"] == pytest.approx(2 / 3)
        assert s["in_degree_std"] == pytest.approx(third)
        assert s["out_degree_mean"] == pytest.approx(2 / 3)
        assert s["out_degree_std"] == pytest.approx(third)
        assert s["betweenness_mean"] == pytest.approx(1 / 3)
        assert s["betweenness_std"] == pytest.approx(third)
        assert s["clustering_mean"] == 0.0
        assert s["clustering_std"] == 0.0
        assert s["avg_path_mean"] == pytest.approx(4 / 3)
        assert s["avg_path_std"] == pytest.approx(math.sqrt(1.0 / 18.0))

    def test_component_order(self):
        assert SUMMARY_COMPONENTS[0] == "degree_mean"
        assert SUMMARY_COMPONENTS[-1] == "avg_path_std"
        assert len(SUMMARY_COMPONENTS) == 2 * len(METRICS)

    def test_population_std_not_sample(self):
        """Two nodes with degrees 1 and 3 give std 1, not sqrt(2)."""
        net = net_from_arcs(["a", "b", "c", "d"], [(0, 1), (0, 2), (0, 3)])
        s = summarize(node_metrics(net)).as_dict()
        # degrees 3,1,1,1: mean 1.5, population var (2.25+0.25*3)/4
        assert s["degree_std"] == pytest.approx(math.sqrt(0.75))


class TestRelativeDifferences:
    def test_plain_case(self):
        out = relative_differences(np.array([2.0, 4.0]), np.array([3.0, 3.0]))
        assert out == pytest.approx([0.5, 0.25])

    def test_both_zero_is_zero(self):
        out = relative_differences(np.array([0.0]), np.array([0.0]))
        assert out == pytest.approx([0.0])

    def test_zero_source_caps(self):
        out = relative_differences(np.array([0.0]), np.array([0.5]))
        assert out == pytest.approx([RELDIFF_CAP])

    def test_large_finite_ratio_not_capped(self):
        """The cap only stands in for divisions by zero."""
        out = relative_differences(np.array([0.001]), np.array([1.0]))
        assert out == pytest.approx([999.0])


class TestTopoDissimilarity:
    def test_self_is_zero(self):
        v = summarize(node_metrics(star4()))
        delta, d = topo_dissimilarity(v, v)
        assert delta == pytest.approx([0.0] * 12)
        assert d == 0.0

    def test_asymmetric(self):
        vs = summarize(node_metrics(path3()))
        vt = summarize(node_metrics(star4()))
        _, d_st = topo_dissimilarity(vs, vt)
        _, d_ts = topo_dissimilarity(vt, vs)
        assert d_st != pytest.approx(d_ts)

    def test_matches_componentwise_recompute(self):
        vs = summarize(node_metrics(path3()))
        vt = summarize(node_metrics(star4()))
        delta, d = topo_dissimilarity(vs, vt)
        expect = relative_differences(vs.values, vt.values)
        assert delta == pytest.approx(expect)
        assert d == pytest.approx(float(expect.mean()))

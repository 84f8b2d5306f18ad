import math

import numpy as np
import pytest

from textnet.cluster import export_newick, ward_cluster
from textnet.errors import DimensionMismatchError, TooFewRowsError

from _oracles import merge_cost, newick_leaves, parse_newick


class TestWardCluster:
    def test_two_points(self):
        """Singletons merge at half their squared distance."""
        d = ward_cluster([[0.0, 0.0], [2.0, 0.0]], ["a", "b"])
        assert len(d.merges) == 1
        merge = d.merges[0]
        assert {merge.left, merge.right} == {0, 1}
        assert merge.height == pytest.approx(2.0)
        assert merge.size == 2

    def test_identical_points_merge_first_at_zero(self):
        d = ward_cluster([[5.0], [0.0], [5.0]], ["a", "b", "c"])
        first = d.merges[0]
        assert {first.left, first.right} == {0, 2}
        assert first.height == pytest.approx(0.0)

    def test_lance_williams_chain(self):
        """Two close points and one far: the far merge costs the full
        three-point variance increase."""
        d = ward_cluster([[0.0, 0.0], [0.0, 0.0], [5.0, 5.0]], ["x", "y", "z"])
        assert d.merges[0].height == pytest.approx(0.0)
        # ESS of all three points: mean (5/3, 5/3), deviations sum to 100/3
        assert d.merges[1].height == pytest.approx(100.0 / 3.0)

    def test_tie_breaks_on_representative_labels(self):
        """Four corners of a square: all first merges cost the same, so
        the pair holding the smallest labels goes first."""
        pts = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]
        d = ward_cluster(pts, ["d", "a", "b", "c"])
        first = d.merges[0]
        reps = {d.leaf_labels[first.left], d.leaf_labels[first.right]}
        # the four square edges tie at cost 1/2: (d,a), (d,b), (a,c),
        # (b,c); sorted by representative pair, (a, c) comes first
        assert reps == {"a", "c"}

    def test_heights_monotone(self):
        rng = np.random.default_rng(4040)
        for _ in range(20):
            n = int(rng.integers(2, 12))
            pts = rng.normal(size=(n, 3))
            d = ward_cluster(pts, [f"p{i:02d}" for i in range(n)])
            heights = [m.height for m in d.merges]
            assert all(b >= a - 1e-9 for a, b in zip(heights, heights[1:]))

    def test_heights_equal_recomputed_variance_increase(self):
        """Every recorded height equals the from-scratch ESS increase of
        the two clusters actually merged, and no pair was cheaper."""
        rng = np.random.default_rng(4141)
        for _ in range(10):
            n = int(rng.integers(3, 9))
            pts = rng.normal(size=(n, 2))
            labels = [f"p{i:02d}" for i in range(n)]
            d = ward_cluster(pts, labels)
            members = {i: [i] for i in range(n)}
            clusters = set(range(n))
            for k, merge in enumerate(d.merges):
                got = merge_cost(
                    pts[members[merge.left]], pts[members[merge.right]]
                )
                assert merge.height == pytest.approx(got, abs=1e-9)
                floor = min(
                    merge_cost(pts[members[a]], pts[members[b]])
                    for a in clusters
                    for b in clusters
                    if a < b
                )
                assert merge.height <= floor + 1e-9
                members[n + k] = members[merge.left] + members[merge.right]
                clusters -= {merge.left, merge.right}
                clusters.add(n + k)

    def test_input_validation(self):
        with pytest.raises(TooFewRowsError):
            ward_cluster([[1.0, 2.0]], ["a"])
        with pytest.raises(DimensionMismatchError):
            ward_cluster([[1.0], [2.0]], ["a"])
        with pytest.raises(DimensionMismatchError):
            ward_cluster([1.0, 2.0], ["a", "b"])


class TestExportNewick:
    def test_two_leaves(self):
        """A merge at height 4 puts each leaf two units below the node."""
        d = ward_cluster([[0.0], [math.sqrt(8.0)]], ["a", "b"])
        assert d.merges[0].height == pytest.approx(4.0)
        assert export_newick(d) == "(a:2,b:2);"

    def test_three_leaves_structure(self):
        d = ward_cluster([[0.0], [2.0], [10.0]], ["a", "b", "c"])
        text = export_newick(d)
        tree = parse_newick(text)
        assert newick_leaves(tree) == {"a", "b", "c"}
        children, length = tree
        assert length is None
        inner = [c for c in children if not isinstance(c[0], str)]
        assert len(inner) == 1
        assert newick_leaves(inner[0]) == {"a", "b"}

    def test_leaf_depths_equal_half_root_height(self):
        """Ultrametric export: every leaf sits at the same total depth."""
        rng = np.random.default_rng(17)
        pts = rng.normal(size=(7, 2))
        labels = [f"p{i}" for i in range(7)]
        d = ward_cluster(pts, labels)
        tree = parse_newick(export_newick(d))
        root_height = d.merges[-1].height

        def depths(node, acc):
            head, length = node
            length = length or 0.0
            if isinstance(head, str):
                yield acc + length
            else:
                for child in head:
                    yield from depths(child, acc + length)

        for depth in depths(tree, 0.0):
            assert depth == pytest.approx(root_height / 2.0, abs=1e-9)

    def test_quoting(self):
        d = ward_cluster([[0.0], [2.0]], ["o'hara", "two words"])
        text = export_newick(d)
        assert "'o''hara'" in text
        assert "'two words'" in text
        tree = parse_newick(text)
        assert newick_leaves(tree) == {"o'hara", "two words"}

    def test_zero_height_branches(self):
        d = ward_cluster([[1.0], [1.0]], ["a", "b"])
        assert export_newick(d) == "(a:0,b:0);"


class TestRootChildren:
    def test_two_well_separated_groups(self):
        pts = [[0.0], [0.1], [0.2], [9.0], [9.1], [9.2]]
        labels = ["a1", "a2", "a3", "b1", "b2", "b3"]
        d = ward_cluster(pts, labels)
        left, right = d.root_children_leaves()
        groups = {
            frozenset(labels[i] for i in left),
            frozenset(labels[i] for i in right),
        }
        assert groups == {
            frozenset({"a1", "a2", "a3"}),
            frozenset({"b1", "b2", "b3"}),
        }

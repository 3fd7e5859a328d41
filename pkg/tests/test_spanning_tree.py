import itertools

import numpy as np
import pytest

from sectornet import backbone_check, minimum_spanning_tree, pearson_correlation
from sectornet.core import CorrelationNet, SectorId
from sectornet.spanning_tree import tree_from_dict, tree_to_dict, tree_to_dot

from helpers import make_panel, min_spanning_weight_by_enumeration, one_factor_panel


def net_from_dist(dist):
    """Build a CorrelationNet whose derived distances equal `dist`."""
    dist = np.asarray(dist, dtype=float)
    rho = 1.0 - dist**2 / 2.0
    sectors = tuple(SectorId(code=f"S{i}") for i in range(dist.shape[0]))
    return CorrelationNet(sectors=sectors, rho=rho)


def test_path_graph_recovered():
    # points on a line: the MST is the chain of nearest neighbors
    xs = np.array([0.0, 0.3, 0.7, 1.2])
    dist = np.abs(xs[:, None] - xs[None, :])
    tree = minimum_spanning_tree(net_from_dist(dist))
    assert sorted((i, j) for i, j, _ in tree.edges) == [(0, 1), (1, 2), (2, 3)]
    assert tree.total_weight == pytest.approx(1.2)


def test_edge_count_and_connectivity():
    panel, _ = one_factor_panel(seed=4, n=9)
    tree = minimum_spanning_tree(pearson_correlation(panel))
    assert len(tree.edges) == 8
    # a spanning set of n-1 acyclic edges touches every node
    touched = {v for i, j, _ in tree.edges for v in (i, j)}
    assert touched == set(range(9))


def test_matches_enumeration_oracle():
    rng = np.random.default_rng(17)
    for _ in range(15):
        n = 6  # 6^4 = 1296 labeled trees, exhaustive check stays fast
        d = rng.uniform(0.1, 1.9, (n, n))
        d = (d + d.T) / 2
        np.fill_diagonal(d, 0.0)
        tree = minimum_spanning_tree(net_from_dist(d))
        best = min_spanning_weight_by_enumeration(d)
        assert tree.total_weight == pytest.approx(best, abs=1e-12)


def test_deterministic_tie_break():
    # all distances equal: lexicographically smallest edges must win
    d = np.full((5, 5), 1.0)
    np.fill_diagonal(d, 0.0)
    tree = minimum_spanning_tree(net_from_dist(d))
    assert [(i, j) for i, j, _ in tree.edges] == [(0, 1), (0, 2), (0, 3), (0, 4)]


def test_rerun_is_identical():
    panel, _ = one_factor_panel(seed=23)
    net = pearson_correlation(panel)
    assert minimum_spanning_tree(net) == minimum_spanning_tree(net)


def test_rejects_tiny_or_non_finite():
    with pytest.raises(ValueError):
        minimum_spanning_tree(net_from_dist(np.zeros((1, 1))))
    d = np.array([[0.0, np.nan], [np.nan, 0.0]])
    rho = 1.0 - d**2 / 2.0
    net = CorrelationNet(sectors=(SectorId("A"), SectorId("B")), rho=rho)
    with pytest.raises(ValueError):
        minimum_spanning_tree(net)


class TestBackboneCheck:
    def chain(self, n=5):
        xs = np.arange(n, dtype=float)
        dist = np.abs(xs[:, None] - xs[None, :])
        return minimum_spanning_tree(net_from_dist(dist))

    def test_contiguous_core_is_connected(self):
        tree = self.chain()
        out = backbone_check(tree, np.array([False, True, True, True, False]))
        assert out == {"is_connected_subtree": True, "components": 1}

    def test_split_core_is_disconnected(self):
        tree = self.chain()
        out = backbone_check(tree, np.array([True, False, False, True, True]))
        assert out["is_connected_subtree"] is False
        assert out["components"] == 2

    def test_empty_and_singleton_cores_trivially_connected(self):
        tree = self.chain()
        assert backbone_check(tree, np.zeros(5, dtype=bool))["is_connected_subtree"]
        single = np.zeros(5, dtype=bool)
        single[2] = True
        out = backbone_check(tree, single)
        assert out == {"is_connected_subtree": True, "components": 1}

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            backbone_check(self.chain(), np.zeros(4, dtype=bool))


def test_dot_output_marks_core_and_edges():
    tree = minimum_spanning_tree(
        net_from_dist([[0.0, 0.5, 0.9], [0.5, 0.0, 0.4], [0.9, 0.4, 0.0]])
    )
    dot = tree_to_dot(tree, core=np.array([True, False, False]))
    assert dot.startswith("graph mst {")
    assert 'n0 [label="S0" group="core"];' in dot
    assert dot.count(" -- ") == 2
    # edge weights are full-precision reprs of the derived distances
    weights = [float(part.split('"')[1]) for part in dot.split("weight=")[1:]]
    assert sorted(weights) == pytest.approx([0.4, 0.5], abs=1e-12)


def test_dict_round_trip():
    panel, _ = one_factor_panel(seed=2, n=7)
    tree = minimum_spanning_tree(pearson_correlation(panel))
    assert tree_from_dict(tree_to_dict(tree)) == tree

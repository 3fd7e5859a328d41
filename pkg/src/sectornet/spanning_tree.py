"""Minimum spanning tree over the distance matrix, with core annotation.

Kruskal's algorithm with edges sorted by (weight, min(i, j), max(i, j));
the lexicographic tie-break makes the output deterministic even when
distances coincide.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .core import CorrelationNet, SectorId


@dataclass(frozen=True)
class Tree:
    """A spanning tree: N-1 edges (i, j, weight) over the sector index."""

    sectors: tuple[SectorId, ...]
    edges: tuple[tuple[int, int, float], ...]
    total_weight: float

    @property
    def n(self) -> int:
        return len(self.sectors)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, i):
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i, j):
        ri, rj = self.find(i), self.find(j)
        if ri == rj:
            return False
        self.parent[ri] = rj
        return True


def minimum_spanning_tree(net: CorrelationNet) -> Tree:
    """Kruskal MST of the complete graph weighted by the distance matrix.

    Deterministic under ties; requires N >= 2 and finite distances.
    """
    n = net.n
    if n < 2:
        raise ValueError("need at least 2 sectors for a spanning tree")
    if not np.isfinite(net.dist).all():
        raise ValueError("distance matrix contains non-finite entries")
    candidates = sorted(
        (float(net.dist[i, j]), i, j) for i in range(n) for j in range(i + 1, n)
    )
    uf = _UnionFind(n)
    edges = []
    total = 0.0
    for w, i, j in candidates:
        if uf.union(i, j):
            edges.append((i, j, w))
            total += w
            if len(edges) == n - 1:
                break
    return Tree(sectors=net.sectors, edges=tuple(edges), total_weight=total)


def backbone_check(tree: Tree, core: np.ndarray) -> dict:
    """Do the core-labeled nodes induce a connected subtree of the MST?

    Returns {"is_connected_subtree": bool, "components": int}, where
    components counts the connected components the core nodes induce
    (edges of the tree with both endpoints in the core). An empty or
    singleton core is trivially connected.
    """
    core = np.asarray(core, dtype=bool)
    if len(core) != tree.n:
        raise ValueError(f"core has length {len(core)}, tree has {tree.n} nodes")
    nodes = [i for i in range(tree.n) if core[i]]
    if len(nodes) <= 1:
        return {"is_connected_subtree": True, "components": len(nodes)}
    index = {i: k for k, i in enumerate(nodes)}
    uf = _UnionFind(len(nodes))
    for i, j, _ in tree.edges:
        if core[i] and core[j]:
            uf.union(index[i], index[j])
    components = len({uf.find(k) for k in range(len(nodes))})
    return {"is_connected_subtree": components == 1, "components": components}


def tree_to_dot(tree: Tree, core: np.ndarray | None = None) -> str:
    """Render the tree in DOT format.

    Nodes are labeled with sector codes; core nodes carry group=core; edges
    carry the distance at full precision in their weight attribute.
    """
    core = np.zeros(tree.n, dtype=bool) if core is None else np.asarray(core, dtype=bool)
    lines = ["graph mst {"]
    for k, s in enumerate(tree.sectors):
        attrs = f'label="{s.code}"'
        if core[k]:
            attrs += ' group="core"'
        lines.append(f"  n{k} [{attrs}];")
    for i, j, w in tree.edges:
        lines.append(f'  n{i} -- n{j} [weight="{w!r}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_to_dict(tree: Tree) -> dict:
    return {
        "sectors": [s.code for s in tree.sectors],
        "edges": [[i, j, w] for i, j, w in tree.edges],
        "total_weight": tree.total_weight,
    }


def tree_to_json(tree: Tree) -> str:
    return json.dumps(tree_to_dict(tree), indent=2, sort_keys=True)


def tree_from_dict(d: dict) -> Tree:
    return Tree(
        sectors=tuple(SectorId(code=c) for c in d["sectors"]),
        edges=tuple((int(i), int(j), float(w)) for i, j, w in d["edges"]),
        total_weight=float(d["total_weight"]),
    )

"""Skeleton bitmaps to junction-free stroke polylines.

The skeleton is first turned into a graph with one node per ink pixel and
one edge per 8-adjacent pixel pair. Three rewrites then make every
component an open path: triangle clusters are collapsed to a single mean
node, nodes with more than two neighbors are split into per-edge copies,
and remaining pure cycles are cut at their upmost node. Walking the
resulting paths yields the stroke set.

All rewrites iterate nodes in index order (row-major for bitmap input), so
the output is deterministic for a given input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .validation import check_binary_image

__all__ = [
    "PixelGraph",
    "GraphContractError",
    "build_graph",
    "collapse_clusters",
    "split_junctions",
    "split_cycles",
    "extract_strokes",
    "vectorize",
]


class GraphContractError(ValueError):
    """A stage received a graph violating its precondition (pipeline ordering bug)."""


@dataclass
class PixelGraph:
    """Nodes with 2-D (x, y) positions plus undirected edges by node index.

    Edges are stored as (i, j) pairs with i < j, without duplicates or
    self-loops. Positions start on the integer pixel grid but may become
    fractional after cluster collapsing.
    """

    nodes: np.ndarray
    edges: list[tuple[int, int]]

    def __post_init__(self):
        self.nodes = np.asarray(self.nodes, dtype=float).reshape(-1, 2)
        canon = []
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            if not (0 <= u < len(self.nodes) and 0 <= v < len(self.nodes)):
                raise ValueError(f"edge ({u}, {v}) references a missing node")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                continue
            seen.add(e)
            canon.append(e)
        self.edges = sorted(canon)

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)


def _adjacency(n_nodes: int, edges) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n_nodes)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    for nbrs in adj:
        nbrs.sort()
    return adj


def _components(n_nodes: int, adj: list[list[int]]) -> list[list[int]]:
    """Connected components as sorted node lists, ordered by smallest member."""
    seen = np.zeros(n_nodes, dtype=bool)
    comps = []
    for start in range(n_nodes):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            node = stack.pop()
            comp.append(node)
            for nbr in adj[node]:
                if not seen[nbr]:
                    seen[nbr] = True
                    stack.append(nbr)
        comps.append(sorted(comp))
    return comps


def build_graph(mask) -> PixelGraph:
    """One node per ink pixel, one edge per 8-adjacent ink pixel pair."""
    mask = check_binary_image(mask)
    rows, cols = np.nonzero(mask)
    nodes = np.column_stack([cols, rows]).astype(float)
    index = {(int(x), int(y)): i for i, (x, y) in enumerate(nodes)}
    edges = []
    # offsets pointing at pixels later in row-major order: E, SW, S, SE
    offsets = ((1, 0), (-1, 1), (0, 1), (1, 1))
    for i, (x, y) in enumerate(zip(cols, rows)):
        for dx, dy in offsets:
            j = index.get((int(x) + dx, int(y) + dy))
            if j is not None:
                edges.append((i, j))
    return PixelGraph(nodes, edges)


def _triangles(adj: list[list[int]], edges) -> list[tuple[int, int, int]]:
    adj_sets = [set(nbrs) for nbrs in adj]
    tris = []
    for u, v in edges:
        for w in sorted(adj_sets[u] & adj_sets[v]):
            if w > v:
                tris.append((u, v, w))
    return tris


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def collapse_clusters(g: PixelGraph) -> PixelGraph:
    """Collapse triangle clusters into single mean-position nodes.

    Triangles sharing an edge are grouped transitively into clusters. In
    every cluster, the nodes whose neighbors all lie inside the cluster are
    removed and replaced by one new node at their mean position; edges from
    the remaining cluster nodes to removed nodes are rewired to the new
    node. Triangle edges of any triangle that lost a vertex are dropped as
    well, so the collapsed region becomes a star around the new node
    instead of keeping its chords. Clusters without such interior nodes,
    and triangle-free graphs, are left untouched.
    """
    adj = _adjacency(g.n_nodes, g.edges)
    tris = _triangles(adj, g.edges)
    if not tris:
        return PixelGraph(g.nodes.copy(), list(g.edges))

    uf = _UnionFind(len(tris))
    edge_owner: dict[tuple[int, int], int] = {}
    for t_id, (u, v, w) in enumerate(tris):
        for e in ((u, v), (u, w), (v, w)):
            if e in edge_owner:
                uf.union(edge_owner[e], t_id)
            else:
                edge_owner[e] = t_id
    groups: dict[int, list[int]] = {}
    for t_id in range(len(tris)):
        groups.setdefault(uf.find(t_id), []).append(t_id)
    clusters = sorted(groups.values(), key=lambda ids: min(tris[t][0] for t in ids))

    adj_sets = [set(nbrs) for nbrs in adj]
    cluster_of: dict[int, int] = {}
    new_positions: list[np.ndarray] = []
    drop_edges: set[tuple[int, int]] = set()
    rewired: set[tuple[int, int]] = set()

    for cluster_tris in clusters:
        node_set = set()
        for t_id in cluster_tris:
            node_set.update(tris[t_id])
        interior = [n for n in sorted(node_set) if n not in cluster_of and adj_sets[n] <= node_set]
        if not interior:
            continue
        ordinal = len(new_positions)
        new_positions.append(g.nodes[interior].mean(axis=0))
        cluster_of.update((n, ordinal) for n in interior)
        interior_set = set(interior)
        for t_id in cluster_tris:
            u, v, w = tris[t_id]
            if interior_set & {u, v, w}:
                drop_edges.update(((u, v), (u, w), (v, w)))
        for r in interior:
            for nbr in adj[r]:
                drop_edges.add((min(r, nbr), max(r, nbr)))
                if nbr not in interior_set:
                    rewired.add((nbr, ordinal))

    if not cluster_of:
        return PixelGraph(g.nodes.copy(), list(g.edges))

    keep = [i for i in range(g.n_nodes) if i not in cluster_of]
    remap = {old: new for new, old in enumerate(keep)}
    n_kept = len(keep)
    nodes = np.vstack([g.nodes[keep], np.array(new_positions).reshape(-1, 2)])
    edges = [
        (remap[u], remap[v])
        for u, v in g.edges
        if (u, v) not in drop_edges
    ]
    for nbr, ordinal in rewired:
        # a boundary neighbor may itself have been absorbed by another cluster
        end = remap[nbr] if nbr not in cluster_of else n_kept + cluster_of[nbr]
        target = n_kept + ordinal
        if end != target:
            edges.append((end, target))
    return PixelGraph(nodes, edges)


def split_junctions(g: PixelGraph) -> PixelGraph:
    """Replace every node of degree > 2 with one copy per incident edge.

    Copies share the original position, so the resulting graph has maximum
    degree 2 while keeping the multiset of positions (up to duplication).
    """
    adj = _adjacency(g.n_nodes, g.edges)
    degree = [len(nbrs) for nbrs in adj]
    if all(d <= 2 for d in degree):
        return PixelGraph(g.nodes.copy(), list(g.edges))

    positions: list[np.ndarray] = []
    keep_map: dict[int, int] = {}
    copy_map: dict[tuple[int, tuple[int, int]], int] = {}
    for n in range(g.n_nodes):
        if degree[n] <= 2:
            keep_map[n] = len(positions)
            positions.append(g.nodes[n])
    for n in range(g.n_nodes):
        if degree[n] > 2:
            for nbr in adj[n]:
                e = (min(n, nbr), max(n, nbr))
                copy_map[(n, e)] = len(positions)
                positions.append(g.nodes[n])

    def endpoint(n: int, e: tuple[int, int]) -> int:
        return keep_map[n] if degree[n] <= 2 else copy_map[(n, e)]

    edges = [(endpoint(u, (u, v)), endpoint(v, (u, v))) for u, v in g.edges]
    return PixelGraph(np.array(positions).reshape(-1, 2), edges)


def split_cycles(g: PixelGraph) -> PixelGraph:
    """Cut every pure-cycle component at its upmost node.

    The upmost node (minimum y, ties by minimum x, then index) is
    duplicated and one of its two incident edges re-attached to the copy,
    turning the cycle into an open path that starts and ends at the same
    position. Requires maximum degree 2.
    """
    adj = _adjacency(g.n_nodes, g.edges)
    if any(len(nbrs) > 2 for nbrs in adj):
        raise GraphContractError("split_cycles requires maximum degree 2")

    positions = [g.nodes[i] for i in range(g.n_nodes)]
    edges = set(g.edges)
    for comp in _components(g.n_nodes, adj):
        if len(comp) < 3 or any(len(adj[n]) != 2 for n in comp):
            continue
        top = min(comp, key=lambda n: (g.nodes[n, 1], g.nodes[n, 0], n))
        # cut the edge toward the larger-indexed neighbor, so the opened
        # path walks from the cut node toward the smaller one first
        second = adj[top][1]
        copy = len(positions)
        positions.append(g.nodes[top].copy())
        edges.discard((min(top, second), max(top, second)))
        edges.add((second, copy))
    return PixelGraph(np.array(positions).reshape(-1, 2), sorted(edges))


def extract_strokes(g: PixelGraph) -> list[np.ndarray]:
    """Walk every path component into an ordered stroke polyline.

    Isolated nodes become single-point strokes. Adjacent nodes sharing a
    position (a collapsed mean can land exactly on its neighbor) contribute
    one polyline point, keeping consecutive stroke points distinct. Raises
    GraphContractError if the graph still contains a junction or a cycle.
    """
    adj = _adjacency(g.n_nodes, g.edges)
    if any(len(nbrs) > 2 for nbrs in adj):
        raise GraphContractError("extract_strokes requires maximum degree 2")

    strokes = []
    for comp in _components(g.n_nodes, adj):
        if len(comp) == 1:
            strokes.append(g.nodes[comp].copy())
            continue
        endpoints = [n for n in comp if len(adj[n]) == 1]
        if not endpoints:
            raise GraphContractError("extract_strokes found an uncut cycle")
        start = min(endpoints)
        path = [start]
        prev, cur = -1, start
        while True:
            nxt = [n for n in adj[cur] if n != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            if (g.nodes[cur] != g.nodes[path[-1]]).any():
                path.append(cur)
        strokes.append(g.nodes[path].copy())
    return strokes


def vectorize(mask) -> list[np.ndarray]:
    """Convert a skeleton bitmap to strokes: build, collapse, split, walk."""
    g = build_graph(check_binary_image(mask))
    g = collapse_clusters(g)
    g = split_junctions(g)
    g = split_cycles(g)
    return extract_strokes(g)

"""Distance matrix, single-linkage clustering, and minimal spanning trees.

The distance between two linked countries is the inverse of their link
weight (so 0.5 or 1 on projection graphs); unlinked pairs sit at an
infinite sentinel distance, serialized as the token ``INF``. Nearest
neighbor single-linkage clustering merges the closest pair of clusters at
each of the n-1 steps; recording the node pair realizing each finite merge
yields the minimal spanning tree.

Distances take only two finite values on projection graphs, so the MST is
massively non-unique. The deterministic tie-break picks, among minimal
candidate merges, the edge whose node pair sorts first in corpus order
(smaller first index, then smaller second index). Only tie-invariant
quantities (total distance, merge-distance multiset, component structure)
are meaningful across implementations; node positions depend on the rule.
"""

from __future__ import annotations

import csv
import io
import math
from collections import deque
from dataclasses import dataclass

from .bipartite import WeightedGraph, _dot_widths

INF_TOKEN = "INF"


class DistanceMatrix:
    """Symmetric pairwise distances with an infinite sentinel for non-links.

    Finite entries are held sparsely on index pairs; everything else is
    ``math.inf`` off the diagonal and 0 on it.
    """

    def __init__(self, nodes, finite: dict[tuple[int, int], float]):
        self._nodes = tuple(nodes)
        n = len(self._nodes)
        self._d: dict[tuple[int, int], float] = {}
        for (i, j), d in finite.items():
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise ValueError(f"bad index pair ({i}, {j})")
            if not (d > 0 and math.isfinite(d)):
                raise ValueError(f"finite distance must be positive, got {d}")
            key = (i, j) if i < j else (j, i)
            if self._d.setdefault(key, d) != d:
                raise ValueError(f"conflicting distances for pair {key}")
        self._index = {c: i for i, c in enumerate(self._nodes)}

    @property
    def nodes(self) -> tuple[str, ...]:
        return self._nodes

    @property
    def n(self) -> int:
        return len(self._nodes)

    def d_index(self, i: int, j: int) -> float:
        if i == j:
            return 0.0
        key = (i, j) if i < j else (j, i)
        return self._d.get(key, math.inf)

    def distance(self, a: str, b: str) -> float:
        return self.d_index(self._index[a], self._index[b])

    def finite_pairs(self) -> list[tuple[int, int, float]]:
        return sorted((i, j, d) for (i, j), d in self._d.items())


def distance_matrix(g: WeightedGraph) -> DistanceMatrix:
    """d_ij = 1 / L_ij for linked pairs, infinite otherwise."""
    finite = {
        (g.index(a), g.index(b)): 1.0 / v for a, b, v in g.edges()
    }
    return DistanceMatrix(g.nodes, finite)


@dataclass(frozen=True)
class MergeStep:
    """One agglomeration: clusters ``cluster_a < cluster_b`` joined into
    ``new_cluster`` at ``distance`` (``math.inf`` flags a sentinel merge of
    disconnected parts), realized by the node pair ``edge``."""

    step: int
    cluster_a: int
    cluster_b: int
    new_cluster: int
    distance: float
    edge: tuple[str, str]


@dataclass(frozen=True)
class Dendrogram:
    """Full merge history; leaf cluster ids are node indices 0..n-1."""

    nodes: tuple[str, ...]
    steps: tuple[MergeStep, ...]

    @property
    def complete(self) -> bool:
        """True when every merge happened at a finite distance."""
        return all(math.isfinite(s.distance) for s in self.steps)


def single_linkage(D: DistanceMatrix) -> Dendrogram:
    """Nearest-neighbor agglomeration down to a single cluster.

    At each step the two clusters at minimal inter-cluster distance merge,
    with d(A, B) = min over cross pairs. When only infinite distances
    remain, the remaining clusters are still merged, at the sentinel
    distance, so the history always has n-1 steps. Ties are broken by the
    realizing node pair's (first index, second index).
    """
    n = D.n
    if n < 2:
        raise ValueError("single linkage needs at least 2 nodes")
    # Inter-cluster entries (d, p, q): p < q node indices realizing d.
    entry: dict[tuple[int, int], tuple[float, int, int]] = {}
    for i in range(n):
        for j in range(i + 1, n):
            entry[(i, j)] = (D.d_index(i, j), i, j)
    active = set(range(n))
    steps = []
    nodes = D.nodes
    for step in range(1, n):
        (ida, idb), (d, p, q) = min(entry.items(), key=lambda kv: kv[1])
        new_id = n + step - 1
        steps.append(
            MergeStep(step, ida, idb, new_id, d, (nodes[p], nodes[q]))
        )
        active.discard(ida)
        active.discard(idb)
        for e in active:
            da = entry.pop((min(e, ida), max(e, ida)))
            db = entry.pop((min(e, idb), max(e, idb)))
            entry[(e, new_id)] = min(da, db)
        del entry[(ida, idb)]
        active.add(new_id)
    return Dendrogram(nodes, tuple(steps))


@dataclass(frozen=True)
class SpanningTree:
    """Minimal spanning tree (or forest) with per-node structure stats.

    ``warning`` is True when the input was disconnected: the edges then
    form a spanning forest rather than a single tree, one edge short per
    extra component. Eccentricity is the hop count to the farthest node
    within the same component.
    """

    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str, float], ...]
    warning: bool
    degree: dict[str, int]
    eccentricity: dict[str, int]

    @property
    def total_distance(self) -> float:
        return sum(d for _, _, d in self.edges)

    @property
    def leaves(self) -> tuple[str, ...]:
        return tuple(c for c in self.nodes if self.degree[c] == 1)


def _tree_eccentricities(nodes, edges) -> dict[str, int]:
    adj: dict[str, list[str]] = {c: [] for c in nodes}
    for a, b, _ in edges:
        adj[a].append(b)
        adj[b].append(a)
    ecc = {}
    for start in nodes:
        dist = {start: 0}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        ecc[start] = max(dist.values())
    return ecc


def mst_edges(D: DistanceMatrix) -> SpanningTree:
    """Tree edges realizing the finite single-linkage merges.

    On a connected input this is the minimal spanning tree with n-1 edges;
    a disconnected input yields a per-component forest and sets the
    ``warning`` flag (sentinel merges contribute no edge).
    """
    dn = single_linkage(D)
    index = {c: i for i, c in enumerate(dn.nodes)}
    edges = []
    for s in dn.steps:
        if math.isfinite(s.distance):
            a, b = s.edge
            if index[a] > index[b]:
                a, b = b, a
            edges.append((a, b, s.distance))
    degree = {c: 0 for c in dn.nodes}
    for a, b, _ in edges:
        degree[a] += 1
        degree[b] += 1
    return SpanningTree(
        nodes=dn.nodes,
        edges=tuple(edges),
        warning=len(edges) < D.n - 1,
        degree=degree,
        eccentricity=_tree_eccentricities(dn.nodes, edges),
    )


def tree_stats(t: SpanningTree, labels: dict[str, str]) -> dict:
    """Structural report: per-node degree/eccentricity, leaves, and
    per-partition counts of leaves and of top-decile-degree nodes.

    The top decile holds the k = max(1, n // 10) highest tree degrees,
    ties included.
    """
    for c in t.nodes:
        if c not in labels:
            raise KeyError(f"node {c!r} has no partition label")
    k = max(1, len(t.nodes) // 10)
    threshold = sorted(t.degree.values(), reverse=True)[k - 1]
    top = tuple(c for c in t.nodes if t.degree[c] >= threshold)
    leaf_counts: dict[str, int] = {}
    for c in t.leaves:
        leaf_counts[labels[c]] = leaf_counts.get(labels[c], 0) + 1
    top_counts: dict[str, int] = {}
    for c in top:
        top_counts[labels[c]] = top_counts.get(labels[c], 0) + 1
    return {
        "degree": dict(t.degree),
        "eccentricity": dict(t.eccentricity),
        "leaves": list(t.leaves),
        "top_decile": list(top),
        "leaf_count_by_partition": leaf_counts,
        "top_decile_by_partition": top_counts,
    }


def _fmt_distance(d: float) -> str:
    return INF_TOKEN if math.isinf(d) else f"{d:g}"


def dendrogram_csv(dn: Dendrogram) -> str:
    """Render merges as `step,cluster_a,cluster_b,distance` rows."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["step", "cluster_a", "cluster_b", "distance"])
    for s in dn.steps:
        w.writerow([s.step, s.cluster_a, s.cluster_b, _fmt_distance(s.distance)])
    return buf.getvalue()


def tree_edge_csv(t: SpanningTree) -> str:
    """Render tree edges as `src,dst,distance` rows in merge order."""
    lines = ["src,dst,distance"]
    lines += [f"{a},{b},{_fmt_distance(d)}" for a, b, d in t.edges]
    return "\n".join(lines) + "\n"


def tree_dot(
    t: SpanningTree,
    colorgroups: dict[str, str] | None = None,
    sizes: dict[str, float] | None = None,
    name: str = "mst",
) -> str:
    """Render the tree in DOT format with the same node attributes as the
    network export (colorgroup from a taxonomy, width from size values)."""
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    widths = _dot_widths(t.nodes, sizes or {})
    for c in t.nodes:
        attrs = []
        if colorgroups and c in colorgroups:
            attrs.append(f'colorgroup="{colorgroups[c]}"')
        attrs.append(f"width={widths[c]:g}")
        lines.append(f'  "{c}" [{", ".join(attrs)}];')
    for a, b, d in t.edges:
        lines.append(f'  "{a}" -- "{b}" [distance={_fmt_distance(d)}];')
    lines.append("}")
    return "\n".join(lines) + "\n"

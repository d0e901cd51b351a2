"""Topological coefficients and partition-averaged summary tables.

Degree is weighted (sum of incident link weights). Betweenness, clustering,
density and diameter run on the unweighted skeleton: a pair is adjacent iff
its link weight is at least 1. Betweenness comes in two conventions, a raw
Freeman pair-path count and the percentage share of the (n-1)(n-2)/2 pairs
not involving the node; tables report the percentage. Means over partitions
are plain arithmetic means over member nodes.
"""

from __future__ import annotations

import csv
import io
from collections import deque
from dataclasses import dataclass

from .bipartite import WeightedGraph


@dataclass(frozen=True)
class NodeMetrics:
    code: str
    weighted_degree: int
    degree: int
    betweenness_raw: float
    betweenness_pct: float
    clustering: float


@dataclass(frozen=True)
class PartitionSummary:
    label: str
    size: int
    mean_k: float
    mean_B: float
    mean_C: float


@dataclass(frozen=True)
class NetworkSummary:
    size: int
    mean_k: float
    mean_B: float
    mean_C: float
    density: float
    diameter: int


def weighted_degree(g: WeightedGraph, i: str) -> int:
    """Sum of incident link weights."""
    return sum(g.weight(i, j) for j in g.neighbors(i))


def unweighted_degree(g: WeightedGraph, i: str) -> int:
    """Number of linked neighbors."""
    return len(g.neighbors(i))


def betweenness(g: WeightedGraph) -> dict[str, tuple[float, float]]:
    """Shortest-path betweenness of every node, as (raw, pct).

    Brandes' accumulation over unweighted shortest paths. ``raw`` counts
    unordered pairs: raw(i) = sum over pairs {s,t} (s,t != i) of the
    fraction of shortest s-t paths through i; unreachable pairs contribute
    zero. ``pct`` rescales raw by (n-1)(n-2)/2 into a 0..100 share.
    """
    nodes = g.nodes
    raw = {v: 0.0 for v in nodes}
    for s in nodes:
        stack: list[str] = []
        pred: dict[str, list[str]] = {w: [] for w in nodes}
        sigma = {w: 0 for w in nodes}
        dist = {w: -1 for w in nodes}
        sigma[s] = 1
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in g.neighbors(v):
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    pred[w].append(v)
        delta = {w: 0.0 for w in nodes}
        while stack:
            w = stack.pop()
            for v in pred[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                raw[w] += delta[w]
    n = len(nodes)
    pairs = (n - 1) * (n - 2) / 2
    out = {}
    for v in nodes:
        r = raw[v] / 2.0  # each unordered pair was accumulated from both ends
        out[v] = (r, 100.0 * r / pairs if pairs else 0.0)
    return out


def local_clustering(g: WeightedGraph, i: str) -> float:
    """2T / (k(k-1)) with T the links among i's neighbors; 0 when k < 2."""
    nbrs = g.neighbors(i)
    k = len(nbrs)
    if k < 2:
        return 0.0
    t = 0
    for a in range(k):
        for b in range(a + 1, k):
            if g.weight(nbrs[a], nbrs[b]):
                t += 1
    return 2.0 * t / (k * (k - 1))


def density(g: WeightedGraph) -> float:
    """2L / (n(n-1)) with L the number of linked pairs."""
    if g.n < 2:
        raise ValueError("density needs at least 2 nodes")
    return 2.0 * g.edge_count / (g.n * (g.n - 1))


def _bfs_distances(g: WeightedGraph, start: str) -> dict[str, int]:
    dist = {start: 0}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def connected_components(g: WeightedGraph) -> list[tuple[str, ...]]:
    """Components in node order (each component ordered as well)."""
    seen: set[str] = set()
    comps = []
    for v in g.nodes:
        if v in seen:
            continue
        reach = _bfs_distances(g, v)
        seen |= reach.keys()
        comps.append(tuple(c for c in g.nodes if c in reach))
    return comps


def diameter(g: WeightedGraph) -> int:
    """Longest shortest-path length within the largest component."""
    if g.edge_count == 0:
        raise ValueError("diameter undefined on an edgeless graph")
    comp = max(connected_components(g), key=len)
    best = 0
    for v in comp:
        ecc = max(_bfs_distances(g, v).values())
        best = max(best, ecc)
    return best


def node_metrics(g: WeightedGraph) -> list[NodeMetrics]:
    """All five per-node coefficients, in node order."""
    bet = betweenness(g)
    return [
        NodeMetrics(
            code=v,
            weighted_degree=weighted_degree(g, v),
            degree=unweighted_degree(g, v),
            betweenness_raw=bet[v][0],
            betweenness_pct=bet[v][1],
            clustering=local_clustering(g, v),
        )
        for v in g.nodes
    ]


def partition_summaries(
    g: WeightedGraph,
    labels: dict[str, str],
    order: tuple[str, ...] | None = None,
) -> list[PartitionSummary]:
    """Arithmetic means of k_w, B (pct) and C per partition.

    ``labels`` must cover every node. Rows follow ``order`` when given
    (partitions without members are dropped), else first-appearance order.
    """
    for v in g.nodes:
        if v not in labels:
            raise KeyError(f"node {v!r} has no partition label")
    members: dict[str, list[NodeMetrics]] = {}
    seen_order: list[str] = []
    for m in node_metrics(g):
        lab = labels[m.code]
        if lab not in members:
            members[lab] = []
            seen_order.append(lab)
        members[lab].append(m)
    rows = []
    for lab in order if order is not None else tuple(seen_order):
        group = members.get(lab)
        if not group:
            continue
        size = len(group)
        rows.append(
            PartitionSummary(
                label=lab,
                size=size,
                mean_k=sum(m.weighted_degree for m in group) / size,
                mean_B=sum(m.betweenness_pct for m in group) / size,
                mean_C=sum(m.clustering for m in group) / size,
            )
        )
    return rows


def network_summary(g: WeightedGraph) -> NetworkSummary:
    """Whole-graph row: means plus density and diameter."""
    ms = node_metrics(g)
    n = len(ms)
    return NetworkSummary(
        size=n,
        mean_k=sum(m.weighted_degree for m in ms) / n,
        mean_B=sum(m.betweenness_pct for m in ms) / n,
        mean_C=sum(m.clustering for m in ms) / n,
        density=density(g),
        diameter=diameter(g),
    )


def _fmt(x: float, precision: int | None) -> str:
    if precision is None:
        return repr(float(x))
    return f"{x:.{precision}f}"


def partition_table_csv(rows: list[PartitionSummary], precision: int | None = 2) -> str:
    """Render partition summaries as `partition,size,mean_k,mean_B,mean_C`."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["partition", "size", "mean_k", "mean_B", "mean_C"])
    for r in rows:
        w.writerow(
            [r.label, r.size, _fmt(r.mean_k, precision), _fmt(r.mean_B, precision), _fmt(r.mean_C, precision)]
        )
    return buf.getvalue()


def network_table_csv(
    rows: list[tuple[str, NetworkSummary]], precision: int | None = 2
) -> str:
    """Render whole-graph rows as `graph,size,mean_k,mean_B,mean_C,density,diameter`."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["graph", "size", "mean_k", "mean_B", "mean_C", "density", "diameter"])
    for name, s in rows:
        w.writerow(
            [
                name,
                s.size,
                _fmt(s.mean_k, precision),
                _fmt(s.mean_B, precision),
                _fmt(s.mean_C, precision),
                _fmt(s.density, precision),
                s.diameter,
            ]
        )
    return buf.getvalue()

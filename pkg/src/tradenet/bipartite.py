"""Bipartite country-entity graphs and their weighted one-mode projections.

A country connects to exactly two entities on a given axis (its first and
second destinations, or its first and second commodities). Projecting onto
the country partition links two countries iff they share at least one
entity, weighted by the number of shared entities, so projection weights
take values in {0, 1, 2}. Node order everywhere is corpus file order, which
keeps every downstream output deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dataset import AXES, COMMODITY_AXIS, DESTINATION_AXIS, Dataset


@dataclass(frozen=True)
class BipartiteGraph:
    """Country nodes vs entity nodes with cross-partition edges only."""

    left: tuple[str, ...]
    right: tuple[str, ...]
    edges: frozenset[tuple[str, str]]
    axis: str


class WeightedGraph:
    """Symmetric nonnegative-integer-weighted graph on an ordered node list.

    Weights are stored sparsely for index-ordered pairs; absent pairs weigh
    zero and the diagonal is zero. Instances are immutable once built and
    safe for concurrent reads.
    """

    def __init__(self, nodes, weights, axis: str = ""):
        """``weights``: mapping (node, node) -> weight; zero entries allowed."""
        self._nodes = tuple(nodes)
        if len(set(self._nodes)) != len(self._nodes):
            raise ValueError("duplicate node")
        self._index = {c: i for i, c in enumerate(self._nodes)}
        self.axis = axis
        w: dict[tuple[str, str], int] = {}
        for (a, b), v in weights.items():
            if a == b:
                raise ValueError(f"self-loop on {a!r}")
            if a not in self._index or b not in self._index:
                raise ValueError(f"edge ({a!r}, {b!r}) uses unknown node")
            if v < 0:
                raise ValueError(f"negative weight on ({a!r}, {b!r})")
            if not v:
                continue
            key = (a, b) if self._index[a] < self._index[b] else (b, a)
            if w.setdefault(key, v) != v:
                raise ValueError(f"conflicting weights for pair {key!r}")
            w[key] = v
        self._w = w
        adj: dict[str, list[str]] = {c: [] for c in self._nodes}
        for a, b in self._w:
            adj[a].append(b)
            adj[b].append(a)
        self._adj = {
            c: tuple(sorted(ns, key=self._index.__getitem__)) for c, ns in adj.items()
        }

    @property
    def nodes(self) -> tuple[str, ...]:
        return self._nodes

    @property
    def n(self) -> int:
        return len(self._nodes)

    def index(self, node: str) -> int:
        try:
            return self._index[node]
        except KeyError:
            raise KeyError(f"unknown node {node!r}") from None

    def weight(self, i: str, j: str) -> int:
        """L_ij; zero for the diagonal and for absent links."""
        self.index(i), self.index(j)
        if i == j:
            return 0
        key = (i, j) if self._index[i] < self._index[j] else (j, i)
        return self._w.get(key, 0)

    def neighbors(self, i: str) -> tuple[str, ...]:
        """Nodes linked to i (weight >= 1), in node order."""
        self.index(i)
        return self._adj[i]

    def edges(self) -> list[tuple[str, str, int]]:
        """All links (a, b, weight) with index(a) < index(b), in node order."""
        return sorted(
            ((a, b, v) for (a, b), v in self._w.items()),
            key=lambda e: (self._index[e[0]], self._index[e[1]]),
        )

    @property
    def edge_count(self) -> int:
        return len(self._w)


def build_bipartite(ds: Dataset, axis: str) -> BipartiteGraph:
    """Country-entity bipartite graph for one axis.

    Left nodes are the country codes in corpus order; right nodes are the
    union of first+second entries in order of first appearance; edges pair
    each country with its two entities.
    """
    if axis not in AXES:
        raise ValueError(f"unknown axis {axis!r}")
    left = ds.codes()
    right: list[str] = []
    seen: set[str] = set()
    edges: set[tuple[str, str]] = set()
    for code in left:
        for e in ds.entities(code, axis):
            if e not in seen:
                seen.add(e)
                right.append(e)
            edges.add((code, e))
    return BipartiteGraph(left, tuple(right), frozenset(edges), axis)


def project(bg: BipartiteGraph) -> WeightedGraph:
    """One-mode projection onto the country partition.

    Two countries are linked iff they share an entity; the weight is the
    number of shared entities. With two entities per country, weights stay
    within {0, 1, 2}.
    """
    ent: dict[str, set[str]] = {c: set() for c in bg.left}
    for c, e in bg.edges:
        ent[c].add(e)
    weights: dict[tuple[str, str], int] = {}
    left = bg.left
    for i, a in enumerate(left):
        for b in left[i + 1 :]:
            shared = len(ent[a] & ent[b])
            if shared:
                weights[(a, b)] = shared
    return WeightedGraph(left, weights, axis=bg.axis)


def link_weight(ds: Dataset, i: str, j: str, axis: str) -> int:
    """Shared-entity count for one pair, without building the full graph."""
    if i == j:
        raise ValueError("link weight needs two distinct countries")
    return len(set(ds.entities(i, axis)) & set(ds.entities(j, axis)))


def edge_list_csv(g: WeightedGraph) -> str:
    """Render the graph as `src,dst,weight` rows in node order."""
    lines = ["src,dst,weight"]
    lines += [f"{a},{b},{v}" for a, b, v in g.edges()]
    return "\n".join(lines) + "\n"


def _dot_widths(nodes, sizes) -> dict[str, float]:
    # Width proportional to the supplied size; nodes without a size get 1.
    vals = {c: sizes[c] for c in nodes if sizes and sizes.get(c) is not None}
    vmax = max(vals.values(), default=0)
    widths = {}
    for c in nodes:
        if c in vals and vmax > 0:
            widths[c] = round(0.5 + 2.5 * vals[c] / vmax, 4)
        else:
            widths[c] = 1.0
    return widths


def graph_dot(
    g: WeightedGraph,
    colorgroups: dict[str, str] | None = None,
    sizes: dict[str, float] | None = None,
    name: str = "network",
) -> str:
    """Render the graph in DOT format.

    Each node carries a ``colorgroup`` attribute from the chosen taxonomy
    (when given) and a ``width`` proportional to its size value (unit width
    when absent). Edges carry their projection weight.
    """
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    widths = _dot_widths(g.nodes, sizes or {})
    for c in g.nodes:
        attrs = []
        if colorgroups and c in colorgroups:
            attrs.append(f'colorgroup="{colorgroups[c]}"')
        attrs.append(f"width={widths[c]:g}")
        lines.append(f'  "{c}" [{", ".join(attrs)}];')
    for a, b, v in g.edges():
        lines.append(f'  "{a}" -- "{b}" [weight={v}];')
    lines.append("}")
    return "\n".join(lines) + "\n"

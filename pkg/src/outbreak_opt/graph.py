"""Undirected simple graphs: edge-list parsing, node removal, degree stats."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np
from scipy import sparse

_COMMENT_PREFIXES = ("#", "%")


class EdgeListError(ValueError):
    """Raised when an edge-list stream cannot be parsed."""


class Graph:
    """Immutable undirected simple graph with dense node ids 0..n-1.

    Adjacency lists are sorted ascending. ``labels[v]`` keeps the original
    node label from the input file (defaults to ``str(v)``). Instances are
    safe to share across threads once constructed.
    """

    def __init__(self, n, edges=(), labels=None):
        if n < 0:
            raise ValueError("node count must be nonnegative")
        if labels is not None and len(labels) != n:
            raise ValueError("labels length must equal node count")
        adjacency = [[] for _ in range(n)]
        seen = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                continue
            seen.add(key)
            adjacency[u].append(v)
            adjacency[v].append(u)
        self.n = n
        self.edge_count = len(seen)
        self.adjacency = tuple(tuple(sorted(nbrs)) for nbrs in adjacency)
        if labels is None:
            self.labels = tuple(str(v) for v in range(n))
        else:
            self.labels = tuple(str(lab) for lab in labels)
        self._csr = None

    def neighbors(self, v):
        return self.adjacency[v]

    def degrees(self) -> np.ndarray:
        return np.array([len(nbrs) for nbrs in self.adjacency], dtype=np.int64)

    def edges(self):
        """Yield each undirected edge once as (u, v) with u < v."""
        for u in range(self.n):
            for v in self.adjacency[u]:
                if u < v:
                    yield u, v

    def csr(self) -> sparse.csr_matrix:
        """Adjacency as a CSR matrix (cached; used by the simulation loops)."""
        if self._csr is None:
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            for v in range(self.n):
                indptr[v + 1] = indptr[v] + len(self.adjacency[v])
            indices = np.fromiter(
                (w for nbrs in self.adjacency for w in nbrs),
                dtype=np.int64,
                count=int(indptr[-1]),
            )
            data = np.ones(int(indptr[-1]), dtype=np.float64)
            self._csr = sparse.csr_matrix(
                (data, indices, indptr), shape=(self.n, self.n)
            )
        return self._csr

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and self.adjacency == other.adjacency
            and self.labels == other.labels
        )

    def __hash__(self):
        return hash((self.n, self.adjacency))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_count})"


@dataclass(frozen=True)
class LoadedGraph:
    """An ingested graph plus what the parser had to clean up."""

    graph: Graph
    duplicates_collapsed: int


def _iter_lines(source):
    if isinstance(source, (bytes, bytearray)):
        yield from source.decode("utf-8").splitlines()
    elif isinstance(source, str):
        yield from source.splitlines()
    else:
        for raw in source:
            if isinstance(raw, (bytes, bytearray)):
                raw = raw.decode("utf-8")
            yield raw


def load_edge_list(source) -> LoadedGraph:
    """Parse a whitespace-separated edge list into a dense-id Graph.

    Lines starting with '#' or '%' and blank lines are skipped. Node labels
    map to ids 0..n-1 in first-appearance order. Duplicate edges (either
    direction) collapse silently and are counted in the returned report.
    Self-loops and malformed lines raise EdgeListError with the line number.
    """
    ids: dict[str, int] = {}
    edges = []
    seen = set()
    duplicates = 0
    for lineno, raw in enumerate(_iter_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith(_COMMENT_PREFIXES):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise EdgeListError(
                f"line {lineno}: expected 2 tokens, got {len(tokens)}"
            )
        a, b = tokens
        if a == b:
            raise EdgeListError(f"line {lineno}: self-loop on node {a!r}")
        u = ids.setdefault(a, len(ids))
        v = ids.setdefault(b, len(ids))
        key = (u, v) if u < v else (v, u)
        if key in seen:
            duplicates += 1
        else:
            seen.add(key)
            edges.append(key)
    if not ids:
        raise EdgeListError("empty graph")
    labels = [None] * len(ids)
    for label, i in ids.items():
        labels[i] = label
    return LoadedGraph(Graph(len(ids), edges, labels), duplicates)


def write_edge_list(g: Graph, sink) -> None:
    """Write one 'label_u label_v' line per edge (inverse of load_edge_list)."""
    for u, v in g.edges():
        sink.write(f"{g.labels[u]} {g.labels[v]}\n")


def check_node_set(g: Graph, members) -> frozenset:
    """Validate a set of node ids against g and return it as a frozenset."""
    out = frozenset(int(v) for v in members)
    for v in out:
        if not 0 <= v < g.n:
            raise ValueError(f"invalid node {v} for graph with {g.n} nodes")
    return out


def remove_nodes(g: Graph, immunized):
    """Drop the given nodes (and their incident edges) from g.

    Returns (residual graph, mapping) where mapping[new_id] = old_id; the
    residual graph keeps the original labels of the surviving nodes.
    """
    members = check_node_set(g, immunized)
    keep = [v for v in range(g.n) if v not in members]
    new_id = {old: new for new, old in enumerate(keep)}
    edges = [
        (new_id[u], new_id[v])
        for u, v in g.edges()
        if u in new_id and v in new_id
    ]
    labels = [g.labels[v] for v in keep]
    return Graph(len(keep), edges, labels), np.array(keep, dtype=np.int64)


def degree_distribution(g: Graph) -> dict[int, int]:
    """Map degree -> number of nodes with that degree; counts sum to n."""
    return dict(Counter(len(nbrs) for nbrs in g.adjacency))


def connected_components(g: Graph) -> list[list[int]]:
    """Connected components as sorted node-id lists (BFS)."""
    seen = [False] * g.n
    components = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        queue = [start]
        comp = []
        while queue:
            v = queue.pop()
            comp.append(v)
            for w in g.adjacency[v]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        components.append(sorted(comp))
    return components

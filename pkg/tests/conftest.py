"""Shared graph fixtures and independent oracles."""

from itertools import combinations

import numpy as np
import pytest

from outbreak_opt import Graph


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n):
    return Graph(n, list(combinations(range(n), 2)))


def star_graph(leaves):
    """Node 0 is the hub."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def cycle_graph(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def random_graph(rng, n, p):
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
    return Graph(n, edges)


def clique_edges(nodes):
    return list(combinations(nodes, 2))


@pytest.fixture
def two_k6_bridge():
    """Two K6 cliques joined by a single path node (id 12).

    The bridge attaches to two nodes per clique, so removing any single node
    leaves component sizes that are exact: protecting the bridge always
    yields 6 casualties per run, protecting anything else always 12.
    """
    edges = clique_edges(range(6)) + clique_edges(range(6, 12))
    edges += [(12, 0), (12, 1), (12, 6), (12, 7)]
    return Graph(13, edges)


@pytest.fixture
def two_k7():
    """14-node two-cluster fixture: K7 + K7 joined by the edge (0, 7)."""
    edges = clique_edges(range(7)) + clique_edges(range(7, 14)) + [(0, 7)]
    return Graph(14, edges)


def bfs_component(g, start):
    """Node set of start's connected component (independent of the package)."""
    seen = {start}
    queue = [start]
    while queue:
        v = queue.pop()
        for w in g.adjacency[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def component_sizes(g):
    sizes = []
    remaining = set(range(g.n))
    while remaining:
        comp = bfs_component(g, next(iter(remaining)))
        sizes.append(len(comp))
        remaining -= comp
    return sizes


def enumerate_shortest_paths(g, s, t):
    """All shortest s-t paths by explicit enumeration over the BFS DAG."""
    from collections import deque

    dist = {s: 0}
    queue = deque([s])
    while queue:
        v = queue.popleft()
        for w in g.adjacency[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    if t not in dist:
        return []
    paths = []

    def extend(path):
        v = path[-1]
        if v == t:
            paths.append(tuple(path))
            return
        for w in g.adjacency[v]:
            if dist.get(w) == dist[v] + 1 and dist[w] <= dist[t]:
                extend(path + [w])

    extend([s])
    return paths


def naive_betweenness(g):
    """Brute-force betweenness: count interior appearances over all shortest
    paths of every unordered pair."""
    scores = np.zeros(g.n)
    for s, t in combinations(range(g.n), 2):
        paths = enumerate_shortest_paths(g, s, t)
        if not paths:
            continue
        for v in range(g.n):
            if v in (s, t):
                continue
            through = sum(1 for p in paths if v in p)
            scores[v] += through / len(paths)
    return scores

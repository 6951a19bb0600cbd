"""Graph plumbing shared by the decision procedures: reachability and tensor products."""

from collections import deque

import networkx as nx

from .shift import SftPresentation


def digraph(X):
    G = nx.DiGraph()
    G.add_nodes_from(X.vertices)
    G.add_edges_from((u, v) for u, _, v in X.edges)
    return G


def reachable(X, v, reverse=False):
    """Vertices reachable from ``v`` (or reaching ``v``), ``v`` included."""
    adj = {}
    for a, _, b in X.edges:
        if reverse:
            a, b = b, a
        adj.setdefault(a, []).append(b)
    seen = {v}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w in adj.get(u, ()):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def strongly_connected(X):
    """Plain BFS test, kept separate from networkx so verifiers stay independent."""
    v = X.vertices[0]
    allv = set(X.vertices)
    return reachable(X, v) == allv and reachable(X, v, reverse=True) == allv


def shortest_path(X, source, target):
    """Edge list of a shortest path ``source -> target`` (may be empty)."""
    if source == target:
        return []
    prev = {source: None}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for e in X.out_edges(u):
            w = e[2]
            if w not in prev:
                prev[w] = e
                if w == target:
                    path = []
                    while w != source:
                        e = prev[w]
                        path.append(e)
                        w = e[0]
                    return path[::-1]
                queue.append(w)
    return None


def tensor_product(X, Y, origin="product"):
    """Synchronized product: vertex pairs, edges move both factors, labels are pairs."""
    by_src = {}
    for u, b, v in Y.edges:
        by_src.setdefault(u, []).append((b, v))
    edges = []
    for u1, a, v1 in X.edges:
        for u2 in Y.vertices:
            for b, v2 in by_src.get(u2, ()):
                edges.append(((u1, u2), (a, b), (v1, v2)))
    return SftPresentation(edges, origin=origin)

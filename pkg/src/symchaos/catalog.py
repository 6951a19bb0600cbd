"""Small named shifts used in examples, tests and the CLI."""

from itertools import product

from .shift import SftPresentation, build_from_forbidden


def full_shift(k=2):
    return build_from_forbidden([str(i) for i in range(k)], [])


def golden_mean():
    return build_from_forbidden(["0", "1"], ["11"])


def cycle_shift(n):
    """Single periodic orbit: vertices ``a, b, ...`` in a ring, labeled by source."""
    names = [chr(ord("a") + i) for i in range(n)]
    edges = [(names[i], names[i], names[(i + 1) % n]) for i in range(n)]
    return SftPresentation(edges, origin="vertex_shift")


def vertex_shift(adjacency, names=None):
    """Vertex shift of a 0/1 matrix; each edge is labeled by its source vertex."""
    n = len(adjacency)
    names = names or [str(i) for i in range(n)]
    edges = [(names[i], names[i], names[j])
             for i, j in product(range(n), repeat=2) if adjacency[i][j]]
    return SftPresentation(edges, alphabet=names, origin="vertex_shift")


def cyclic_blocks(d, labels=2, class_size=1):
    """Irreducible graph of period ``d``.

    Class ``j`` holds ``class_size`` vertices; every vertex of class ``j`` is
    joined to every vertex of class ``j + 1`` by ``labels`` edges carrying
    symbols private to that class.
    """
    edges = []
    for j in range(d):
        for s in range(class_size):
            for t in range(class_size):
                for c in range(labels):
                    sym = f"{chr(ord('a') + j)}{c}"
                    edges.append((f"C{j}.{s}", sym, f"C{(j + 1) % d}.{t}"))
    return SftPresentation(edges, origin="edge_shift")

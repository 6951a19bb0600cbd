"""Graphviz DOT text for presentations, products and cyclic decompositions."""

from .shift import _jsonable


def _name(v):
    if isinstance(v, tuple):
        return "(" + ",".join(_name(t) for t in v) + ")"
    return str(v)


def _quote(s):
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def dot_export(X, title="sft", highlight=()):
    """Deterministic DOT text: vertices and edges in the presentation's sorted order.

    Parallel edges are kept as separate lines so the edge count in the
    DOT file equals ``len(X.edges)``.
    """
    lines = [f"digraph {_quote(title)} {{", "  rankdir=LR;",
             "  node [shape=circle];"]
    hl = set(highlight)
    for v in X.vertices:
        attrs = f"label={_quote(_name(v))}"
        if v in hl:
            attrs += ", style=filled, fillcolor=lightgrey"
        lines.append(f"  {_quote(_name(v))} [{attrs}];")
    for u, a, v in X.edges:
        lab = _name(_jsonable(a)) if not isinstance(a, tuple) else _name(a)
        lines.append(f"  {_quote(_name(u))} -> {_quote(_name(v))} [label={_quote(lab)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"

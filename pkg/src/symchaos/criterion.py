"""Search for a subsystem ``Y`` with ``X x Y`` transitive, and the finite
proximality-density check that backs the resulting chaos verdict.

The search is budgeted.  An unsatisfied report means "nothing found within
budget", never "no such subsystem exists".
"""

import random
from dataclasses import dataclass, field

import networkx as nx

from .decide import is_finite, is_transitive, periodic_points
from .errors import EmptyShift, FiniteShift, NotTransitive
from .graph import digraph, strongly_connected, tensor_product
from .shift import PointRep, SftPresentation, dist, dyadic, fmt_word, fmt_word_str


@dataclass
class Subsystem:
    """Closed invariant subset of ``X``, with its own presentation.

    ``kind`` is one of ``fixed_point``, ``periodic_orbit``, ``scc_subshift``
    or ``whole``.  Orbits are presented by a ring of ``d`` vertices; the
    other kinds are subgraphs of ``X``.
    """

    presentation: SftPresentation
    kind: str
    point: PointRep = None
    label: str = ""

    @property
    def period(self):
        return len(self.point.period) if self.point else None

    def to_dict(self):
        out = {"kind": self.kind, "label": self.label,
               "presentation": self.presentation.to_dict()}
        if self.point is not None:
            out["point"] = self.point.to_dict()
        return out


@dataclass
class CriterionReport:
    satisfied: bool
    witness_Y: Subsystem = None
    certificate: dict = field(default_factory=dict)
    tried: int = 0

    def to_dict(self):
        return {
            "satisfied": self.satisfied,
            "witness_Y": self.witness_Y.to_dict() if self.witness_Y else None,
            "product_transitivity_certificate": self.certificate,
            "subsystems_tried": self.tried,
        }


def orbit_subsystem(p):
    """Ring presentation of the periodic orbit of ``p``."""
    v = p.period
    d = len(v)
    edges = [(("orbit", str(i)), v[i], ("orbit", str((i + 1) % d))) for i in range(d)]
    kind = "fixed_point" if d == 1 else "periodic_orbit"
    return Subsystem(SftPresentation(edges, origin=f"orbit({d})"), kind, p,
                     f"({fmt_word_str(v)})^inf")


def product(X, Y):
    """Product system presented as the synchronized (tensor) graph of ``X`` and ``Y``."""
    if isinstance(Y, Subsystem):
        Y = Y.presentation
    try:
        return tensor_product(X, Y)
    except EmptyShift:
        raise EmptyShift("product has no infinite path") from None


def _subgraph(X, edges, origin):
    return SftPresentation(edges, origin=origin)


def _single_cycle_word(P):
    """Label word of ``P`` when ``P`` is one simple cycle, else ``None``."""
    if len(P.edges) != len(P.vertices):
        return None
    if any(len(P.out_edges(v)) != 1 for v in P.vertices):
        return None
    v0 = P.vertices[0]
    word, v = [], v0
    for _ in range(len(P.vertices)):
        (_, a, v), = P.out_edges(v)
        word.append(a)
    if v != v0:
        return None
    return tuple(word)


def _orbit_key(word):
    p = PointRep.periodic(word)
    per = p.period
    rots = [per[i:] + per[:i] for i in range(len(per))]
    return ("orbit", min(rots, key=lambda r: tuple(map(str, r))))


def enumerate_subsystems(X, budget):
    """Candidate subsystems, cheapest certificates first.

    Fixed points, then periodic orbits by length (up to ``budget``), then
    strongly connected parts of ``X`` with one vertex deleted (at most
    ``budget`` of them), then ``X`` itself.  Duplicates are removed.
    """
    whole_word = _single_cycle_word(X)
    whole_key = _orbit_key(whole_word) if whole_word else ("whole",)
    seen = {whole_key}
    out = []
    for d in range(1, budget + 1):
        for p in periodic_points(X, d):
            key = _orbit_key(p.period)
            if key not in seen:
                seen.add(key)
                out.append(orbit_subsystem(p))
    n_scc = 0
    for v in X.vertices:
        if n_scc >= budget:
            break
        rest = [e for e in X.edges if v not in (e[0], e[2])]
        if not rest:
            continue
        G = nx.DiGraph()
        G.add_edges_from((a, b) for a, _, b in rest)
        for comp in sorted(nx.strongly_connected_components(G),
                           key=lambda c: min(X.index(u) for u in c)):
            sub = [e for e in rest if e[0] in comp and e[2] in comp]
            if not sub:
                continue
            P = _subgraph(X, sub, "subgraph")
            w = _single_cycle_word(P)
            key = _orbit_key(w) if w else ("edges", frozenset(sub))
            if key in seen:
                continue
            seen.add(key)
            if w:
                out.append(orbit_subsystem(PointRep.periodic(w)))
            else:
                out.append(Subsystem(P, "scc_subshift", None,
                                     f"SCC without vertex {v!r}"))
                n_scc += 1
                if n_scc >= budget:
                    break
    out.append(Subsystem(X, "whole", None, "X"))
    return out


def criterion_check(X, budget=6):
    """First subsystem ``Y`` (in enumeration order) with ``X x Y`` transitive."""
    if not is_transitive(X).verdict:
        raise NotTransitive("the criterion needs a transitive X")
    if is_finite(X)[0]:
        raise FiniteShift("the criterion needs X without isolated points")
    candidates = enumerate_subsystems(X, budget)
    for i, Y in enumerate(candidates, 1):
        P = product(X, Y)
        comps = nx.number_strongly_connected_components(digraph(P))
        if comps == 1:
            cert = {"product_vertices": len(P.vertices), "product_edges": len(P.edges),
                    "strongly_connected": True}
            return CriterionReport(True, Y, cert, i)
    return CriterionReport(False, None, {"reason": "no subsystem found within budget"},
                           len(candidates))


def verify_criterion(X, report):
    """Independent recheck of a satisfied report: Y inside X and the product strongly connected."""
    if not report.satisfied:
        return True
    Y = report.witness_Y
    if Y.point is not None and not X.accepts(Y.point):
        return False
    if Y.point is None:
        edges = set(X.edges)
        if not all(e in edges for e in Y.presentation.edges):
            return False
    return strongly_connected(product(X, Y))


# -- proximality density ------------------------------------------------

def route_common(X, patterns, r, horizon, start=0):
    """Least ``m`` in ``[start, horizon]`` and least word ``t`` with ``|t| = r``
    such that every pattern admits a legal word carrying ``t`` at offset ``m``.

    Returns ``(m, t)`` or ``None``.  Once every pattern is exhausted the
    per-pattern vertex sets evolve deterministically, so a repeated state
    proves failure at all later times.
    """
    patterns = [tuple(p) for p in patterns]
    longest = max(len(p) for p in patterns)
    F = [X.full] * len(patterns)
    for m in range(start):
        F = [X.step(S, p[m] if m < len(p) else None) for S, p in zip(F, patterns)]
    seen = set()
    for m in range(start, horizon + 1):
        if m >= longest:
            state = tuple(F)
            if state in seen:
                return None
            seen.add(state)
        if all(F):
            t = _common_word(X, F, [p[m:] for p in patterns], r)
            if t is not None:
                return m, t
        F = [X.step(S, p[m] if m < len(p) else None) for S, p in zip(F, patterns)]
    return None


def _common_word(X, F, rests, r):
    length = max([r] + [len(q) for q in rests])
    padded = [q + (None,) * (length - len(q)) for q in rests]
    # backward feasibility per pattern, target positions treated as free
    backs = []
    for q in padded:
        b = [0] * (length + 1)
        b[length] = X.full
        for j in range(length - 1, -1, -1):
            b[j] = X.step_back(b[j + 1], q[j])
        backs.append(b)
    if any(not (S & b[0]) for S, b in zip(F, backs)):
        return None

    def dfs(j, sets, word):
        if j == r:
            return word
        for a in X.alphabet:
            nxt = []
            for S, q, b in zip(sets, padded, backs):
                if q[j] is not None and q[j] != a:
                    break
                T = X.step(S, a) & b[j + 1]
                if not T:
                    break
                nxt.append(T)
            else:
                found = dfs(j + 1, nxt, word + (a,))
                if found is not None:
                    return found
        return None

    return dfs(0, [S & b[0] for S, b in zip(F, backs)], ())


def place(pattern, word, offset):
    """``pattern`` with ``word`` written at ``offset`` (assumed compatible)."""
    n = max(len(pattern), offset + len(word))
    out = list(pattern) + [None] * (n - len(pattern))
    for i, a in enumerate(word):
        out[offset + i] = a
    return tuple(out)


def prox_witness(X, words, e, horizon):
    """Points ``x_i`` in ``[words[i]]`` and a time ``m`` with ``diam {sigma^m x_i} < 2**-e``."""
    found = route_common(X, words, e + 1, horizon)
    if found is None:
        return None
    m, t = found
    points = []
    for w in words:
        word, _ = X.realize(place(w, t, m))
        points.append(X.completion(word))
    return m, t, points


def diameter(points):
    return max((dist(p, q) for p in points for q in points), default=0)


def prox_density_check(X, n, e, horizon=1 << 14, samples=50, seed=0, max_len=3,
                       tuples=None):
    """Sampled finite shadow of density of proximal ``n``-tuples at scale ``2**-e``.

    Samples ``samples`` tuples of cylinders (word lengths ``1..max_len``)
    with a seeded RNG, or uses the explicit ``tuples``, and looks for a
    witness for each.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    rng = random.Random(seed)
    eps = dyadic(e)
    if tuples is None:
        langs = {L: X.language(L) for L in range(1, max_len + 1)}
        tuples = [[rng.choice(langs[rng.randint(1, max_len)]) for _ in range(n)]
                  for _ in range(samples)]
    tuples = [[tuple(u) for u in tup] for tup in tuples]
    samples = len(tuples)
    results = []
    for k, tup in enumerate(tuples):
        if len(tup) != n:
            raise ValueError(f"tuple {k} has {len(tup)} cylinders, expected {n}")
        w = prox_witness(X, tup, e, horizon)
        entry = {"sample": k, "cylinders": [fmt_word(u) for u in tup]}
        if w is None:
            entry["witnessed"] = False
        else:
            m, t, pts = w
            d = diameter([p.shift(m) for p in pts])
            entry.update(witnessed=d < eps, m=m, common=fmt_word(t),
                         points=[p.to_dict() for p in pts], diam=str(d))
        results.append(entry)
    hits = sum(r["witnessed"] for r in results)
    return {"n": n, "eps_exponent": e, "horizon": horizon, "seed": seed,
            "density": hits / samples if samples else 1.0, "witnessed": hits,
            "samples": results}

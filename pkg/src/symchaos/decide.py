"""Decision procedures for the dynamical hypotheses used by the chaos criteria.

Every positive verdict carries a certificate that :func:`check_report`
re-verifies with plain breadth-first search, independently of the
networkx-based computation that produced it.
"""

from collections import deque
from dataclasses import dataclass, field
from math import gcd

import networkx as nx

from .errors import NotTransitive
from .graph import digraph, reachable, shortest_path, strongly_connected, tensor_product
from .shift import PointRep, _primitive_root, fmt_word, fmt_word_str, word_key


@dataclass
class DecisionReport:
    property: str
    verdict: bool
    certificate: dict = field(default_factory=dict)

    def to_dict(self):
        return {"property": self.property, "verdict": "yes" if self.verdict else "no",
                "certificate": self.certificate}


@dataclass(frozen=True)
class HittingSet:
    """``N(U, V) = {1 <= n <= horizon : U and sigma**-n V meet}``.

    ``exact_tail = (n0, p)`` certifies that membership is periodic with
    period ``p`` from ``n0`` on, for all ``n``, not just up to the horizon.
    """

    members: tuple
    horizon: int
    exact_tail: tuple = None

    def __contains__(self, n):
        if n <= self.horizon:
            return n in self._set
        if self.exact_tail is None:
            raise ValueError(f"{n} is beyond the horizon and no exact tail is known")
        n0, p = self.exact_tail
        return (n0 + (n - n0) % p) in self._set

    @property
    def _set(self):
        s = self.__dict__.get("_cached")
        if s is None:
            s = frozenset(self.members)
            object.__setattr__(self, "_cached", s)
        return s

    def to_dict(self):
        return {"members": list(self.members), "horizon": self.horizon,
                "exact_tail": list(self.exact_tail) if self.exact_tail else None}


def _jsonv(v):
    return list(v) if isinstance(v, tuple) else v


def is_transitive(X):
    """Transitivity of the presented shift, decided as strong connectivity."""
    sccs = list(nx.strongly_connected_components(digraph(X)))
    if len(sccs) == 1:
        return DecisionReport("transitive", True, {"scc": [_jsonv(v) for v in X.vertices]})
    allv = set(X.vertices)
    u = X.vertices[0]
    fwd = reachable(X, u)
    if fwd != allv:
        pair = (u, min(allv - fwd, key=X.index))
    else:
        back = reachable(X, u, reverse=True)
        pair = (min(allv - back, key=X.index), u)
    comps = sorted((sorted(c, key=X.index) for c in sccs), key=lambda c: X.index(c[0]))
    return DecisionReport("transitive", False, {
        "unreachable": [_jsonv(pair[0]), _jsonv(pair[1])],
        "components": [[_jsonv(v) for v in c] for c in comps],
    })


def _levels(X, root):
    level = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for _, _, v in X.out_edges(u):
            if v not in level:
                level[v] = level[u] + 1
                queue.append(v)
    return level


def _closed_walks(X, root):
    """Closed walks through ``root`` whose lengths generate the period."""
    walks = {}
    for u, a, v in X.edges:
        to_u = shortest_path(X, root, u)
        back = shortest_path(X, v, root)
        for w in (to_u + [(u, a, v)] + back, shortest_path(X, root, v) + back):
            if w:
                walks.setdefault(len(w), w)
    return [walks[k] for k in sorted(walks)]


def _walk_dict(w):
    return {"vertices": [_jsonv(e[0]) for e in w] + [_jsonv(w[-1][2])],
            "labels": fmt_word(e[1] for e in w)}


def period(X):
    """Cycle-length gcd of an irreducible presentation, with certificate.

    Returns ``(d, certificate)``.  The certificate holds a residue class for
    each vertex (every edge advances the class by one mod ``d``) and closed
    walks whose lengths have gcd ``d``.
    """
    if not is_transitive(X).verdict:
        raise NotTransitive("period is defined for irreducible presentations only")
    root = X.vertices[0]
    level = _levels(X, root)
    d = 0
    for u, _, v in X.edges:
        d = gcd(d, level[u] + 1 - level[v])
    d = abs(d)
    walks = _closed_walks(X, root)
    chosen = None
    for i, w in enumerate(walks):
        if len(w) == d:
            chosen = [w]
            break
        for w2 in walks[i + 1:]:
            if gcd(len(w), len(w2)) == d:
                chosen = [w, w2]
                break
        if chosen:
            break
    if chosen is None:
        g, chosen = 0, []
        for w in walks:
            if gcd(g, len(w)) != g:
                chosen.append(w)
                g = gcd(g, len(w))
    cert = {
        "classes": {str(_jsonv(v)): level[v] % d for v in X.vertices},
        "cycles": [_walk_dict(w) for w in chosen],
        "cycle_lengths": [len(w) for w in chosen],
    }
    return d, cert


def is_totally_transitive(X):
    t = is_transitive(X)
    if not t.verdict:
        return DecisionReport("totally_transitive", False, {"transitive": t.certificate})
    d, cert = period(X)
    return DecisionReport("totally_transitive", d == 1, {
        "period": d, "period_certificate": cert,
        "note": "for shifts of finite type this coincides with mixing and weak mixing",
    })


def is_weakly_mixing(X):
    """Decided on the product graph of X with itself, cross-checked against aperiodicity."""
    P = tensor_product(X, X)
    comps = nx.number_strongly_connected_components(digraph(P))
    verdict = comps == 1
    t = is_transitive(X).verdict
    aperiodic = t and period(X)[0] == 1
    return DecisionReport("weakly_mixing", verdict, {
        "product_vertices": len(P.vertices),
        "product_components": comps,
        "transitive_and_aperiodic": aperiodic,
        "cross_check": verdict == aperiodic,
    })


def _is_least_rotation(w):
    k = word_key(w)
    return all(k <= word_key(w[i:] + w[:i]) for i in range(1, len(w)))


def periodic_points(X, d):
    """One representative (least rotation) per orbit of least period exactly ``d``."""
    out = []
    for w in X.language(d):
        if _primitive_root(w) != w or not _is_least_rotation(w):
            continue
        p = PointRep.periodic(w)
        if X.accepts(p):
            out.append(p)
    return out


def fixed_points(X):
    return periodic_points(X, 1)


def orbit(p):
    """All points of the periodic orbit through ``p`` (``p`` purely periodic)."""
    return [p.shift(i) for i in range(len(p.period))]


def _dfa(X):
    start = X.full
    states = {start}
    edges = []
    stack = [start]
    while stack:
        S = stack.pop()
        for a in X.alphabet:
            T = X.step(S, a)
            if T:
                edges.append((S, a, T))
                if T not in states:
                    states.add(T)
                    stack.append(T)
    return states, edges


def is_finite(X):
    """Whether the shift has finitely many points.

    Counts words through the determinized presentation: the word count stays
    bounded iff every cyclic component of the determinized graph is a single
    cycle and no cyclic component reaches another.
    """
    states, edges = _dfa(X)
    G = nx.MultiDiGraph()
    G.add_nodes_from(states)
    G.add_edges_from((S, T) for S, _, T in edges)
    C = nx.condensation(nx.DiGraph(G))
    members = C.graph["mapping"]
    internal = {}
    for S, _, T in edges:
        if members[S] == members[T]:
            internal[members[S]] = internal.get(members[S], 0) + 1
    cyclic = set(internal)
    for c in cyclic:
        if internal[c] > len(C.nodes[c]["members"]):
            return False, {"reason": "a strongly connected part carries two distinct cycles"}
        if cyclic & nx.descendants(C, c):
            return False, {"reason": "one cycle feeds into another"}
    return True, {"reason": "every word continues along a unique cycle eventually"}


def periodic_through(X, w):
    """A periodic point whose period begins with the word ``w``, or ``None``."""
    w = tuple(w)
    for s in X.vertices:
        E = X.read(1 << X.index(s), w)
        if not E:
            continue
        e = X.members(E)[0]
        back = shortest_path(X, e, s)
        if back is None:
            continue
        if not w and not back:
            continue
        return PointRep.periodic(w + tuple(a for _, a, _ in back))
    return None


def dense_periodic_points(X, probe=2):
    """Devaney verdict: transitive, infinite, periodic points dense."""
    t = is_transitive(X).verdict
    finite, why = is_finite(X)
    through = {}
    if t:
        for L in range(1, probe + 1):
            for w in X.language(L):
                through[fmt_word_str(w)] = periodic_through(X, w).to_dict()
    verdict = t and not finite
    cert = {"dense_periodic_points": t, "infinite": not finite, "finiteness": why,
            "periodic_through": through}
    if t and finite:
        cert["note"] = "not Devaney chaotic (finite X)"
    return DecisionReport("devaney", verdict, cert)


def overlay(p, q, offset):
    """Pattern agreeing with ``p`` at 0 and ``q`` at ``offset``; ``None`` on conflict."""
    n = max(len(p), offset + len(q))
    out = list(p) + [None] * (n - len(p))
    for i, a in enumerate(q):
        if a is None:
            continue
        j = offset + i
        if out[j] is None:
            out[j] = a
        elif out[j] != a:
            return None
    return tuple(out)


def hitting_set(X, U, V, H):
    """Exact ``N([U], [V])`` up to ``H``; ``U`` and ``V`` may contain ``None`` wildcards.

    For offsets at least ``|U|`` the vertex set reachable after ``U`` and a free
    gap evolves deterministically, so once it repeats membership is
    periodic and the tail is recorded exactly.
    """
    U, V = tuple(U), tuple(V)
    if H < 1:
        raise ValueError("horizon must be >= 1")
    lu = len(U)
    members = []
    for n in range(1, min(H, lu - 1) + 1):
        pat = overlay(U, V, n)
        if pat is not None and X.read(X.full, pat):
            members.append(n)
    n = max(lu, 1)
    F = X.read(X.full, U)
    for _ in range(n - lu):
        F = X.step(F, None)
    seen = {}
    tail = None
    hits = {}
    while n <= H:
        if F in seen:
            n0 = seen[F]
            tail = (n0, n - n0)
            break
        seen[F] = n
        hits[n] = bool(F) and bool(X.read(F, V))
        if hits[n]:
            members.append(n)
        F = X.step(F, None)
        n += 1
    if tail is not None:
        n0, p = tail
        for m in range(n, H + 1):
            if hits[n0 + (m - n0) % p]:
                members.append(m)
    return HittingSet(tuple(members), H, tail)


def filter_law_check(X, U1, U2, n, H):
    """Check ``N(U3, U3)`` is inside ``N(U1, U1) & N(U2, U2)`` for ``U3 = U1 & sigma**-n U2``.

    Returns True, or the first offending time.
    """
    U3 = overlay(tuple(U1), tuple(U2), n)
    if U3 is None or not X.read(X.full, U3):
        raise ValueError("U1 and sigma^-n U2 do not meet")
    N1 = hitting_set(X, U1, U1, H)
    N2 = hitting_set(X, U2, U2, H)
    for m in hitting_set(X, U3, U3, H).members:
        if m not in N1 or m not in N2:
            return m
    return True


def analyze(X, probe=2):
    """All basic decisions as a list of reports."""
    reports = [is_transitive(X)]
    if reports[0].verdict:
        d, cert = period(X)
        reports.append(DecisionReport("period", True, {"period": d, **cert}))
    reports.append(is_totally_transitive(X))
    reports.append(is_weakly_mixing(X))
    reports.append(DecisionReport("fixed_points", bool(fixed_points(X)),
                                  {"points": [p.to_dict() for p in fixed_points(X)]}))
    reports.append(dense_periodic_points(X, probe))
    return reports


# -- independent verification --------------------------------------------

def check_report(X, report):
    """Re-verify a report's certificate without reusing the deciding code."""
    c = report.certificate
    prop = report.property
    if prop == "transitive":
        if report.verdict:
            return strongly_connected(X)
        u, v = (_atom_back(x) for x in c["unreachable"])
        return v not in reachable(X, u)
    if prop == "period":
        return _check_period(X, c["period"], c)
    if prop == "totally_transitive":
        if "period" not in c:
            return not report.verdict and not strongly_connected(X)
        ok = _check_period(X, c["period"], c["period_certificate"])
        return ok and report.verdict == (c["period"] == 1)
    if prop == "weakly_mixing":
        return report.verdict == strongly_connected(tensor_product(X, X))
    if prop == "fixed_points":
        return all(X.accepts(PointRep(_w(p["prefix"]), _w(p["period"])))
                   and len(_w(p["period"])) == 1 for p in c["points"])
    if prop == "devaney":
        if not report.verdict:
            return True
        return strongly_connected(X) and c["infinite"]
    raise ValueError(f"unknown property {prop}")


def _w(x):
    return tuple(x) if isinstance(x, str) else tuple(_atom_back(a) for a in x)


def _atom_back(x):
    return tuple(_atom_back(t) for t in x) if isinstance(x, list) else x


def _check_period(X, d, cert):
    classes = cert["classes"]
    for u, _, v in X.edges:
        if (classes[str(_jsonv(u))] + 1) % d != classes[str(_jsonv(v))] % d:
            return False
    g = 0
    edges = set(X.edges)
    for cyc in cert["cycles"]:
        vs = [_atom_back(v) for v in cyc["vertices"]]
        labels = _w(cyc["labels"])
        if vs[0] != vs[-1] or len(labels) != len(vs) - 1:
            return False
        if any((vs[i], labels[i], vs[i + 1]) not in edges for i in range(len(labels))):
            return False
        g = gcd(g, len(labels))
    return g == d

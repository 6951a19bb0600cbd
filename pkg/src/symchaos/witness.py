"""Explicit Li-Yorke pairs and finite Kronecker-time searches.

A pair is built around a periodic word ``c`` read along a closed walk at a
vertex ``v`` (the anchor) and two distinct closed walks ``D``, ``D'`` at the
same vertex and of the same length::

    x = c^{q_1} D  c^{q_2} D  ... c^{q_J} D  c^inf
    y = c^{q_1} D' c^{q_2} D' ... c^{q_J} D' c^inf

with ``q_j`` doubling.  The agree blocks make the pair close at every block
start, the ``D``/``D'`` blocks push it apart, and the aligned block structure
gives common return times for ``x`` and ``y``.  Everything is a closed walk
at ``v``, so both points are legal by construction (and rechecked).

Beyond the last block the tails coincide and the pair becomes asymptotic.
The certificate only speaks about times up to its horizon.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .criterion import criterion_check
from .decide import fixed_points, is_finite, is_transitive, periodic_points
from .errors import FiniteShift, HypothesisUnmet, NotTransitive
from .shift import PointRep, dist, dyadic, fmt_word


@dataclass
class PairWitness:
    x: PointRep
    y: PointRep
    prox_times: list
    apart_times: list
    recur_times: list
    horizon: int
    anchor: tuple = ()
    blocks: tuple = ()
    info: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "x": self.x.to_dict(), "y": self.y.to_dict(), "horizon": self.horizon,
            "prox_times": [[m, str(d)] for m, d in self.prox_times],
            "apart_times": [[m, str(d)] for m, d in self.apart_times],
            "recur_times": [[k, str(d)] for k, d in self.recur_times],
            "anchor": fmt_word(self.anchor), "blocks": [fmt_word(b) for b in self.blocks],
            **self.info,
        }


def _closed_words(X, v, length, limit):
    """Lexicographically first label words of closed walks ``v -> v``."""
    home = X.mask([v])
    # back[j]: vertices from which v is reachable in exactly length-j steps
    back = [0] * (length + 1)
    back[length] = home
    for j in range(length - 1, -1, -1):
        back[j] = X.step_back(back[j + 1], None)
    if not home & back[0]:
        return []
    out = []
    stack = [(home, ())]
    while stack and len(out) < limit:
        S, w = stack.pop()
        if len(w) == length:
            out.append(w)
            continue
        for a in reversed(X.alphabet):
            T = X.step(S, a) & back[len(w) + 1]
            if T:
                stack.append((T, w + (a,)))
    return out


def _anchor(X, budget=6):
    """Periodic word ``c`` and a vertex carrying a closed walk labeled ``c``."""
    if not is_transitive(X).verdict:
        raise HypothesisUnmet("pairs need a transitive X")
    if is_finite(X)[0]:
        raise HypothesisUnmet("a finite shift has no Li-Yorke pairs")
    pts = fixed_points(X)
    if not pts:
        try:
            rep = criterion_check(X, budget)
        except (NotTransitive, FiniteShift) as exc:  # pragma: no cover - checked above
            raise HypothesisUnmet(str(exc)) from None
        if not rep.satisfied:
            raise HypothesisUnmet("no fixed point and no criterion subsystem within budget")
        Y = rep.witness_Y
        if Y.point is not None:
            pts = [Y.point]
        else:
            pts = next(periodic_points(X, d) for d in range(1, len(X.vertices) + 1)
                       if periodic_points(X, d))
    c0 = pts[0].period
    for j in range(1, len(X.vertices) + 1):
        c = c0 * j
        for v in X.vertices:
            m = X.mask([v])
            if X.read(m, c) & m:
                return c, v
    raise HypothesisUnmet("periodic point is not carried by a closed walk")  # pragma: no cover


def _distinct_blocks(X, v, max_len):
    for L in range(1, max_len + 1):
        words = _closed_words(X, v, L, 2)
        if len(words) == 2:
            return words
    raise HypothesisUnmet("anchor vertex has a single return word")


def _next_diff(diffs, m):
    # diffs is sorted; least diff position >= m
    lo, hi = 0, len(diffs)
    while lo < hi:
        mid = (lo + hi) // 2
        if diffs[mid] < m:
            lo = mid + 1
        else:
            hi = mid
    return diffs[lo] if lo < len(diffs) else None


def make_scrambled_pair(X, e_prox, delta=Fraction(1), horizon=4096, index=0, budget=6):
    """Build one certified Li-Yorke pair.

    Parameters
    ----------
    X : SftPresentation
    e_prox : requested proximality exponent; some listed time has distance
        ``< 2**-e_prox``
    delta : requested separation (a Fraction in ``(0, 1]``)
    horizon : last time covered by the certificate
    index : selects one of a family of distinct pairs (block lengths grow
        with it)

    Raises
    ------
    HypothesisUnmet
        if X is not transitive, is finite, or offers no anchor.
    """
    delta = Fraction(delta)
    if not 0 < delta <= 1:
        raise ValueError("delta must lie in (0, 1]")
    c, v = _anchor(X, budget)
    D, D2 = _distinct_blocks(X, v, 4 * len(X.vertices) + 4)
    q = -(-(e_prox + 1) // len(c)) + index
    xs, ys, agree_starts = [], [], []
    pos = 0
    while True:
        block = c * q
        if agree_starts and pos + len(block) + len(D) > horizon:
            break
        agree_starts.append((pos, q))
        xs.extend(block + D)
        ys.extend(block + D2)
        pos += len(block) + len(D)
        q *= 2
    x, y = PointRep(tuple(xs), c), PointRep(tuple(ys), c)
    if not (X.accepts(x) and X.accepts(y)):  # pragma: no cover - closed walks
        raise HypothesisUnmet("glued pair is not legal")

    diffs = [i for i in range(len(xs)) if xs[i] != ys[i]]
    prox = []
    for m, _ in agree_starts:
        if m <= horizon:
            prox.append((m, dist(x.shift(m), y.shift(m))))
    apart = []
    for m in range(horizon + 1):
        nd = _next_diff(diffs, m)
        if nd is None:
            break
        d = dyadic(nd - m)
        if d >= delta:
            apart.append((m, d))
    recur = []
    q1 = agree_starts[0][1]
    for start, qj in agree_starts[1:]:
        k = start + (qj - q1) * len(c)
        if k <= horizon:
            recur.append((k, max(dist(x.shift(k), x), dist(y.shift(k), y))))
    info = {"requested": {"e_prox": e_prox, "delta": str(delta)},
            "achieved": {"min_prox": str(min(d for _, d in prox)),
                         "max_apart": str(max((d for _, d in apart), default=0))},
            "anchor_vertex": str(v), "index": index}
    return PairWitness(x, y, prox, apart, recur, horizon, c, (D, D2), info)


def scrambled_pairs(X, count, e_prox, delta=Fraction(1), horizon=4096):
    return [make_scrambled_pair(X, e_prox, delta, horizon, index=i) for i in range(count)]


def _recomputes(w):
    x, y = w.x, w.y
    if any(dist(x.shift(m), y.shift(m)) != d for m, d in w.prox_times + w.apart_times):
        return False
    return all(max(dist(x.shift(k), x), dist(y.shift(k), y)) == d for k, d in w.recur_times)


def liyorke_check(w, e_prox, delta, X=None):
    """Finite Li-Yorke certificate check, recomputing every distance.

    Passes iff ``x != y`` (and both lie in ``X`` when given), some listed
    proximal time has distance ``< 2**-e_prox``, some listed apart time has
    distance ``>= delta``, and the last apart time comes after every listed
    proximal time.
    """
    if w.x == w.y or not w.prox_times or not w.apart_times:
        return False
    if X is not None and not (X.accepts(w.x) and X.accepts(w.y)):
        return False
    if not _recomputes(w):
        return False
    if any(m > w.horizon for m, _ in w.prox_times + w.apart_times):
        return False
    if min(d for _, d in w.prox_times) >= dyadic(e_prox):
        return False
    far = [m for m, d in w.apart_times if d >= delta]
    return bool(far) and max(far) > max(m for m, _ in w.prox_times)


def strong_liyorke_check(w, eps):
    """Proximal at some listed time, jointly recurrent at some listed time and
    apart by at least ``eps`` after the first proximal time (all ``< eps`` /
    ``>= eps`` exact)."""
    eps = Fraction(eps)
    if w.x == w.y or not _recomputes(w):
        return False
    close = [m for m, d in w.prox_times if d < eps]
    if not close:
        return False
    if not any(d < eps for _, d in w.recur_times):
        return False
    first = min(close)
    return any(m > first and d >= eps for m, d in w.apart_times)


def kronecker_times(X, K, h, eps, horizon, Y=None):
    """Least ``1 <= k <= horizon`` with ``d(sigma**k x, h(x)) < eps`` for all ``x`` in ``K``.

    ``h`` maps each point of ``K`` to its target (a dict or a list aligned
    with ``K``).  Returns ``None`` when no such ``k`` exists up to the horizon,
    or when the orbit tuple has started repeating without a hit, which rules
    out every later time as well.
    """
    eps = Fraction(eps)
    K = list(K)
    targets = [h[x] for x in K] if isinstance(h, dict) else list(h)
    if len(targets) != len(K):
        raise ValueError("h must give one target per point of K")
    if len(set(K)) != len(K):
        raise ValueError("points of K must be pairwise distinct")
    for p in K + targets:
        if not X.accepts(p):
            raise ValueError(f"point {p} is not in X")
    if Y is not None and not all(Y.accepts(t) for t in targets):
        raise ValueError("targets must lie in the subsystem Y")
    pre = max(len(p.prefix) for p in K)
    cyc = lcm(*(len(p.period) for p in K))
    for k in range(1, horizon + 1):
        if all(dist(p.shift(k), t) < eps for p, t in zip(K, targets)):
            return k
        if k > pre + cyc:
            return None
    return None


"""Finite-depth nested cylinder families for uniformly rigid / proximal Cantor sets.

Level ``n`` of a certificate is a family of cylinder words ``V_{n,1..a_n}``
together with a return time ``k_n`` and, optionally, a proximality time
``t_n``.  The family is built from its parent by

1. splitting every parent word into its two lexicographically least
   incomparable extensions, then adding (at most ``n``) extra words so that
   the first ``n`` points of a fixed dense sequence lie within ``1/n`` of the
   family (agreement on ``r = floor(log2 n) + 1`` symbols);
2. picking ``k_n``, the least admissible time in ``S`` from ``n`` on that lies
   in every ``N([b], [b])`` and lets each child be refined so that
   ``sigma**k_n`` maps it into its parent;
3. optionally routing every word into one common cylinder of diameter
   below ``1/n`` at the least time ``t_n``.

All checks are exact word arithmetic; see :func:`verify_stage`.  The output
is ``N`` verified levels plus eventually periodic leaf representatives, a
finite shadow of the Cantor sets, never the sets themselves.
"""

import ast
from dataclasses import dataclass, field
from fractions import Fraction

from .criterion import place, prox_density_check, route_common
from .decide import hitting_set, is_finite, is_transitive
from .errors import ConstructionStuck, FiniteShift, NotTransitive
from .shift import (cylinder_diam, dist, fmt_word, is_prefix_comparable, parse_word,
                    shift_image)

CONDITIONS = ("legal", "count", "diameter", "disjoint", "nested", "dense", "rigid",
              "proximal", "orbit_dense")


_ALLOWED = (ast.Expression, ast.BoolOp, ast.BinOp, ast.UnaryOp, ast.Compare, ast.Name,
            ast.Load, ast.Constant, ast.And, ast.Or, ast.Not, ast.Add, ast.Sub, ast.Mult,
            ast.Mod, ast.FloorDiv, ast.USub, ast.Eq, ast.NotEq, ast.Lt, ast.LtE, ast.Gt,
            ast.GtE)


class TimeSet:
    """Set ``S`` of admissible return times, given as an expression in ``k``.

    ``TimeSet("k%2==0")`` is the even times; ``TimeSet()`` is every positive
    integer.  Whether ``S`` is large enough for the construction to go
    through is the caller's business.
    """

    def __init__(self, expr=None):
        self.expr = expr
        self._code = None
        if expr:
            tree = ast.parse(expr, mode="eval")
            for node in ast.walk(tree):
                if not isinstance(node, _ALLOWED):
                    raise ValueError(f"unsupported syntax in S: {type(node).__name__}")
                if isinstance(node, ast.Name) and node.id != "k":
                    raise ValueError(f"S may only mention k, not {node.id!r}")
                if isinstance(node, ast.Constant) and not isinstance(node.value, int):
                    raise ValueError("S may only use integer constants")
            self._code = compile(tree, "<S>", "eval")

    def __call__(self, k):
        if self._code is None:
            return k >= 1
        return k >= 1 and bool(eval(self._code, {"__builtins__": {}}, {"k": k}))

    def __repr__(self):
        return f"TimeSet({self.expr!r})"


@dataclass
class StageFamily:
    n: int
    words: tuple
    base_words: tuple
    k: int
    t: int = None
    n_children: int = 0

    @property
    def a_n(self):
        return len(self.words)

    def to_dict(self):
        return {"n": self.n, "a_n": self.a_n, "words": [fmt_word(w) for w in self.words],
                "base_words": [fmt_word(w) for w in self.base_words],
                "k_n": self.k, "t_n": self.t, "children": self.n_children}

    @classmethod
    def from_dict(cls, X, d):
        words = tuple(parse_word(X, w) for w in d["words"])
        base = tuple(parse_word(X, w) for w in d.get("base_words", d["words"]))
        return cls(d["n"], words, base, d["k_n"], d.get("t_n"), d.get("children", 0))


@dataclass
class ConstructionCertificate:
    stages: list
    S: str = None
    proximal: bool = False
    transitive_leaves: bool = False
    leaf_points: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def N(self):
        return len(self.stages)

    def parent_words(self, n):
        return [()] if n == 1 else list(self.stages[n - 2].words)

    def to_dict(self):
        return {
            "N": self.N, "S": self.S, "proximal": self.proximal,
            "transitive_leaves": self.transitive_leaves,
            "stages": [s.to_dict() for s in self.stages],
            "leaf_points": [p.to_dict() for p in self.leaf_points],
            "checks": self.checks, "notes": self.notes,
        }

    @classmethod
    def from_dict(cls, X, d):
        stages = [StageFamily.from_dict(X, s) for s in d["stages"]]
        return cls(stages, d.get("S"), d.get("proximal", False),
                   d.get("transitive_leaves", False), [], d.get("checks", []),
                   d.get("notes", []))


def _radius_len(n):
    # least L with 2**-L < 1/n
    return n.bit_length()


def dense_sequence(X, n, max_len=64):
    """First ``n`` points of a fixed dense sequence of X.

    Canonical completions of the legal words, taken by length and then
    lexicographically, with repeats dropped.  Every cylinder contains the
    completion of its own word, so the full sequence is dense.
    """
    out, seen = [], set()
    for L in range(1, max_len + 1):
        for u in X.language(L):
            p = X.completion(u)
            if p not in seen:
                seen.add(p)
                out.append(p)
                if len(out) == n:
                    return out
    return out


def _near(word, y, r):
    """Whether ``[word]`` holds a point agreeing with ``y`` on ``r`` symbols."""
    return is_prefix_comparable(word, y.word(r))


def _two_children(X, parent, r, level):
    if parent and cylinder_diam(X, parent) == 0:
        raise ConstructionStuck(level, f"cylinder [{fmt_word(parent)}] is a single point")
    lo = max(len(parent) + 1, r)
    for L in range(lo, lo + (1 << len(X.vertices)) + 2):
        exts = X.extensions(parent, L, limit=2)
        if len(exts) == 2:
            return exts
    raise ConstructionStuck(level, f"cylinder [{fmt_word(parent)}] does not branch")


def _cover(X, word, factors):
    """Extend ``word`` so that each of ``factors`` occurs in it."""
    for f in factors:
        if any(word[i:i + len(f)] == f for i in range(len(word) - len(f) + 1)):
            continue
        for gap in range(0, len(X.vertices) + len(f) + 2):
            got = X.realize(word + (None,) * gap + f)
            if got is not None:
                word = got[0]
                break
        else:  # pragma: no cover - transitivity guarantees a connector
            raise ConstructionStuck(0, "no connector found")
    return word


def build_stages(X, N, proximal=False, transitive_leaves=False, S=None, horizon=4096):
    """Build ``N`` levels of the nested family and verify each one.

    Parameters
    ----------
    X : SftPresentation, transitive and infinite
    N : number of levels (``0`` gives an empty certificate)
    proximal : also route each level into a common small cylinder
    transitive_leaves : make every word contain each legal word of length
        ``r`` as a factor, so the orbit of any point of a level-``n`` cell
        passes within ``1/n`` of every point of X
    S : :class:`TimeSet` of admissible return times (default: all)
    horizon : search bound for ``k_n`` and ``t_n``

    Raises
    ------
    ConstructionStuck
        if a time cannot be found within the horizon.
    """
    S = S if isinstance(S, TimeSet) else TimeSet(S)
    if not is_transitive(X).verdict:
        raise NotTransitive("construction needs a transitive X")
    if is_finite(X)[0]:
        raise FiniteShift("construction needs X without isolated points")
    cert = ConstructionCertificate([], S.expr, proximal, transitive_leaves)
    if N <= 0:
        return cert
    if proximal:
        rep = prox_density_check(X, 2, 2, horizon=horizon, samples=8, seed=0)
        if rep["witnessed"] < len(rep["samples"]):
            raise ConstructionStuck(0, "sampled pairs of cylinders cannot be made proximal")
    parents = [()]
    for n in range(1, N + 1):
        r = _radius_len(n)
        children = []
        for p in parents:
            children.extend(_two_children(X, p, r, n))
        # condition (5): the first n dense points lie within 1/n of the family
        extras = []
        for y in dense_sequence(X, n):
            if not any(_near(c, y, r) for c in children + extras):
                extras.append(y.word(r))
        base = children + extras

        k = None
        for cand in range(max(n, 1), horizon + 1):
            if not S(cand):
                continue
            if not all(X.read(X.full, place(b, b, cand)) for b in base
                       if _compatible(b, b, cand)):
                continue
            if not all(_compatible(b, b, cand) for b in base):
                continue
            if all(X.realize(place(c, parents[i // 2], cand)) is not None
                   and _compatible(c, parents[i // 2], cand)
                   for i, c in enumerate(children)):
                k = cand
                break
        if k is None:
            raise ConstructionStuck(n, "no return time in S within the horizon")
        words = [X.realize(place(c, parents[i // 2], k))[0] for i, c in enumerate(children)]
        words += extras

        if transitive_leaves:
            factors = X.language(r)
            words = [_cover(X, w, factors) for w in words]

        t = None
        if proximal:
            found = route_common(X, words, r, horizon, start=1)
            if found is None:
                raise ConstructionStuck(n, "no common routing time within the horizon")
            t, target = found
            words = [X.realize(place(w, target, t))[0] for w in words]

        cert.stages.append(StageFamily(n, tuple(words), tuple(base), k, t, len(children)))
        parents = words

    cert.leaf_points = leaf_points(X, cert)
    cert.checks = [verify_stage(X, s, cert.parent_words(s.n), S=S, require_t=proximal,
                                check_orbits=transitive_leaves)
                   for s in cert.stages]
    if transitive_leaves:
        cert.notes.append("orbit-density holds for every point of each level cell; the "
                          "eventually periodic leaf representatives are not transitive points")
    return cert


def _compatible(p, q, offset):
    for i, a in enumerate(q):
        j = offset + i
        if j < len(p) and p[j] is not None and a is not None and p[j] != a:
            return False
    return True


def leaf_points(X, cert):
    """Canonical point of every level-``N`` cylinder."""
    if not cert.stages:
        return []
    return [X.completion(w) for w in cert.stages[-1].words]


def verify_stage(X, stage, parent_words, S=None, require_t=False, check_orbits=False):
    """Check one level against its parent; returns ``{condition: bool}``.

    Uses only word comparisons, exact cylinder diameters, distances and
    hitting-set membership, nothing from the builder.
    """
    S = S if isinstance(S, TimeSet) else TimeSet(S)
    n = stage.n
    words = [tuple(w) for w in stage.words]
    base = [tuple(w) for w in stage.base_words]
    parents = [tuple(p) for p in parent_words]
    bound = Fraction(1, n)
    res = {}
    res["legal"] = bool(words) and all(X.is_legal(w) for w in words)
    if not res["legal"]:
        return {c: False for c in CONDITIONS}
    a_prev = len(parents)
    res["count"] = 2 * a_prev <= len(words) <= 2 * a_prev + n
    res["diameter"] = all(cylinder_diam(X, w) < bound for w in words)
    res["disjoint"] = all(not is_prefix_comparable(words[i], words[j])
                          for i in range(len(words)) for j in range(i + 1, len(words)))
    res["nested"] = len(words) >= 2 * a_prev and all(
        words[2 * i][:len(p)] == p and words[2 * i + 1][:len(p)] == p
        for i, p in enumerate(parents))
    r = _radius_len(n)
    res["dense"] = all(any(_near(w, y, r) for w in words) for y in dense_sequence(X, n))

    k = stage.k
    rigid = S(k) and len(base) == len(words)
    rigid = rigid and all(words[i][:len(b)] == b for i, b in enumerate(base))
    if rigid:
        for i, p in enumerate(parents):
            for c in (words[2 * i], words[2 * i + 1]):
                img = shift_image(c, k)
                if p and (img is None or img[:len(p)] != p):
                    rigid = False
        rigid = rigid and all(k in hitting_set(X, b, b, k) for b in base)
    res["rigid"] = bool(rigid)

    t = stage.t
    if t is None:
        res["proximal"] = not require_t
    else:
        imgs = [shift_image(w, t) for w in words]
        if any(im is None for im in imgs) or t < 1:
            res["proximal"] = False
        else:
            common = 0
            while (common < min(len(im) for im in imgs)
                   and len({im[common] for im in imgs}) == 1):
                common += 1
            res["proximal"] = Fraction(1, 2**common) < bound
    if check_orbits:
        res["orbit_dense"] = all(
            any(w[i:i + r] == f for i in range(len(w) - r + 1))
            for w in words for f in X.language(r))
    else:
        res["orbit_dense"] = True
    return res


def verify_certificate(X, cert):
    """Per-level condition reports and an overall verdict."""
    S = TimeSet(cert.S)
    reports = []
    for s in cert.stages:
        reports.append(verify_stage(X, s, cert.parent_words(s.n), S=S,
                                    require_t=cert.proximal,
                                    check_orbits=cert.transitive_leaves))
    ok = all(all(r.values()) for r in reports) and all(
        s.n == i + 1 for i, s in enumerate(cert.stages))
    return ok, reports


def return_time(cert):
    """Return time for the level-``N`` leaves and the distance bound it guarantees.

    ``sigma**k_N`` maps each child cell into its parent cell, and both the
    point and its image lie in the parent cylinder, so they agree on at
    least ``min |parent|`` symbols.
    """
    last = cert.stages[-1]
    parents = cert.parent_words(last.n)
    L = min(len(p) for p in parents)
    return last.k, Fraction(1, 2 ** (L - 1)) if L >= 1 else Fraction(2)


def rigidity_check(points, times, eps):
    """True iff one time in ``times`` returns every point to within ``eps``."""
    return any(all(dist(p.shift(k), p) < eps for p in points) for k in times)


def proximality_check(points, t, eps):
    """True iff ``diam sigma**t(points) < eps``."""
    imgs = [p.shift(t) for p in points]
    return all(dist(p, q) < eps for p in imgs for q in imgs)

"""One-sided subshifts of finite type presented by labeled graphs.

A presentation is a finite directed graph whose edges carry symbols; the
points of the shift are the label sequences of infinite paths.  Every
retained vertex has an outgoing edge, so any finite path extends to an
infinite one and a word is legal exactly when some path reads it.

Sets of vertices are handled as integer bitmasks.  Reading a word from a
set of start vertices is then a subset-construction walk, which is what
makes every membership question below exact.

The metric is ``d(x, y) = 2**-i`` with ``i`` the first index where ``x`` and
``y`` disagree, so every distance is an exact dyadic :class:`Fraction`.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import EmptyShift, ParseError

__all__ = [
    "SftPresentation",
    "PointRep",
    "build_from_forbidden",
    "language",
    "dist",
    "disagreement",
    "dyadic",
    "cylinder_diam",
    "shift_image",
    "is_prefix_comparable",
    "sort_key",
    "word_key",
    "fmt_word",
    "parse_word",
]


def sort_key(x):
    """Total order on symbols and vertex names (strings and nested tuples)."""
    if isinstance(x, tuple):
        return (1, tuple(sort_key(t) for t in x))
    return (0, x)


def word_key(w):
    return tuple(sort_key(a) for a in w)


def dyadic(e):
    """The exact value ``2**-e``."""
    return Fraction(1, 2**e)


def _primitive_root(v):
    n = len(v)
    for d in range(1, n + 1):
        if n % d == 0 and v[:d] * (n // d) == v:
            return v[:d]
    return v


@dataclass(frozen=True)
class PointRep:
    """The eventually periodic point ``prefix + period + period + ...``.

    The representation is normalized on construction (primitive period,
    shortest prefix) so two instances are equal iff they denote the same
    sequence.
    """

    prefix: tuple = ()
    period: tuple = ()

    def __post_init__(self):
        u, v = tuple(self.prefix), tuple(self.period)
        if not v:
            raise ValueError("period must be a nonempty word")
        v = _primitive_root(v)
        while u and u[-1] == v[-1]:
            u = u[:-1]
            v = (v[-1],) + v[:-1]
        object.__setattr__(self, "prefix", u)
        object.__setattr__(self, "period", v)

    @classmethod
    def periodic(cls, v):
        return cls((), tuple(v))

    def __getitem__(self, i):
        u = self.prefix
        if i < len(u):
            return u[i]
        return self.period[(i - len(u)) % len(self.period)]

    def word(self, n, start=0):
        return tuple(self[i] for i in range(start, start + n))

    def shift(self, k):
        u, v = self.prefix, self.period
        if k <= len(u):
            return PointRep(u[k:], v)
        r = (k - len(u)) % len(v)
        return PointRep((), v[r:] + v[:r])

    @property
    def orbit_length(self):
        """Preperiod plus period: ``shift(k)`` for ``k`` beyond this cycles."""
        return len(self.prefix) + len(self.period)

    def to_dict(self):
        return {"prefix": fmt_word(self.prefix), "period": fmt_word(self.period)}

    def __str__(self):
        return f"{fmt_word_str(self.prefix)}({fmt_word_str(self.period)})^inf"


def disagreement(x, y):
    """Least index where ``x`` and ``y`` differ, or ``None`` if equal."""
    if x == y:
        return None
    bound = max(len(x.prefix), len(y.prefix)) + lcm(len(x.period), len(y.period))
    for i in range(bound):
        if x[i] != y[i]:
            return i
    return None  # pragma: no cover - normalized reps make this unreachable


def dist(x, y):
    i = disagreement(x, y)
    return Fraction(0) if i is None else dyadic(i)


def is_prefix_comparable(u, v):
    n = min(len(u), len(v))
    return u[:n] == v[:n]


def shift_image(w, k):
    """Word of the cylinder containing ``sigma**k [w]``; ``None`` when ``|w| <= k``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    w = tuple(w)
    if len(w) <= k:
        return None
    return w[k:]


def _atom(x):
    if isinstance(x, (list, tuple)):
        return tuple(_atom(t) for t in x)
    if isinstance(x, str):
        return x
    if isinstance(x, bool) or x is None:
        raise ParseError(f"invalid symbol or vertex name: {x!r}")
    if isinstance(x, (int, float)):
        return str(x)
    raise ParseError(f"invalid symbol or vertex name: {x!r}")


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(t) for t in x]
    return x


def _single_chars(symbols):
    return all(isinstance(a, str) and len(a) == 1 for a in symbols)


def fmt_word(w):
    """JSON form of a word: a string when every symbol is one character."""
    w = tuple(w)
    if _single_chars(w):
        return "".join(w)
    return [_jsonable(a) for a in w]


def fmt_word_str(w):
    w = tuple(w)
    if _single_chars(w):
        return "".join(w)
    return ".".join(str(_jsonable(a)) for a in w)


class SftPresentation:
    """A labeled graph presenting a one-sided shift of finite type.

    Parameters
    ----------
    edges : iterable of ``(source, symbol, target)``
    alphabet : optional iterable of symbols (labels are always included)
    vertices : optional iterable of vertex names
    origin : free-form provenance tag, e.g. ``"forbidden_words(2)"``

    The graph is trimmed to its forward-essential part on construction.
    Instances are immutable; ``surjective`` records whether every retained
    vertex has an incoming edge.
    """

    def __init__(self, edges, alphabet=None, vertices=None, origin="edge_shift"):
        edges = {(_atom(u), _atom(a), _atom(v)) for u, a, v in edges}
        verts = {_atom(v) for v in (vertices or ())}
        verts |= {u for u, _, _ in edges} | {v for _, _, v in edges}
        # trim: drop vertices without outgoing edges until stable
        while True:
            sources = {u for u, _, v in edges if v in verts}
            dead = verts - sources
            if not dead:
                break
            verts -= dead
            edges = {e for e in edges if e[0] in verts and e[2] in verts}
        if not verts:
            raise EmptyShift("presentation has no infinite path")
        symbols = {a for _, a, _ in edges} | {_atom(a) for a in (alphabet or ())}
        self.alphabet = tuple(sorted(symbols, key=sort_key))
        self.vertices = tuple(sorted(verts, key=sort_key))
        self.edges = tuple(
            sorted(edges, key=lambda e: (sort_key(e[0]), sort_key(e[1]), sort_key(e[2])))
        )
        self.origin = origin
        targets = {v for _, _, v in edges}
        self.surjective = targets == verts
        self._index = {v: i for i, v in enumerate(self.vertices)}
        n = len(self.vertices)
        self.full = (1 << n) - 1
        self._succ = {a: [0] * n for a in self.alphabet}
        self._pred = {a: [0] * n for a in self.alphabet}
        self._succ_any = [0] * n
        self._pred_any = [0] * n
        for u, a, v in self.edges:
            i, j = self._index[u], self._index[v]
            self._succ[a][i] |= 1 << j
            self._pred[a][j] |= 1 << i
            self._succ_any[i] |= 1 << j
            self._pred_any[j] |= 1 << i
        self._out = {v: [] for v in self.vertices}
        for e in self.edges:
            self._out[e[0]].append(e)
        # Subset-step memo. Entries are pure functions of the key, so
        # concurrent writers can only store identical values.
        self._memo = {}

    # -- basic structure -------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, SftPresentation):
            return NotImplemented
        return (self.alphabet, self.vertices, self.edges, self.origin) == (
            other.alphabet, other.vertices, other.edges, other.origin)

    def __hash__(self):
        return hash((self.alphabet, self.vertices, self.edges))

    def __repr__(self):
        return (f"SftPresentation({len(self.vertices)} vertices, "
                f"{len(self.edges)} edges, origin={self.origin!r})")

    def index(self, v):
        return self._index[v]

    def mask(self, vertices):
        m = 0
        for v in vertices:
            m |= 1 << self._index[v]
        return m

    def members(self, mask):
        return [v for i, v in enumerate(self.vertices) if mask >> i & 1]

    def out_edges(self, v):
        return self._out[v]

    # -- subset automaton ------------------------------------------------

    def _apply(self, S, table):
        r = 0
        while S:
            low = S & -S
            r |= table[low.bit_length() - 1]
            S ^= low
        return r

    def step(self, S, a):
        """Vertices reached from ``S`` along one edge labeled ``a`` (``None``: any)."""
        key = (S, a, 1)
        r = self._memo.get(key)
        if r is None:
            if a is None:
                table = self._succ_any
            else:
                table = self._succ.get(a)
            r = 0 if table is None else self._apply(S, table)
            self._memo[key] = r
        return r

    def step_back(self, S, a):
        key = (S, a, -1)
        r = self._memo.get(key)
        if r is None:
            if a is None:
                table = self._pred_any
            else:
                table = self._pred.get(a)
            r = 0 if table is None else self._apply(S, table)
            self._memo[key] = r
        return r

    def read(self, S, pattern):
        """End set of paths from ``S`` reading ``pattern`` (``None`` is a wildcard)."""
        for a in pattern:
            if not S:
                return 0
            S = self.step(S, a)
        return S

    def is_legal(self, word):
        return bool(self.read(self.full, tuple(word)))

    def accepts(self, point):
        """True iff the eventually periodic ``point`` is a point of the shift."""
        S = self.read(self.full, point.prefix)
        seen = set()
        while S and S not in seen:
            seen.add(S)
            S = self.read(S, point.period)
        return bool(S)

    def language(self, L, start=None):
        """Legal words of length ``L`` (readable from ``start``), in lexicographic order."""
        out = []
        alphabet = self.alphabet
        stack = [(self.full if start is None else start, ())]
        while stack:
            S, w = stack.pop()
            if len(w) == L:
                out.append(w)
                continue
            for a in reversed(alphabet):
                T = self.step(S, a)
                if T:
                    stack.append((T, w + (a,)))
        return out

    def extensions(self, word, length, limit=None):
        """Lexicographically first legal words of ``length`` extending ``word``."""
        word = tuple(word)
        S = self.read(self.full, word)
        if not S or length < len(word):
            return []
        out = []
        stack = [(S, word)]
        while stack:
            S, w = stack.pop()
            if len(w) == length:
                out.append(w)
                if limit is not None and len(out) >= limit:
                    break
                continue
            for a in reversed(self.alphabet):
                T = self.step(S, a)
                if T:
                    stack.append((T, w + (a,)))
        return out

    def realize(self, pattern):
        """Lexicographically least legal word matching ``pattern``.

        Returns ``(word, end_mask)`` or ``None`` when no legal word matches.
        ``end_mask`` holds the possible terminal vertices.
        """
        pattern = tuple(pattern)
        n = len(pattern)
        back = [0] * (n + 1)
        back[n] = self.full
        for j in range(n - 1, -1, -1):
            back[j] = self.step_back(back[j + 1], pattern[j])
            if not back[j]:
                return None
        S = back[0]
        word = []
        for j, p in enumerate(pattern):
            for a in (self.alphabet if p is None else (p,)):
                T = self.step(S, a) & back[j + 1]
                if T:
                    break
            word.append(a)
            S = T
        return tuple(word), S

    def tail(self, S):
        """Lexicographically least infinite label sequence readable from ``S``.

        Returned as ``(preperiod, period)``.
        """
        seen = {}
        seq = []
        while S not in seen:
            seen[S] = len(seq)
            for a in self.alphabet:
                T = self.step(S, a)
                if T:
                    break
            seq.append(a)
            S = T
        i = seen[S]
        return tuple(seq[:i]), tuple(seq[i:])

    def completion(self, word):
        """Canonical point of ``[word]``: the word followed by its least continuation."""
        word = tuple(word)
        S = self.read(self.full, word)
        if not S:
            raise ValueError(f"illegal word {fmt_word_str(word)}")
        pre, per = self.tail(S)
        return PointRep(word + pre, per)

    # -- serialization ---------------------------------------------------

    def to_dict(self):
        return {
            "alphabet": [_jsonable(a) for a in self.alphabet],
            "vertices": [_jsonable(v) for v in self.vertices],
            "edges": [[_jsonable(u), _jsonable(a), _jsonable(v)] for u, a, v in self.edges],
            "origin": self.origin,
            "surjective": self.surjective,
        }

    @classmethod
    def from_dict(cls, doc):
        """Parse either ``{"alphabet", "forbidden"}`` or ``{"vertices", "edges"}``."""
        if not isinstance(doc, dict):
            raise ParseError("SFT document must be a JSON object")
        if "edges" in doc:
            edges = doc["edges"]
            if not isinstance(edges, list) or any(
                    not isinstance(e, list) or len(e) != 3 for e in edges):
                raise ParseError("edges must be a list of [source, symbol, target]")
            return cls(edges, alphabet=doc.get("alphabet"), vertices=doc.get("vertices"),
                       origin=doc.get("origin", "edge_shift"))
        if "forbidden" in doc:
            if "alphabet" not in doc or not isinstance(doc["alphabet"], list):
                raise ParseError("forbidden-word input needs an alphabet list")
            alphabet = [_atom(a) for a in doc["alphabet"]]
            if not isinstance(doc["forbidden"], list):
                raise ParseError("forbidden must be a list of words")
            forbidden = [_parse_word_in(alphabet, w) for w in doc["forbidden"]]
            return build_from_forbidden(alphabet, forbidden)
        raise ParseError("SFT document needs either 'edges' or 'forbidden'")


def _parse_word_in(alphabet, w):
    if isinstance(w, str):
        if w in alphabet and not _single_chars(alphabet):
            return (w,)
        if _single_chars(alphabet):
            return tuple(w)
        raise ParseError(f"ambiguous word {w!r}; give multi-character symbols as a list")
    if isinstance(w, list):
        return tuple(_atom(a) for a in w)
    raise ParseError(f"invalid word {w!r}")


def parse_word(X, w):
    """Word from CLI/JSON form: a string of one-character symbols or a list."""
    word = _parse_word_in(X.alphabet, w)
    known = set(X.alphabet)
    for a in word:
        if a not in known:
            raise ParseError(f"symbol {a!r} is not in the alphabet")
    return word


def _avoids(word, forbidden):
    for f in forbidden:
        k = len(f)
        for i in range(len(word) - k + 1):
            if word[i:i + k] == f:
                return False
    return True


def _vertex_name(word, sep):
    return sep.join(word)


def build_from_forbidden(alphabet, forbidden):
    """Higher-block presentation of the shift avoiding ``forbidden`` factors.

    With ``m`` the longest forbidden length, vertices are the allowed words
    of length ``m - 1`` and each allowed ``m``-block ``w`` gives an edge
    ``w[:-1] -> w[1:]`` labeled ``w[0]``.  Labeling by the first symbol makes
    the label sequence of the path through ``x[i:i+m-1]`` equal to ``x``
    itself, so the presented language is exact even for non-surjective
    shifts.
    """
    alphabet = tuple(sorted({_atom(a) for a in alphabet}, key=sort_key))
    if not alphabet:
        raise EmptyShift("empty alphabet")
    forbidden = [tuple(_atom(a) for a in f) for f in forbidden]
    for f in forbidden:
        if not f:
            raise ValueError("forbidden words must be nonempty")
        if any(a not in alphabet for a in f):
            raise ValueError(f"forbidden word {f!r} uses symbols outside the alphabet")
    m = max((len(f) for f in forbidden), default=1)
    sep = "" if _single_chars(alphabet) else "."

    blocks = [()]
    for _ in range(m):
        blocks = [b + (a,) for b in blocks for a in alphabet if _avoids(b + (a,), forbidden)]
    edges = [(_vertex_name(b[:-1], sep), b[0], _vertex_name(b[1:], sep)) for b in blocks]
    if not edges:
        raise EmptyShift("every symbol is forbidden")
    return SftPresentation(edges, alphabet=alphabet, origin=f"forbidden_words({m})")


def language(X, L):
    """Legal words of length ``L`` in lexicographic order."""
    if L < 1:
        raise ValueError("L must be >= 1")
    return X.language(L)


def cylinder_diam(X, w):
    """Exact diameter of ``[w]``.

    Symbols forced after ``w`` are skipped; the first position offering two
    symbols fixes the diameter.  A cylinder whose forced continuation
    cycles is a single point, of diameter 0.
    """
    w = tuple(w)
    S = X.read(X.full, w)
    if not S:
        raise ValueError(f"empty cylinder [{fmt_word_str(w)}]")
    seen = set()
    depth = len(w)
    while S not in seen:
        seen.add(S)
        nxt = [T for T in (X.step(S, a) for a in X.alphabet) if T]
        if len(nxt) > 1:
            return dyadic(depth)
        S = nxt[0]
        depth += 1
    return Fraction(0)

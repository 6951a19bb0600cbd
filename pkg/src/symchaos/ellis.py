"""Enveloping monoids of self-maps of a finite set.

For finite ``X`` the closure of ``{T^n}`` in ``X^X`` is the monogenic
transformation semigroup of ``T``; everything below is exact table work on
it.  Points are ``0..size-1`` internally; the CLI speaks 1-based labels.
"""

from dataclasses import dataclass, field
from itertools import product as cartesian


@dataclass(frozen=True)
class FiniteDynSys:
    """A total map ``T`` on ``{0, ..., size-1}``; surjectivity is recorded, not required."""

    T: tuple

    def __post_init__(self):
        T = tuple(self.T)
        if not T:
            raise ValueError("need at least one point")
        if any(not 0 <= t < len(T) for t in T):
            raise ValueError("map leaves the space")
        object.__setattr__(self, "T", T)

    @property
    def size(self):
        return len(self.T)

    @property
    def surjective(self):
        return len(set(self.T)) == self.size

    @classmethod
    def parse(cls, text):
        """``"1:2,2:3,3:2"`` (1-based) into a system."""
        pairs = {}
        for item in text.split(","):
            a, b = item.split(":")
            pairs[int(a)] = int(b)
        n = len(pairs)
        if sorted(pairs) != list(range(1, n + 1)):
            raise ValueError("map must list each of 1..n exactly once")
        return cls(tuple(pairs[i] - 1 for i in range(1, n + 1)))

    def label(self):
        return ",".join(f"{i + 1}:{t + 1}" for i, t in enumerate(self.T))


def compose(f, g):
    """``f o g`` as tuples: first ``g``, then ``f``."""
    return tuple(f[x] for x in g)


@dataclass
class EnvMonoid:
    """``elements[i]`` is ``T^(i+1)`` (or the identity first when adjoined)."""

    sys: FiniteDynSys
    elements: list
    table: list
    n0: int
    p: int
    has_identity: bool = False
    powers: list = field(default_factory=list)

    def index(self, f):
        return self.elements.index(tuple(f))

    def mul(self, i, j):
        return self.table[i][j]

    def to_dict(self):
        return {
            "size": self.sys.size,
            "map": [t + 1 for t in self.sys.T],
            "surjective": self.sys.surjective,
            "elements": [[t + 1 for t in f] for f in self.elements],
            "powers": self.powers,
            "table": self.table, "preperiod": self.n0, "period": self.p,
            "identity_adjoined": self.has_identity,
        }


def enveloping(sys, include_identity=False):
    """Iterate ``T, T^2, ...`` until a repeat; compose by table lookup.

    ``n0`` and ``p`` satisfy ``T^(n0+p) = T^n0`` with ``n0 >= 1`` minimal.
    The identity is an element without adjoining whenever ``T`` is a
    permutation; ``include_identity`` adds ``T^0`` otherwise.
    """
    T = sys.T
    seq, seen = [], {}
    f = T
    while f not in seen:
        seen[f] = len(seq)
        seq.append(f)
        f = compose(T, f)
    n0 = seen[f] + 1
    p = len(seq) - seen[f]
    elements = list(seq)
    powers = list(range(1, len(seq) + 1))
    ident = tuple(range(sys.size))
    adjoined = False
    if include_identity and ident not in seen:
        elements.insert(0, ident)
        powers.insert(0, 0)
        adjoined = True
    pos = {e: i for i, e in enumerate(elements)}
    table = [[pos[compose(a, b)] for b in elements] for a in elements]
    return EnvMonoid(sys, elements, table, n0, p, adjoined, powers)


def adherence(env):
    """Indices of ``T^n`` for ``n >= n0``: the elements that recur."""
    return [i for i, n in enumerate(env.powers) if n >= env.n0]


@dataclass
class IdealStructure:
    minimal_ideals: list
    idempotents: list
    groups: list

    def to_dict(self):
        return {"minimal_ideals": self.minimal_ideals, "idempotents": self.idempotents,
                "groups": [{"idempotent": v, "members": g} for v, g in self.groups]}


def left_ideal(env, p):
    """``E p`` as a sorted index list."""
    return sorted({env.table[q][p] for q in range(len(env.elements))})


def ideal_structure(env):
    """Minimal left ideals, their idempotents and the groups ``vI``."""
    cands = {tuple(left_ideal(env, p)) for p in range(len(env.elements))}
    minimal = sorted(c for c in cands if not any(set(d) < set(c) for d in cands))
    idems, groups = [], []
    for I in minimal:
        J = [v for v in I if env.table[v][v] == v]
        idems.append(J)
        for v in J:
            groups.append((v, sorted({env.table[v][p] for p in I})))
    return IdealStructure([list(I) for I in minimal], idems, groups)


def _equalizer(env, x, y):
    for i, f in enumerate(env.elements):
        if f[x] == f[y]:
            return i
    return None


def proximal_pairs(env, structure=None):
    """Unordered off-diagonal proximal pairs, each with an equalizing element.

    A certificate also records whether every element of the first minimal
    ideal equalizes the pair, the ideal form of the same fact.
    """
    structure = structure or ideal_structure(env)
    I = structure.minimal_ideals[0]
    out = []
    for x in range(env.sys.size):
        for y in range(x + 1, env.sys.size):
            p = _equalizer(env, x, y)
            if p is not None:
                all_I = all(env.elements[q][x] == env.elements[q][y] for q in I)
                out.append({"pair": (x, y), "p": p, "every_p_in_I": all_I})
    return out


def proximal_cell(env, x, structure=None):
    """``P[x]``; for a single periodic orbit also ``{v x}`` over minimal idempotents."""
    cell = {x} | {y for y in range(env.sys.size)
                  if any(f[x] == f[y] for f in env.elements)}
    out = {"x": x, "cell": sorted(cell)}
    if is_single_orbit(env.sys):
        structure = structure or ideal_structure(env)
        via = sorted({env.elements[v][x] for J in structure.idempotents for v in J})
        out["via_idempotents"] = via
        out["agree"] = via == sorted(cell)
    return out


def is_single_orbit(sys):
    """True iff ``T`` is one cyclic permutation (the minimal finite systems)."""
    x, seen = 0, set()
    while x not in seen:
        seen.add(x)
        x = sys.T[x]
    return x == 0 and len(seen) == sys.size


def orbit_merge(sys, x, y):
    """Independent proximality test: ``T^n x == T^n y`` for some ``1 <= n <= size``."""
    T = sys.T
    for _ in range(sys.size):
        x, y = T[x], T[y]
        if x == y:
            return True
    return False


def verify_semigroup_laws(env, structure=None):
    """Exhaustive check of the idempotent and ideal laws; returns violation list."""
    E = range(len(env.elements))
    t = env.table
    bad = []
    # the table must be function composition of the listed maps
    for a in E:
        for b in E:
            if env.elements[t[a][b]] != compose(env.elements[a], env.elements[b]):
                bad.append(("table", a, b))
    # closure and associativity of the table
    for a in E:
        for b in E:
            for c in E:
                if t[t[a][b]][c] != t[a][t[b][c]]:
                    bad.append(("associativity", a, b, c))
    structure = structure or ideal_structure(env)
    if not any(t[v][v] == v for v in E):
        bad.append(("idempotent_exists",))
    for I, J in zip(structure.minimal_ideals, structure.idempotents):
        Iset = set(I)
        if not J:
            bad.append(("idempotent_in_ideal", I))
        for q in E:
            for p in I:
                if t[q][p] not in Iset:
                    bad.append(("left_ideal", q, p))
        for v in J:
            for p in I:
                if t[p][v] != p:
                    bad.append(("right_identity", p, v))
        # vI is a group with identity v
        blocks = []
        for v in J:
            G = sorted({t[v][p] for p in I})
            blocks.append(set(G))
            Gs = set(G)
            for a in G:
                if t[v][a] != a or t[a][v] != a:
                    bad.append(("group_identity", v, a))
                if not any(t[a][b] == v and t[b][a] == v for b in G):
                    bad.append(("group_inverse", v, a))
                for b in G:
                    if t[a][b] not in Gs:
                        bad.append(("group_closure", v, a, b))
        union = set().union(*blocks) if blocks else set()
        if union != Iset or sum(len(b) for b in blocks) != len(Iset):
            bad.append(("partition", I))
    # pairing of idempotents across distinct minimal ideals
    ideals = structure.minimal_ideals
    for i, J1 in enumerate(structure.idempotents):
        for j, J2 in enumerate(structure.idempotents):
            if i == j:
                continue
            for v in J1:
                if not any(t[v][w] == w and t[w][v] == v for w in J2):
                    bad.append(("equivalent_idempotent", v, ideals[j]))
    return bad


def _subsemigroups_without_idempotent(env, max_size):
    """Check every subset (``|E| <= max_size``) closed under the table has an idempotent."""
    n = len(env.elements)
    if n > max_size:
        return []
    bad = []
    t = env.table
    for mask in range(1, 1 << n):
        S = [i for i in range(n) if mask >> i & 1]
        if all(mask >> t[a][b] & 1 for a in S for b in S):
            if not any(t[a][a] == a for a in S):
                bad.append(S)
    return bad


def all_maps(size):
    for T in cartesian(range(size), repeat=size):
        yield FiniteDynSys(T)


def sweep(max_size, subsemigroup_limit=6):
    """Law check over every map on at most ``max_size`` points.

    Returns a summary with the system count and every violation found,
    including disagreements between semigroup proximality and orbit merging.
    """
    systems = 0
    per_size = {}
    violations = []
    for size in range(1, max_size + 1):
        for sys in all_maps(size):
            systems += 1
            per_size[size] = per_size.get(size, 0) + 1
            env = enveloping(sys)
            st = ideal_structure(env)
            for v in verify_semigroup_laws(env, st):
                violations.append({"map": sys.label(), "law": v[0]})
            for S in _subsemigroups_without_idempotent(env, subsemigroup_limit):
                violations.append({"map": sys.label(), "law": "subsemigroup_idempotent"})
            prox = proximal_pairs(env, st)
            pairs = {d["pair"] for d in prox}
            for d in prox:
                if not d["every_p_in_I"]:
                    violations.append({"map": sys.label(), "law": "proximal_ideal_form"})
            for x in range(size):
                for y in range(x + 1, size):
                    if ((x, y) in pairs) != orbit_merge(sys, x, y):
                        violations.append({"map": sys.label(), "law": "proximal_oracle",
                                           "pair": [x + 1, y + 1]})
            if is_single_orbit(sys):
                for x in range(size):
                    if not proximal_cell(env, x, st)["agree"]:
                        violations.append({"map": sys.label(), "law": "proximal_cell"})
    return {"max_size": max_size, "systems": systems, "per_size": per_size,
            "violations": violations, "violation_count": len(violations)}

"""Chaos classification of a shift of finite type with a rule trail.

Every "yes" carries the rule that produced it.  The sufficient conditions
are tried cheapest first::

    fixed_point            transitive with a fixed point
    totally_transitive     totally transitive with a periodic point
    weakly_mixing          X x X transitive
    criterion              some subsystem Y with X x Y transitive
    cyclic_decomposition   period d: (X_0, sigma^d) is densely uniformly chaotic
    devaney                dense periodic points imply uniform chaos

Anything not settled stays "unknown".  Only a finite X gets "no" on the
chaos flags.
"""

from dataclasses import dataclass, field
from math import ceil

from .criterion import criterion_check
from .decide import (_jsonv, dense_periodic_points, fixed_points, is_finite, is_transitive,
                     is_weakly_mixing, period, periodic_points)
from .errors import NotApplicable, NotSurjective
from .shift import SftPresentation

FLAGS = ("transitive", "totally_transitive", "weakly_mixing", "devaney",
         "densely_uniformly_chaotic", "uniformly_chaotic", "strong_liyorke", "liyorke")
CHAOS = ("densely_uniformly_chaotic", "uniformly_chaotic", "strong_liyorke", "liyorke")

# (stronger, weaker) edges of the implication diagram
IMPLICATIONS = (
    ("weakly_mixing", "densely_uniformly_chaotic"),
    ("densely_uniformly_chaotic", "uniformly_chaotic"),
    ("devaney", "uniformly_chaotic"),
    ("uniformly_chaotic", "strong_liyorke"),
    ("strong_liyorke", "liyorke"),
)

RULES = {
    "fixed_point": "transitive, without isolated points, and has a fixed point",
    "totally_transitive": "totally transitive with a periodic point",
    "weakly_mixing": "weakly mixing without isolated points",
    "criterion": "X x Y transitive for a subsystem Y",
    "cyclic_decomposition": "(X_0, sigma^d) densely uniformly chaotic on a cyclic class",
    "devaney": "Devaney chaos implies uniform chaos",
    "implied": "implied by a stronger flag",
    "decided": "decided directly on the presentation",
}


@dataclass
class ChaosReport:
    flags: dict
    provenance: dict = field(default_factory=dict)
    rules_satisfied: list = field(default_factory=list)
    decomposition: dict = None
    finite: bool = False
    reason: str = None
    certificates: dict = field(default_factory=dict)

    def to_dict(self):
        return {"flags": dict(self.flags), "provenance": dict(self.provenance),
                "rules_satisfied": list(self.rules_satisfied),
                "decomposition": self.decomposition, "finite": self.finite,
                "reason": self.reason, "certificates": self.certificates}

    @classmethod
    def from_dict(cls, d):
        return cls(dict(d["flags"]), dict(d.get("provenance", {})),
                   list(d.get("rules_satisfied", [])), d.get("decomposition"),
                   d.get("finite", False), d.get("reason"), d.get("certificates", {}))


def _yn(b):
    return "yes" if b else "no"


def _set_chaos(report, rule, dense):
    """Mark chaos flags from ``rule`` downwards without overwriting earlier yeses."""
    targets = CHAOS if dense else CHAOS[1:]
    for f in targets:
        if report.flags[f] != "yes":
            report.flags[f] = "yes"
            report.provenance[f] = rule if f in ("densely_uniformly_chaotic",
                                                 "uniformly_chaotic") else "implied"
    if not dense and report.flags["densely_uniformly_chaotic"] != "yes":
        report.flags["densely_uniformly_chaotic"] = "unknown"


def classify(X, budget=6):
    """Classify ``X``; raises :class:`NotSurjective` for non-surjective presentations."""
    if not X.surjective:
        raise NotSurjective("the shift map of this presentation is not onto: "
                            "some vertex has no incoming edge")
    flags = {f: "unknown" for f in FLAGS}
    report = ChaosReport(flags)
    t = is_transitive(X).verdict
    finite, _ = is_finite(X)
    report.finite = finite
    flags["transitive"] = _yn(t)
    report.provenance["transitive"] = "decided"
    wm = is_weakly_mixing(X).verdict
    flags["weakly_mixing"] = _yn(wm)
    report.provenance["weakly_mixing"] = "decided"
    if t:
        d, _ = period(X)
        flags["totally_transitive"] = _yn(d == 1)
    else:
        d = None
        flags["totally_transitive"] = "no"
    report.provenance["totally_transitive"] = "decided"
    dev = dense_periodic_points(X).verdict
    flags["devaney"] = _yn(dev)
    report.provenance["devaney"] = "decided"

    if finite:
        for f in CHAOS:
            flags[f] = "no"
            report.provenance[f] = "finite shift: every point is isolated"
        report.reason = "FiniteShift"
        return report
    if not t:
        report.reason = "not transitive: the sufficient conditions do not apply"
        return report

    fixed = fixed_points(X)
    if fixed:
        report.rules_satisfied.append("fixed_point")
        report.certificates["fixed_point"] = str(fixed[0])
    if d == 1:
        p = next(periodic_points(X, n) for n in range(1, len(X.vertices) + 1)
                 if periodic_points(X, n))
        report.rules_satisfied.append("totally_transitive")
        report.certificates["periodic_point"] = str(p[0])
    if wm:
        report.rules_satisfied.append("weakly_mixing")
    if report.rules_satisfied:
        _set_chaos(report, report.rules_satisfied[0], True)
    else:
        crit = criterion_check(X, budget)
        if crit.satisfied:
            report.rules_satisfied.append("criterion")
            report.certificates["criterion_Y"] = crit.witness_Y.label
            _set_chaos(report, "criterion", True)
        else:
            report.certificates["criterion"] = f"nothing found within budget {budget}"
    if d >= 2:
        try:
            dec = decompose_periodic(X)
        except NotApplicable:  # pragma: no cover - d >= 2 and transitive
            dec = None
        if dec is not None:
            report.decomposition = dec.summary()
            if dec.chaotic:
                report.rules_satisfied.append("cyclic_decomposition")
                _set_chaos(report, "cyclic_decomposition", False)
    if dev:
        report.rules_satisfied.append("devaney")
        _set_chaos(report, "devaney", False)
    return report


@dataclass
class Decomposition:
    d: int
    X0: SftPresentation
    class_vertices: list
    has_fixed_point: bool
    chaotic: bool

    def summary(self):
        return {"d": self.d, "class_vertices": [str(v) for v in self.class_vertices],
                "X0_vertices": len(self.X0.vertices), "X0_edges": len(self.X0.edges),
                "X0_has_fixed_point": self.has_fixed_point, "X0_chaotic": self.chaotic}


def decompose_periodic(X, budget=6):
    """Cyclic class ``X_0`` of a transitive shift with period ``d >= 2``.

    ``X_0`` is presented by the ``d``-th power graph on the class-0
    vertices; its symbols are ``d``-tuples of symbols of ``X``.  ``chaotic``
    records whether ``(X_0, sigma^d)`` is infinite and transitive with a
    fixed point, or else passes the subsystem criterion.
    """
    if not is_transitive(X).verdict:
        raise NotApplicable("decomposition needs a transitive X")
    d, cert = period(X)
    if d < 2:
        raise NotApplicable("period 1: no cyclic decomposition")
    cls = cert["classes"]
    zero = [v for v in X.vertices if cls[str(_jsonv(v))] == 0]
    edges = []
    for v in zero:
        stack = [(v, ())]
        while stack:
            u, lab = stack.pop()
            if len(lab) == d:
                edges.append((v, lab, u))
                continue
            for _, a, w in X.out_edges(u):
                stack.append((w, lab + (a,)))
    X0 = SftPresentation(edges, origin=f"power({d})")
    has_fixed = bool(fixed_points(X0))
    chaotic = False
    if not is_finite(X0)[0] and is_transitive(X0).verdict:
        chaotic = has_fixed or criterion_check(X0, budget).satisfied
    return Decomposition(d, X0, zero, has_fixed, chaotic)


def expansion_language(dec, L):
    """Words of length ``L`` read off shifted expansions of ``X_0``."""
    d = dec.d
    out = set()
    for j in range(d):
        n = ceil((j + L) / d)
        for w in dec.X0.language(n):
            flat = tuple(a for block in w for a in block)
            out.add(flat[j:j + L])
    return out


def check_decomposition(X, dec, max_len=12):
    """Lengths ``L <= max_len`` at which ``language(X, L)`` differs from the expansions."""
    return [L for L in range(1, max_len + 1)
            if set(X.language(L)) != expansion_language(dec, L)]


def _descendants(flag):
    out, todo = [], [flag]
    while todo:
        f = todo.pop()
        for hi, lo in IMPLICATIONS:
            if hi == f and lo not in out:
                out.append(lo)
                todo.append(lo)
    return out


def implication_audit(report):
    """``(ok, violations)``: no flag is "no" while a flag implying it is "yes".

    Implications are followed transitively, so a report that leaves the
    intermediate flags out is still caught.  A finite shift is weakly mixing
    in the degenerate sense yet has no chaos; implications out of weak
    mixing are exempt there, since the chaos statements need a space
    without isolated points.
    """
    if isinstance(report, dict):
        flags, finite = report.get("flags", report), report.get("finite", False)
    else:
        flags, finite = report.flags, report.finite
    bad = []
    for hi in dict.fromkeys(h for h, _ in IMPLICATIONS):
        if flags.get(hi) != "yes" or (finite and hi == "weakly_mixing"):
            continue
        for lo in _descendants(hi):
            if flags.get(lo) == "no":
                bad.append(f"{hi}=yes but {lo}=no")
    return not bad, bad


def describe(report):
    lines = []
    for f in FLAGS:
        why = report.provenance.get(f, "")
        lines.append(f"{f:28s} {report.flags[f]:8s} {RULES.get(why, why)}")
    return "\n".join(lines)


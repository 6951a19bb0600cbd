"""Seeded random SFT presentations for tests and experiments."""

import hashlib
import json
import random

from .decide import fixed_points, is_finite, is_transitive, period
from .errors import EmptyShift
from .shift import SftPresentation

REQUIREMENTS = ("none", "transitive", "chaotic_fixed")


def _trim_both(edges):
    """Drop vertices lacking in- or out-edges until stable; ``None`` if nothing is left."""
    edges = set(edges)
    while True:
        srcs = {u for u, _, _ in edges}
        dsts = {v for _, _, v in edges}
        keep = srcs & dsts
        new = {e for e in edges if e[0] in keep and e[2] in keep}
        if new == edges:
            break
        edges = new
    if not edges:
        return None
    try:
        return SftPresentation(edges, origin="edge_shift")
    except EmptyShift:  # pragma: no cover - trimmed above
        return None


def random_presentation(rng, alphabet_max, vertex_max, density=None):
    n = rng.randint(1, vertex_max)
    k = rng.randint(1, alphabet_max)
    symbols = [str(i) for i in range(k)] if k <= 10 else [f"s{i}" for i in range(k)]
    p = density if density is not None else rng.choice((0.25, 0.35, 0.5))
    edges = []
    for u in range(n):
        for v in range(n):
            for a in symbols:
                if rng.random() < p / max(1, k - 1) or (k == 1 and rng.random() < p):
                    edges.append((f"v{u}", a, f"v{v}"))
    return _trim_both(edges)


def stats(X):
    t = is_transitive(X).verdict
    finite = is_finite(X)[0]
    doc = json.dumps(X.to_dict(), sort_keys=True).encode()
    return {
        "vertices": len(X.vertices), "edges": len(X.edges), "alphabet": len(X.alphabet),
        "transitive": t, "period": period(X)[0] if t else None, "finite": finite,
        "fixed_point": bool(fixed_points(X)), "surjective": X.surjective,
        "sha256": hashlib.sha256(doc).hexdigest(),
    }


def _meets(X, require):
    if require == "none":
        return True
    if not is_transitive(X).verdict:
        return False
    if require == "transitive":
        return True
    return not is_finite(X)[0] and bool(fixed_points(X))


def gen_corpus(seed, count, alphabet_max=3, vertex_max=4, require="none", max_tries=None):
    """``count`` random trimmed (and surjective) presentations with a manifest.

    At least half are transitive: non-transitive draws are only accepted
    while room for them remains.  ``require`` tightens every entry to
    transitive, or to transitive and infinite with a fixed point.
    """
    if require not in REQUIREMENTS:
        raise ValueError(f"require must be one of {REQUIREMENTS}")
    rng = random.Random(seed)
    room = count - (count + 1) // 2
    out, manifest = [], []
    seen = set()
    tries = 0
    max_tries = max_tries or 2000 * max(count, 1)
    while len(out) < count:
        tries += 1
        if tries > max_tries:
            raise RuntimeError("corpus sampler exhausted its retry budget")
        X = random_presentation(rng, alphabet_max, vertex_max)
        if X is None or not _meets(X, require):
            continue
        key = (X.vertices, X.edges)
        if key in seen and alphabet_max > 1:
            continue
        t = is_transitive(X).verdict
        if not t:
            if room == 0:
                continue
            room -= 1
        seen.add(key)
        name = f"sft_{len(out):04d}"
        out.append((name, X))
        manifest.append({"name": name, **stats(X)})
    return out, {"seed": seed, "count": count, "alphabet_max": alphabet_max,
                 "vertex_max": vertex_max, "require": require, "entries": manifest}

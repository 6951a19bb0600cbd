"""Command line interface: ``symchaos <command> ...``.

Every JSON document written to stdout has a ``header`` (tool, version,
command, seed, input hash) and a ``result``.  Keys are sorted, so identical
invocations produce identical bytes.

Exit codes: 0 success, 2 usage error, 3 input parse error, 4 a hypothesis
was not met or a verification failed.
"""

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .classify import classify, decompose_periodic, implication_audit
from .construct import (ConstructionCertificate, TimeSet, build_stages,
                        verify_certificate)
from .corpus import REQUIREMENTS, gen_corpus
from .criterion import criterion_check, product, verify_criterion
from .decide import analyze, check_report, hitting_set
from .ellis import (FiniteDynSys, adherence, enveloping, ideal_structure, proximal_cell,
                    proximal_pairs, sweep, verify_semigroup_laws)
from .errors import ParseError, SymchaosError
from .export import dot_export
from .shift import SftPresentation, dyadic, parse_word
from .witness import liyorke_check, scrambled_pairs, strong_liyorke_check

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_FAIL = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _read(path):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    if not data.strip():
        raise UsageError(f"{path} is empty")
    return data


def _load_json(path):
    data = _read(path)
    try:
        return json.loads(data), hashlib.sha256(data).hexdigest()
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def load_sft(path):
    doc, digest = _load_json(path)
    if isinstance(doc, dict) and "sft" in doc and "stages" not in doc:
        doc = doc["sft"]
    return SftPresentation.from_dict(doc), digest


def _dump(obj):
    return json.dumps(obj, sort_keys=True, indent=2, default=str)


def _emit(args, result, digest=None, seed=None):
    doc = {"header": {"tool": "symchaos", "version": __version__, "command": args.command,
                      "seed": seed, "input_sha256": digest},
           "result": result}
    text = _dump(doc) + "\n"
    if getattr(args, "out", None) and args.command != "gen-corpus":
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


# -- commands ---------------------------------------------------------------

def cmd_analyze(args):
    X, digest = load_sft(args.sft)
    reports = analyze(X, args.probe)
    rows = []
    ok = True
    for r in reports:
        checked = check_report(X, r)
        ok &= checked
        rows.append({**r.to_dict(), "rechecked": checked})
    _emit(args, {"sft": X.to_dict(), "reports": rows}, digest)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_hit(args):
    X, digest = load_sft(args.sft)
    U, V = parse_word(X, args.U), parse_word(X, args.V)
    N = hitting_set(X, U, V, args.horizon)
    _emit(args, {"U": args.U, "V": args.V, **N.to_dict()}, digest)
    return EXIT_OK


def cmd_criterion(args):
    X, digest = load_sft(args.sft)
    rep = criterion_check(X, args.budget)
    result = rep.to_dict()
    result["rechecked"] = verify_criterion(X, rep)
    if args.emit_product and rep.satisfied:
        Path(args.emit_product).write_text(_dump(product(X, rep.witness_Y).to_dict()) + "\n")
    _emit(args, result, digest)
    return EXIT_OK if result["rechecked"] else EXIT_FAIL


def cmd_construct(args):
    X, digest = load_sft(args.sft)
    S = TimeSet(args.S)
    cert = build_stages(X, args.N, proximal=args.proximal,
                        transitive_leaves=args.transitive_leaves, S=S, horizon=args.horizon)
    doc = cert.to_dict()
    doc["sft"] = X.to_dict()
    _emit(args, doc, digest)
    ok = all(all(c.values()) for c in cert.checks)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args):
    doc, digest = _load_json(args.cert)
    if "result" in doc and "header" in doc:
        doc = doc["result"]
    X, _ = load_sft(args.sft)
    try:
        cert = ConstructionCertificate.from_dict(X, doc)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed certificate: missing {exc}") from None
    ok, reports = verify_certificate(X, cert)
    failing = [f"level {i + 1}: {name}" for i, r in enumerate(reports)
               for name, passed in r.items() if not passed]
    _emit(args, {"ok": ok, "levels": reports, "failing": failing}, digest)
    if not ok:
        print("verification failed: " + ", ".join(failing), file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_witness(args):
    X, digest = load_sft(args.sft)
    delta = dyadic(args.delta)
    pairs = scrambled_pairs(X, args.pairs, args.eprox, delta, args.horizon)
    out = []
    ok = True
    for w in pairs:
        ly = liyorke_check(w, args.eprox, delta, X)
        sly = strong_liyorke_check(w, dyadic(args.eprox))
        ok &= ly
        out.append({**w.to_dict(), "liyorke_check": ly, "strong_liyorke_check": sly})
    _emit(args, out, digest)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_ellis(args):
    if args.sweep is not None:
        res = sweep(args.sweep)
        _emit(args, res)
        sizes = "+".join(str(res["per_size"][n]) for n in sorted(res["per_size"], reverse=True))
        print(f"{res['systems']} systems ({sizes}), {res['violation_count']} law violations",
              file=sys.stderr)
        return EXIT_OK if res["violation_count"] == 0 else EXIT_FAIL
    try:
        sys_ = FiniteDynSys.parse(args.map)
    except ValueError as exc:
        raise ParseError(f"bad map {args.map!r}: {exc}") from None
    env = enveloping(sys_, include_identity=args.identity)
    st = ideal_structure(env)
    violations = verify_semigroup_laws(env, st)
    res = {
        "monoid": env.to_dict(),
        "adherence": adherence(env),
        "ideals": st.to_dict(),
        "proximal_pairs": [{"pair": [x + 1, y + 1], "p": d["p"],
                            "every_p_in_I": d["every_p_in_I"]}
                           for d in proximal_pairs(env, st) for x, y in [d["pair"]]],
        "proximal_cells": [{**c, "x": c["x"] + 1, "cell": [y + 1 for y in c["cell"]]}
                           for c in (proximal_cell(env, x, st) for x in range(sys_.size))],
        "law_violations": [list(map(str, v)) for v in violations],
    }
    _emit(args, res)
    return EXIT_OK if not violations else EXIT_FAIL


def cmd_classify(args):
    X, digest = load_sft(args.sft)
    rep = classify(X, args.budget)
    ok, bad = implication_audit(rep)
    res = {**rep.to_dict(), "audit": {"ok": ok, "violations": bad}}
    if args.emit_witnesses and rep.flags["densely_uniformly_chaotic"] == "yes":
        d = Path(args.emit_witnesses)
        d.mkdir(parents=True, exist_ok=True)
        cert = build_stages(X, 3, proximal=True)
        (d / "construction.json").write_text(_dump(cert.to_dict()) + "\n")
        pairs = scrambled_pairs(X, 1, 8, Fraction(1, 2), 4096)
        (d / "pairs.json").write_text(_dump([w.to_dict() for w in pairs]) + "\n")
        res["witnesses"] = sorted(p.name for p in d.iterdir())
    _emit(args, res, digest)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_gen_corpus(args):
    entries, manifest = gen_corpus(args.seed, args.count, args.alphabet_max,
                                   args.vertex_max, args.require)
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        for name, X in entries:
            (d / f"{name}.json").write_text(_dump(X.to_dict()) + "\n")
        (d / "manifest.json").write_text(_dump(manifest) + "\n")
    _emit(args, manifest, seed=args.seed)
    return EXIT_OK


def cmd_dot(args):
    X, _ = load_sft(args.sft)
    if args.product:
        Y, _ = load_sft(args.product)
        text = dot_export(product(X, Y), "product")
    elif args.decompose:
        dec = decompose_periodic(X)
        text = dot_export(dec.X0, f"X0_period_{dec.d}")
    else:
        text = dot_export(X, Path(args.sft).stem)
    sys.stdout.write(text)
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="symchaos",
                                description="Chaos decisions and witnesses for shifts of finite type.")
    p.add_argument("--version", action="version", version=f"symchaos {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="transitivity, period, mixing, fixed points, Devaney")
    a.add_argument("sft")
    a.add_argument("--probe", type=int, default=2, help="word length for periodic-point probes")
    a.set_defaults(func=cmd_analyze)

    h = sub.add_parser("hit", help="hitting time set N([U],[V]) up to a horizon")
    h.add_argument("sft")
    h.add_argument("-U", required=True, help="first cylinder word")
    h.add_argument("-V", required=True, help="second cylinder word")
    h.add_argument("-H", "--horizon", type=int, default=64)
    h.set_defaults(func=cmd_hit)

    c = sub.add_parser("criterion", help="search a subsystem Y with X x Y transitive")
    c.add_argument("sft")
    c.add_argument("--budget", type=int, default=6)
    c.add_argument("--emit-product", metavar="PATH")
    c.set_defaults(func=cmd_criterion)

    k = sub.add_parser("construct", help="build N verified levels of nested cylinders")
    k.add_argument("sft")
    k.add_argument("-N", type=int, default=4)
    k.add_argument("--proximal", action="store_true")
    k.add_argument("--transitive-leaves", action="store_true")
    k.add_argument("--S", default=None, help='admissible return times, e.g. "k%%2==0"')
    k.add_argument("--horizon", type=int, default=4096)
    k.add_argument("-o", "--out")
    k.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="recheck a construction certificate")
    v.add_argument("cert")
    v.add_argument("sft")
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("witness", help="certified Li-Yorke pairs")
    w.add_argument("sft")
    w.add_argument("--pairs", type=int, default=10)
    w.add_argument("--eprox", type=int, default=8, help="proximal distance below 2^-eprox")
    w.add_argument("--delta", type=int, default=1, help="separation at least 2^-delta")
    w.add_argument("--horizon", type=int, default=4096)
    w.set_defaults(func=cmd_witness)

    e = sub.add_parser("ellis", help="enveloping monoid of a finite map")
    g = e.add_mutually_exclusive_group(required=True)
    g.add_argument("--map", help='1-based map such as "1:2,2:3,3:2"')
    g.add_argument("--sweep", type=int, metavar="N", help="check every map on <= N points")
    e.add_argument("--identity", action="store_true", help="adjoin T^0")
    e.set_defaults(func=cmd_ellis)

    f = sub.add_parser("classify", help="chaos flags with rule provenance")
    f.add_argument("sft")
    f.add_argument("--budget", type=int, default=6)
    f.add_argument("--emit-witnesses", metavar="DIR")
    f.set_defaults(func=cmd_classify)

    r = sub.add_parser("gen-corpus", help="random trimmed presentations plus manifest")
    r.add_argument("--seed", type=int, default=1)
    r.add_argument("--count", type=int, default=10)
    r.add_argument("--alphabet-max", type=int, default=3)
    r.add_argument("--vertex-max", type=int, default=4)
    r.add_argument("--require", choices=REQUIREMENTS, default="none")
    r.add_argument("--out", metavar="DIR")
    r.set_defaults(func=cmd_gen_corpus)

    d = sub.add_parser("dot", help="Graphviz DOT text")
    d.add_argument("sft")
    grp = d.add_mutually_exclusive_group()
    grp.add_argument("--product", metavar="SFT2")
    grp.add_argument("--decompose", action="store_true")
    d.set_defaults(func=cmd_dot)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"symchaos: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        sys.stdout.write(_dump({"error": exc.to_dict()}) + "\n")
        print(f"symchaos: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SymchaosError as exc:
        sys.stdout.write(_dump({"error": exc.to_dict()}) + "\n")
        print(f"symchaos: {exc.reason}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"symchaos: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

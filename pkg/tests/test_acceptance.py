"""Acceptance criteria, one test each, at the stated tolerances.

Each test records a single ``criterion N: PASS/FAIL`` line, printed again
in the terminal summary.  Run directly with ``python3 tests/test_acceptance.py``.
"""

import json
import random
import sys
import time
from fractions import Fraction
from itertools import product as cartesian

import pytest

from conftest import SFTS
from helpers import named_shifts
from oracles import hitting_oracle, scc_count
from symchaos import catalog
from symchaos.classify import FLAGS, IMPLICATIONS, classify, check_decomposition
from symchaos.classify import decompose_periodic, implication_audit
from symchaos.cli import main
from symchaos.corpus import gen_corpus
from symchaos.criterion import product
from symchaos.decide import (filter_law_check, fixed_points, hitting_set, is_transitive,
                             overlay, period)
from symchaos.ellis import sweep
from symchaos.errors import EmptyShift
from symchaos.witness import liyorke_check, scrambled_pairs


def test_criterion_1_construction_certificates(record_acceptance, tmp_path, capsys):
    t0 = time.perf_counter()
    results = {}
    for name in ("full2", "golden"):
        sft = str(SFTS / f"{name}.json")
        cert = tmp_path / f"{name}.cert.json"
        built = main(["construct", sft, "-N", "4", "--proximal", "-o", str(cert)])
        verified = main(["verify", str(cert), sft])
        capsys.readouterr()
        levels = json.loads(cert.read_text())["result"]["stages"]
        results[name] = built == 0 and verified == 0 and len(levels) == 4
    elapsed = time.perf_counter() - t0
    ok = all(results.values()) and elapsed < 10
    record_acceptance(1, ok, f"verify passes on {sorted(k for k, v in results.items() if v)}"
                             f" at N=4 proximal, {elapsed:.2f}s (limit 10s)")
    assert ok


def test_criterion_2_criterion_to_witness_chain(record_acceptance):
    entries, _ = gen_corpus(2, 25, alphabet_max=4, vertex_max=6, require="chaotic_fixed")
    half = Fraction(1, 2)
    bad = []
    pairs_checked = 0
    for name, X in entries:
        rep = classify(X)
        if (rep.flags["densely_uniformly_chaotic"] != "yes"
                or rep.provenance["densely_uniformly_chaotic"] != "fixed_point"):
            bad.append((name, "classify"))
            continue
        for w in scrambled_pairs(X, 10, 8, half, 4096):
            pairs_checked += 1
            if not liyorke_check(w, 8, half, X):
                bad.append((name, "pair"))
    ok = len(entries) == 25 and not bad
    record_acceptance(2, ok, f"{len(entries)} shifts marked via fixed point, "
                             f"{pairs_checked} pairs at 2^-8 / 1/2 / 4096, {len(bad)} failures")
    assert ok, bad


def test_criterion_3_hitting_set_oracle(record_acceptance):
    entries, _ = gen_corpus(2024, 40, alphabet_max=3, vertex_max=4)
    randoms = [X for _, X in entries if len(X.alphabet) >= 2][:5]
    shifts = [catalog.full_shift(2), catalog.golden_mean()] + randoms
    mismatches = compared = 0
    for X in shifts:
        words = [u for L in (1, 2, 3) for u in X.language(L)]
        for U in words:
            for V in words:
                compared += 1
                if list(hitting_set(X, U, V, 24).members) != hitting_oracle(X, U, V, 24):
                    mismatches += 1
    ok = len(shifts) == 7 and mismatches == 0
    record_acceptance(3, ok, f"{compared} cylinder pairs on {len(shifts)} shifts, H=24, "
                             f"{mismatches} mismatches")
    assert ok


def test_criterion_4_filter_law(record_acceptance):
    shifts = named_shifts()
    failures = total = 0
    for name, X in sorted(shifts.items()):
        rng = random.Random(f"filter-{name}")
        done = 0
        while done < 100:
            U1 = rng.choice(X.language(rng.randint(1, 3)))
            U2 = rng.choice(X.language(rng.randint(1, 3)))
            n = rng.randint(1, 8)
            U3 = overlay(U1, U2, n)
            if U3 is None or not X.read(X.full, U3):
                continue
            done += 1
            total += 1
            if filter_law_check(X, U1, U2, n, 128) is not True:
                failures += 1
    ok = len(shifts) == 7 and total == 700 and failures == 0
    record_acceptance(4, ok, f"{total} instances on {len(shifts)} shifts, H=128, "
                             f"{failures} failures")
    assert ok


def test_criterion_5_ellis_sweep(record_acceptance):
    t0 = time.perf_counter()
    rep = sweep(5)
    elapsed = time.perf_counter() - t0
    ok = rep["systems"] == 3125 + 256 + 27 + 4 + 1 and rep["violation_count"] == 0 \
        and elapsed < 60
    record_acceptance(5, ok, f"{rep['systems']} maps, {rep['violation_count']} violations, "
                             f"{elapsed:.2f}s (limit 60s)")
    assert ok, rep["violations"][:5]


def test_criterion_6_product_weak_mixing(record_acceptance):
    shifts = mismatches = 0
    for n in (1, 2, 3):
        for bits in cartesian((0, 1), repeat=n * n):
            A = [bits[i * n:(i + 1) * n] for i in range(n)]
            try:
                X = catalog.vertex_shift(A)
            except EmptyShift:
                continue
            shifts += 1
            product_transitive = scc_count(product(X, X)) == 1
            t = is_transitive(X).verdict
            if product_transitive != (t and period(X)[0] == 1):
                mismatches += 1
    ok = mismatches == 0 and shifts > 0
    record_acceptance(6, ok, f"{shifts} vertex shifts on <= 3 vertices, {mismatches} mismatches")
    assert ok


def test_criterion_7_cyclic_decomposition(record_acceptance):
    details = []
    ok = True
    for d in (2, 3, 4):
        X = catalog.cyclic_blocks(d)
        dec = decompose_periodic(X)
        bad_lengths = check_decomposition(X, dec, max_len=12)
        good = (dec.d == d and not bad_lengths and is_transitive(dec.X0).verdict
                and bool(fixed_points(dec.X0)))
        ok &= good
        details.append(f"d={d}:{'ok' if good else 'bad'}")
    record_acceptance(7, ok, f"language match for L <= 12 and X_0 transitive with a fixed "
                             f"point: {', '.join(details)}")
    assert ok


def _forgeries(report):
    """Reports that break one implication of an otherwise genuine report."""
    flags = report.flags
    out = []
    for hi, lo in IMPLICATIONS:
        if flags[hi] == "yes" and not (report.finite and hi == "weakly_mixing"):
            forged = dict(flags)
            forged[lo] = "no"
            out.append({"flags": forged, "finite": report.finite})
    return out


def test_criterion_8_implication_audit(record_acceptance):
    entries, _ = gen_corpus(8, 100, alphabet_max=4, vertex_max=6)
    failed = forged = missed = 0
    for _, X in entries:
        rep = classify(X)
        if not implication_audit(rep)[0]:
            failed += 1
        for doc in _forgeries(rep):
            forged += 1
            if implication_audit(doc)[0]:
                missed += 1
    hand = {f: "unknown" for f in FLAGS}
    hand.update(weakly_mixing="yes", liyorke="no")
    forged += 1
    missed += implication_audit({"flags": hand})[0]
    ok = len(entries) == 100 and failed == 0 and missed == 0 and forged > 100
    record_acceptance(8, ok, f"{len(entries)} reports audited ({failed} failed), "
                             f"{forged} forged reports, {missed} accepted")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider",
                          "-W", "ignore::pytest.PytestAssertRewriteWarning"]))

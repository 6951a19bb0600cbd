from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import named_shifts
from symchaos import catalog
from symchaos.errors import HypothesisUnmet
from symchaos.shift import PointRep, build_from_forbidden, dist, dyadic
from symchaos.witness import (PairWitness, kronecker_times, liyorke_check, make_scrambled_pair,
                              scrambled_pairs, strong_liyorke_check)


def w(s):
    return tuple(s)


HALF = Fraction(1, 2)
WITH_PAIRS = ["full2", "full3", "golden", "no_three_ones", "even_blocks", "three_symbols"]


class TestScrambledPair:
    def test_full2(self, full2):
        pw = make_scrambled_pair(full2, 8, Fraction(1), horizon=4096)
        assert pw.x != pw.y
        assert liyorke_check(pw, 8, Fraction(1), full2)
        assert min(d for _, d in pw.prox_times) < dyadic(8)
        assert any(d == 1 for _, d in pw.apart_times)

    def test_golden(self, golden):
        pw = make_scrambled_pair(golden, 6, HALF, horizon=4096)
        assert liyorke_check(pw, 6, HALF, golden)
        assert pw.anchor == w("0")

    @pytest.mark.parametrize("X", [catalog.cycle_shift(2), catalog.cyclic_blocks(3)],
                             ids=["two_cycle", "blocks3"])
    def test_hypothesis_unmet(self, X):
        with pytest.raises(HypothesisUnmet):
            make_scrambled_pair(X, 4)

    def test_not_transitive(self):
        with pytest.raises(HypothesisUnmet):
            make_scrambled_pair(build_from_forbidden(["a", "b"], ["ab", "ba"]), 4)

    def test_bad_delta(self, full2):
        with pytest.raises(ValueError):
            make_scrambled_pair(full2, 4, Fraction(3, 2))

    def test_deterministic(self, golden):
        a = make_scrambled_pair(golden, 8, HALF, index=3)
        b = make_scrambled_pair(golden, 8, HALF, index=3)
        assert a.to_dict() == b.to_dict()

    @pytest.mark.parametrize("name", WITH_PAIRS)
    def test_ten_pairs(self, name):
        X = named_shifts()[name]
        pairs = scrambled_pairs(X, 10, 8, HALF, horizon=4096)
        assert len({(p.x, p.y) for p in pairs}) == 10
        for pw in pairs:
            assert liyorke_check(pw, 8, HALF, X)
            # an apart time after every listed proximal time
            last_prox = max(m for m, _ in pw.prox_times)
            assert any(m > last_prox and d >= HALF for m, d in pw.apart_times)

    @settings(max_examples=15, deadline=None)
    @given(st.sampled_from(WITH_PAIRS), st.integers(2, 10), st.integers(0, 4),
           st.sampled_from([Fraction(1), HALF, Fraction(1, 4)]))
    def test_distances_recompute(self, name, e, index, delta):
        X = named_shifts()[name]
        pw = make_scrambled_pair(X, e, delta, horizon=1024, index=index)
        for m, d in pw.prox_times + pw.apart_times:
            assert dist(pw.x.shift(m), pw.y.shift(m)) == d
        for k, d in pw.recur_times:
            assert max(dist(pw.x.shift(k), pw.x), dist(pw.y.shift(k), pw.y)) == d
        assert liyorke_check(pw, e, delta, X)


class TestChecks:
    def test_tampered_distance(self, full2):
        pw = make_scrambled_pair(full2, 6)
        m, d = pw.prox_times[0]
        pw.prox_times[0] = (m, d / 2)
        assert not liyorke_check(pw, 6, Fraction(1))

    def test_equal_points(self):
        x = PointRep((), w("0"))
        pw = PairWitness(x, x, [(0, Fraction(0))], [(0, Fraction(0))], [(1, Fraction(0))], 8)
        assert not liyorke_check(pw, 2, HALF)
        assert not strong_liyorke_check(pw, HALF)

    def test_asymptotic_pair(self):
        # merge after index 10: close forever, never apart again
        x = PointRep(w("0" * 10), w("0"))
        y = PointRep(w("0" * 9 + "1"), w("0"))
        prox = [(m, dist(x.shift(m), y.shift(m))) for m in (10, 20, 30)]
        apart = [(m, dist(x.shift(m), y.shift(m))) for m in range(0, 10)
                 if dist(x.shift(m), y.shift(m)) >= Fraction(1, 16)]
        recur = [(1, max(dist(x.shift(1), x), dist(y.shift(1), y)))]
        pw = PairWitness(x, y, prox, apart, recur, 64)
        assert not strong_liyorke_check(pw, Fraction(1, 16))
        assert not liyorke_check(pw, 4, Fraction(1, 16))

    def test_strong_liyorke_full2(self, full2):
        pw = make_scrambled_pair(full2, 8, Fraction(1), horizon=4096)
        assert strong_liyorke_check(pw, Fraction(1, 16))

    @pytest.mark.parametrize("name", WITH_PAIRS)
    def test_strong_liyorke_recur_times(self, name):
        X = named_shifts()[name]
        pw = make_scrambled_pair(X, 8, HALF, horizon=4096)
        assert pw.recur_times
        assert strong_liyorke_check(pw, Fraction(1, 16))


class TestKronecker:
    def test_fixed_point(self, full2):
        z = PointRep.periodic(w("0"))
        assert kronecker_times(full2, [z], [z], Fraction(1, 1024), 64) == 1

    def test_two_cycle(self, two_cycle):
        x, y = PointRep.periodic(w("ab")), PointRep.periodic(w("ba"))
        assert kronecker_times(two_cycle, [x], {x: y}, HALF, 16) == 1

    def test_construct_then_find(self, full2):
        e, k = 5, 7
        targets = [PointRep.periodic(w("01")), PointRep.periodic(w("1"))]
        x1 = PointRep(w("0000000") + targets[0].word(e + 1), w("0"))
        x2 = PointRep(w("1000000") + targets[1].word(e + 1), w("0"))
        found = kronecker_times(full2, [x1, x2], targets, dyadic(e), 64)
        assert found is not None and found <= k
        for p, t in zip([x1, x2], targets):
            assert dist(p.shift(found), t) < dyadic(e)

    def test_not_found(self, full2):
        x = PointRep.periodic(w("0"))
        assert kronecker_times(full2, [x], [PointRep.periodic(w("1"))], HALF, 64) is None

    def test_bad_inputs(self, full2, golden):
        x = PointRep.periodic(w("0"))
        with pytest.raises(ValueError):
            kronecker_times(full2, [x, x], [x, x], HALF, 8)
        with pytest.raises(ValueError):
            kronecker_times(golden, [x], [PointRep.periodic(w("1"))], HALF, 8)
        with pytest.raises(ValueError):
            kronecker_times(full2, [x], [x, x], HALF, 8)

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.sampled_from("01"), max_size=6), st.lists(st.sampled_from("01"),
           min_size=1, max_size=3), st.lists(st.sampled_from("01"), min_size=1, max_size=3),
           st.integers(1, 6))
    def test_result_satisfies_inequality(self, pre, per, target, e):
        X = catalog.full_shift(2)
        x = PointRep(tuple(pre), tuple(per))
        t = PointRep.periodic(tuple(target))
        k = kronecker_times(X, [x], [t], dyadic(e), 200)
        if k is None:
            assert all(dist(x.shift(j), t) >= dyadic(e) for j in range(1, 201))
        else:
            assert dist(x.shift(k), t) < dyadic(e)
            assert all(dist(x.shift(j), t) >= dyadic(e) for j in range(1, k))

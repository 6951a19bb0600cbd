import networkx as nx
import pytest
from hypothesis import given, settings

from helpers import named_shifts, presentations
from oracles import scc_count
from symchaos import catalog
from symchaos.criterion import (criterion_check, enumerate_subsystems, orbit_subsystem,
                                prox_density_check, product, verify_criterion)
from symchaos.decide import fixed_points, is_finite, is_weakly_mixing
from symchaos.errors import FiniteShift, NotTransitive
from symchaos.shift import PointRep, build_from_forbidden, dist, dyadic


def w(s):
    return tuple(s)


def _multigraph(P, swap=False):
    G = nx.MultiDiGraph()
    for u, a, v in P.edges:
        G.add_edge(u, v, label=(a[1], a[0]) if swap else a)
    return G


class TestProduct:
    def test_full2_with_fixed_point(self, full2):
        Y = orbit_subsystem(PointRep.periodic(w("0")))
        P = product(full2, Y)
        assert len(P.vertices) == 1
        assert sorted(a for _, a, _ in P.edges) == [("0", "0"), ("1", "0")]

    def test_two_cycle_with_itself(self, two_cycle):
        assert scc_count(product(two_cycle, two_cycle)) == 2

    def test_golden_with_fixed_point(self, golden):
        P = product(golden, orbit_subsystem(PointRep.periodic(w("0"))))
        assert len(P.vertices) == 2 and len(P.edges) == 3
        assert {a[0] for _, a, _ in P.edges} == {"0", "1"}

    @pytest.mark.parametrize("name", sorted(named_shifts()))
    def test_whole_product_matches_weak_mixing(self, name):
        X = named_shifts()[name]
        assert (scc_count(product(X, X)) == 1) == is_weakly_mixing(X).verdict

    @settings(max_examples=40, deadline=None)
    @given(presentations(max_vertices=3, max_symbols=2),
           presentations(max_vertices=3, max_symbols=2))
    def test_commutative_up_to_relabeling(self, X, Y):
        try:
            A = product(X, Y)
        except Exception:
            with pytest.raises(Exception):
                product(Y, X)
            return
        B = product(Y, X)
        assert nx.is_isomorphic(_multigraph(A), _multigraph(B, swap=True),
                                edge_match=lambda e, f: sorted(d["label"] for d in e.values())
                                == sorted(d["label"] for d in f.values()))


class TestEnumerate:
    def test_golden(self, golden):
        subs = enumerate_subsystems(golden, 3)
        kinds = [s.kind for s in subs]
        assert kinds[0] == "fixed_point" and subs[0].point == PointRep.periodic(w("0"))
        assert any(s.point == PointRep.periodic(w("01")) for s in subs)
        assert kinds[-1] == "whole"

    def test_full2(self, full2):
        pts = {s.point for s in enumerate_subsystems(full2, 2) if s.point}
        assert {PointRep.periodic(w(v)) for v in ("0", "1", "01")} <= pts

    def test_three_cycle(self):
        subs = enumerate_subsystems(catalog.cycle_shift(3), 3)
        assert [s.kind for s in subs] == ["whole"]

    def test_order_fixed_points_first(self):
        X = named_shifts()["three_symbols"]
        subs = enumerate_subsystems(X, 4)
        rank = {"fixed_point": 0, "periodic_orbit": 1, "scc_subshift": 2, "whole": 3}
        seq = [rank[s.kind] for s in subs]
        assert seq == sorted(seq)

    @pytest.mark.parametrize("name", sorted(named_shifts()))
    def test_subsystems_are_inside(self, name):
        X = named_shifts()[name]
        edges = set(X.edges)
        for s in enumerate_subsystems(X, 4):
            if s.point is not None:
                assert X.accepts(s.point)
            else:
                assert set(s.presentation.edges) <= edges


class TestCriterion:
    def test_golden(self, golden):
        r = criterion_check(golden)
        assert r.satisfied and r.witness_Y.point == PointRep.periodic(w("0"))
        assert verify_criterion(golden, r)

    def test_full2(self, full2):
        r = criterion_check(full2)
        assert r.witness_Y.point == PointRep.periodic(w("0"))

    def test_errors(self, two_cycle):
        with pytest.raises(FiniteShift):
            criterion_check(two_cycle)
        with pytest.raises(NotTransitive):
            criterion_check(build_from_forbidden(["a", "b"], ["ab", "ba"]))

    def test_period_two_unsatisfied_within_budget(self):
        r = criterion_check(catalog.cyclic_blocks(2), budget=4)
        assert not r.satisfied
        assert "budget" in r.certificate["reason"]

    def test_forged_witness_rejected(self, golden):
        r = criterion_check(golden)
        r.witness_Y = orbit_subsystem(PointRep.periodic(w("1")))
        assert not verify_criterion(golden, r)

    @settings(max_examples=60, deadline=None)
    @given(presentations(max_vertices=3, max_symbols=2))
    def test_fixed_point_always_works(self, X):
        if scc_count(X) != 1 or is_finite(X)[0] or not fixed_points(X):
            return
        r = criterion_check(X)
        assert r.satisfied and r.witness_Y.kind == "fixed_point"
        assert verify_criterion(X, r)


class TestProxDensity:
    def test_full2_two_cylinders(self, full2):
        rep = prox_density_check(full2, 2, 4, horizon=64, tuples=[[w("0"), w("1")]])
        s = rep["samples"][0]
        assert s["witnessed"] and s["m"] == 1
        pts = [PointRep(w(p["prefix"]), w(p["period"])) for p in s["points"]]
        assert pts[0][0] == "0" and pts[1][0] == "1"
        assert dist(pts[0].shift(1), pts[1].shift(1)) < dyadic(4)

    def test_identical_tuple(self, golden):
        rep = prox_density_check(golden, 3, 2, horizon=64, tuples=[[w("0101")] * 3])
        assert rep["samples"][0]["m"] == 0
        assert rep["density"] == 1.0

    def test_two_cycle_fails(self, two_cycle):
        rep = prox_density_check(two_cycle, 2, 3, horizon=4096, tuples=[[w("ab"), w("ba")]])
        assert not rep["samples"][0]["witnessed"]
        assert rep["density"] == 0.0

    def test_needs_two(self, full2):
        with pytest.raises(ValueError):
            prox_density_check(full2, 1, 3)

    @pytest.mark.parametrize("name", ["full2", "golden", "no_three_ones", "three_symbols"])
    @pytest.mark.parametrize("n", [2, 3])
    def test_full_density_when_criterion_holds(self, name, n):
        X = named_shifts()[name]
        assert criterion_check(X).satisfied
        rep = prox_density_check(X, n, 6, horizon=1 << 14, samples=50)
        assert rep["density"] == 1.0
        for s in rep["samples"]:
            pts = [PointRep(_word(p["prefix"]), _word(p["period"])) for p in s["points"]]
            assert all(X.accepts(p) for p in pts)
            for p, u in zip(pts, s["cylinders"]):
                assert p.word(len(u)) == _word(u)


def _word(doc):
    return tuple(doc) if isinstance(doc, str) else tuple(doc)

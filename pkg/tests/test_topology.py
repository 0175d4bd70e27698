# -*- coding: utf-8 -*-
from __future__ import annotations

import itertools
import random
from functools import reduce

import pytest

from errors import SVError
from scale import BOOL, UNIT, chain_scale, m3_scale, product_scale
from svset import UNPARAMETERIZED, ParamSet, SVSet, Universe, pullback, sv_constant, sv_from_table, sv_intersection, sv_union, sv_unparameterized
from topology import (
    CrispTopology,
    SVTopology,
    check_crisp_continuity,
    check_sv_continuity,
    crisp_to_sv_topology,
    cut_join_witness,
    cut_meet_witness,
    cut_topology,
    generate_sv_topology,
    intersect_topologies,
    m3_cut_counterexample,
    m3_cut_join_counterexample,
    restrict_topology,
    slice_topology,
    soft_cut_topology,
    strong_cut,
    sv_to_crisp_topology,
    validate_crisp_topology,
    validate_sv_topology,
    weak_cut,
)

X = Universe(("x",))
AB = Universe(("a", "b"))
U3 = Universe(("a", "b", "c"))
C2 = chain_scale(2)
M3 = m3_scale()


def _sv(universe, scale, *values):
    return sv_unparameterized(universe, scale, dict(zip(universe, values)))


def _indiscrete(universe, scale):
    return SVTopology(universe, scale, (sv_constant(universe, UNPARAMETERIZED, scale, scale.bottom),
                                        sv_constant(universe, UNPARAMETERIZED, scale, scale.top)))


def _discrete_bool(universe):
    opens = tuple(_sv(universe, BOOL, *bits) for bits in itertools.product((False, True), repeat=len(universe)))
    return SVTopology(universe, BOOL, opens)


# ============================================================
# TAGLI
# ============================================================

def test_strong_cut_examples():
    A = _sv(X, chain_scale(10), 7)
    assert strong_cut(A, 7) == frozenset()
    assert strong_cut(A, 6) == {"x"}
    assert strong_cut(_sv(X, M3, "p"), "0") == {"x"}
    bottom = sv_constant(U3, UNPARAMETERIZED, C2, 0)
    assert all(strong_cut(bottom, a) == frozenset() for a in (0, 1))


def test_strong_cut_at_top_is_refused():
    with pytest.raises(SVError) as e:
        strong_cut(_sv(X, C2, 1), 2)
    assert e.value.code == "alpha-is-top"


def test_weak_cut_examples():
    A = _sv(U3, C2, 0, 2, 1)
    assert weak_cut(A, 0) == set(U3)
    assert weak_cut(A, 2) == {"b"}
    B = _sv(X, chain_scale(5), 3)
    assert weak_cut(B, 3) == {"x"} and weak_cut(B, 2) == {"x"}
    assert weak_cut(B, 4) == frozenset()


# ============================================================
# VALIDAZIONE E CHIUSURA
# ============================================================

def test_indiscrete_and_discrete_are_valid():
    assert validate_sv_topology(_indiscrete(U3, M3)).valid
    report = validate_sv_topology(_discrete_bool(U3))
    assert report.valid and report.size == 8
    assert len(sv_to_crisp_topology(_discrete_bool(U3))) == 8


def test_missing_join_is_named():
    A, B = _sv(AB, C2, 1, 0), _sv(AB, C2, 0, 1)
    full = generate_sv_topology([A, B])
    assert len(full) == 5
    assert validate_sv_topology(full).valid
    broken = SVTopology(AB, C2, tuple(O for O in full.opens if O.values != ((1,), (1,))))
    report = validate_sv_topology(broken)
    assert not report.valid
    failed = {a.axiom: a for a in report.failures()}
    assert list(failed) == ["closed-under-joins"]
    assert failed["closed-under-joins"].witness == {"operands": [1, 2], "missing": {"a": 1, "b": 1}}


def test_missing_constants_are_reported():
    report = validate_sv_topology(SVTopology(AB, C2, (_sv(AB, C2, 1, 0),)))
    failed = {a.axiom: a for a in report.failures()}
    assert failed["contains-bottom"].witness == {"missing": {"a": 0, "b": 0}}
    assert failed["contains-top"].witness == {"missing": {"a": 2, "b": 2}}


def test_opens_must_share_shape():
    with pytest.raises(SVError) as e:
        SVTopology(AB, C2, (_sv(AB, chain_scale(3), 0, 0),))
    assert e.value.code == "shape-mismatch"


def test_generate_small_cases():
    empty = generate_sv_topology([], universe=U3, scale=C2)
    assert [O.values for O in empty.opens] == [((0,), (0,), (0,)), ((2,), (2,), (2,))]
    A = _sv(U3, C2, 0, 1, 2)
    single = generate_sv_topology([A])
    assert len(single) == 3 and single.contains(A)
    with pytest.raises(SVError) as e:
        generate_sv_topology([])
    assert e.value.code == "usage"


def test_generate_respects_cap():
    with pytest.raises(SVError) as e:
        generate_sv_topology([_sv(AB, C2, 1, 0), _sv(AB, C2, 0, 1)], cap=4)
    assert e.value.code == "closure-size-cap-exceeded"


def test_generate_is_deterministic():
    gens = [_sv(U3, chain_scale(5), 1, 3, 5), _sv(U3, chain_scale(5), 4, 2, 0)]
    first = generate_sv_topology(gens).to_document()
    second = generate_sv_topology(gens).to_document()
    assert first == second


def test_generated_chain_topologies_validate():
    C5 = chain_scale(5)
    for seed in range(100):
        rng = random.Random(seed)
        rows = [[rng.randint(0, 5) for _ in U3] for _ in range(rng.randint(1, 3))]
        tau = generate_sv_topology([_sv(U3, C5, *r) for r in rows])
        assert validate_sv_topology(tau).valid, rows
        for alpha in range(5):
            assert validate_crisp_topology(cut_topology(tau, alpha)).valid, (rows, alpha)

    for alpha in range(5):
        assert validate_crisp_topology(cut_topology(tau, alpha)).valid


def test_generated_m3_topology_validates():
    tau = generate_sv_topology([_sv(AB, M3, "p", "0"), _sv(AB, M3, "q", "1")])
    assert validate_sv_topology(tau).valid


# ============================================================
# TOPOLOGIE DEI TAGLI
# ============================================================

def test_cut_topology_examples():
    T = cut_topology(_indiscrete(U3, C2), 0)
    assert set(T.opens) == {frozenset(), frozenset(U3)}
    P = cut_topology(_discrete_bool(U3), False)
    assert len(P) == 8


def test_cut_topology_refusals():
    with pytest.raises(SVError) as e:
        cut_topology(_indiscrete(U3, M3), "0")
    assert e.value.code == "not-a-chain"
    assert "M3" in e.value.detail
    with pytest.raises(SVError) as e:
        cut_topology(_indiscrete(U3, C2), 2)
    assert e.value.code == "alpha-is-top"


def test_m3_meet_counterexample():
    report = m3_cut_counterexample()
    assert report.counterexample
    assert report.cuts_combined == ["x"]
    assert report.cut_of_combined == []
    assert report.combined_value == "0"
    assert not cut_meet_witness(C2, 1, 2, 0).counterexample
    assert not cut_meet_witness(C2, 1, 2, 1).counterexample


def test_m3_join_counterexample():
    report = m3_cut_join_counterexample()
    assert report.operation == "join"
    assert report.counterexample
    assert report.combined_value == "1"
    assert report.cuts_combined == [] and report.cut_of_combined == ["x"]
    assert not cut_join_witness(M3, "p", "q", "0").counterexample


def _random_family(rng, scale, size=3):
    return [SVSet(U3, UNPARAMETERIZED, scale, tuple((scale.random_element(rng),) for _ in U3)) for _ in range(size)]


def test_cut_distribution_on_random_families():
    scales = [chain_scale(4), UNIT, M3, m3_scale("fix"), product_scale(BOOL, C2)]
    rng = random.Random(20240611)
    for trial in range(500):
        S = scales[trial % len(scales)]
        family = _random_family(rng, S, size=rng.randint(1, 4))
        alpha = S.random_element(rng)
        if alpha == S.top:
            alpha = S.bottom
        joined = reduce(sv_union, family)
        union_of_cuts = frozenset().union(*(strong_cut(A, alpha) for A in family))
        if S.is_chain or alpha == S.bottom:
            assert strong_cut(joined, alpha) == union_of_cuts, (S.name, trial)
        else:
            assert union_of_cuts <= strong_cut(joined, alpha), (S.name, trial)
        if S.is_chain:
            A, B = family[0], family[-1]
            assert strong_cut(sv_intersection(A, B), alpha) == strong_cut(A, alpha) & strong_cut(B, alpha)


# ============================================================
# CONTINUITÀ
# ============================================================

def test_identity_is_continuous():
    tau = generate_sv_topology([_sv(U3, C2, 0, 1, 2)])
    report = check_sv_continuity({x: x for x in U3}, tau, tau)
    assert report.continuous and report.checked == len(tau)


def test_maps_into_indiscrete_are_continuous():
    tau_U = _indiscrete(AB, C2)
    assert check_sv_continuity({"a": "x", "b": "x"}, tau_U, _indiscrete(X, C2)).continuous


def test_discontinuity_is_reported():
    tau_U = _indiscrete(AB, C2)
    tau_V = generate_sv_topology([_sv(AB, C2, 2, 0)])
    report = check_sv_continuity({"a": "a", "b": "b"}, tau_U, tau_V)
    assert not report.continuous
    assert report.failing_open == {"a": 2, "b": 0}


def test_continuity_scale_mismatch():
    with pytest.raises(SVError) as e:
        check_sv_continuity({"x": "x"}, _indiscrete(X, C2), _indiscrete(X, BOOL))
    assert e.value.code == "scale-mismatch"


def test_composition_of_continuous_maps():
    W = Universe(("z1", "z2"))
    V = Universe(("v1", "v2", "v3"))
    f = {"a": "v1", "b": "v3", "c": "v3"}
    g = {"v1": "z1", "v2": "z2", "v3": "z2"}
    tau_W = generate_sv_topology([_sv(W, C2, 1, 2), _sv(W, C2, 2, 0)])
    tau_V = generate_sv_topology([pullback(g, None, B, universe=V) for B in tau_W.opens] + [_sv(V, C2, 0, 2, 1)])
    tau_U = generate_sv_topology([pullback(f, None, B, universe=U3) for B in tau_V.opens])
    assert check_sv_continuity(f, tau_U, tau_V).continuous
    assert check_sv_continuity(g, tau_V, tau_W).continuous
    gf = {x: g[f[x]] for x in U3}
    assert check_sv_continuity(gf, tau_U, tau_W).continuous


def test_continuity_passes_to_cut_topologies():
    V = Universe(("v1", "v2"))
    f = {"a": "v1", "b": "v2", "c": "v1"}
    tau_V = generate_sv_topology([_sv(V, chain_scale(3), 3, 1)])
    tau_U = generate_sv_topology([pullback(f, None, B, universe=U3) for B in tau_V.opens])
    for alpha in range(3):
        for B in tau_V.opens:
            preimage = frozenset(x for x in U3 if f[x] in strong_cut(B, alpha))
            assert preimage == strong_cut(pullback(f, None, B, universe=U3), alpha)
        report = check_crisp_continuity(f, cut_topology(tau_U, alpha), cut_topology(tau_V, alpha))
        assert report.continuous


def test_random_continuous_maps_have_continuous_cuts():
    for seed in range(100):
        rng = random.Random(seed)
        k = rng.randint(1, 4)
        C = chain_scale(k)
        V = Universe(tuple(f"v{i}" for i in range(rng.randint(1, 3))))
        f = {x: rng.choice(V.elements) for x in U3}
        tau_V = generate_sv_topology([_sv(V, C, *(rng.randint(0, k) for _ in V)) for _ in range(rng.randint(1, 3))])
        extra = [_sv(U3, C, *(rng.randint(0, k) for _ in U3)) for _ in range(rng.randint(0, 2))]
        tau_U = generate_sv_topology([pullback(f, None, B, universe=U3) for B in tau_V.opens] + extra)
        assert check_sv_continuity(f, tau_U, tau_V).continuous, seed
        for alpha in range(k):
            assert check_crisp_continuity(f, cut_topology(tau_U, alpha), cut_topology(tau_V, alpha)).continuous, (seed, alpha)



def test_crisp_continuity_needs_total_map():
    T = CrispTopology(AB, (frozenset(), frozenset(AB)))
    with pytest.raises(SVError) as e:
        check_crisp_continuity({"a": "a"}, T, T)
    assert e.value.code == "non-total-map"


# ============================================================
# SLICE, INTERSEZIONI, RESTRIZIONI
# ============================================================

PQ = ParamSet(("p", "q"))


def test_parameterized_indiscrete_slice():
    C3 = chain_scale(3)
    tau = SVTopology(U3, C3, (sv_constant(U3, PQ, C3, 0), sv_constant(U3, PQ, C3, 3)), PQ)
    sliced = slice_topology(tau, "p")
    assert [O.values for O in sliced.opens] == [((0,), (0,), (0,)), ((3,), (3,), (3,))]
    with pytest.raises(SVError) as e:
        slice_topology(tau, "r")
    assert e.value.code == "unknown-param"


def test_random_parameterized_family_slices_validate():
    C3 = chain_scale(3)
    rng = random.Random(7)
    for _ in range(20):
        gens = [sv_from_table(U3, PQ, C3, {(x, e): rng.randint(0, 3) for x in U3 for e in PQ}) for _ in range(2)]
        tau = generate_sv_topology(gens)
        for e in PQ:
            assert validate_sv_topology(slice_topology(tau, e)).valid


def test_invalid_parameterized_family_is_refused():
    C3 = chain_scale(3)
    tau = SVTopology(U3, C3, (sv_constant(U3, PQ, C3, 1),), PQ)
    with pytest.raises(SVError) as e:
        slice_topology(tau, "p")
    assert e.value.code == "invalid-family"


def test_soft_cut_topology_on_bool():
    gens = [sv_from_table(U3, PQ, BOOL, {(x, e): (x == "a") == (e == "p") for x in U3 for e in PQ})]
    soft = soft_cut_topology(generate_sv_topology(gens), False)
    assert set(soft) == {"p", "q"}
    assert frozenset({"a"}) in soft["p"]
    assert frozenset({"b", "c"}) in soft["q"]
    assert all(validate_crisp_topology(T).valid for T in soft.values())


def test_intersection_and_restriction_validate():
    C5 = chain_scale(5)
    t1 = generate_sv_topology([_sv(U3, C5, 1, 3, 5), _sv(U3, C5, 4, 2, 0)])
    t2 = generate_sv_topology([_sv(U3, C5, 1, 3, 5)])
    both = intersect_topologies(t1, t2)
    assert validate_sv_topology(both).valid
    assert len(both) == len(t2)
    sub = restrict_topology(t1, ["c", "a"])
    assert sub.universe.elements == ("a", "c")
    assert validate_sv_topology(sub).valid
    with pytest.raises(SVError) as e:
        restrict_topology(t1, ["z"])
    assert e.value.code == "target-mismatch"


def test_crisp_bridge_and_validation():
    T = CrispTopology(U3, (frozenset(), frozenset({"a"}), frozenset({"b"}), frozenset(U3)))
    report = validate_crisp_topology(T)
    assert not report.valid
    failed = {a.axiom: a for a in report.failures()}
    assert failed["closed-under-unions"].witness == {"operands": [["a"], ["b"]], "missing": ["a", "b"]}
    fixed = CrispTopology(U3, T.opens + (frozenset({"a", "b"}),))
    assert validate_crisp_topology(fixed).valid
    tau = crisp_to_sv_topology(fixed)
    assert validate_sv_topology(tau).valid
    assert set(sv_to_crisp_topology(tau).opens) == set(fixed.opens)

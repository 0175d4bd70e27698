# -*- coding: utf-8 -*-
from __future__ import annotations

import itertools
import random
from fractions import Fraction as F

import pytest

import encoders as enc
from errors import SVError
from scale import BOOL, IFS, UNIT, chain_scale, function_scale, interval_scale, m3_scale
from svset import ParamSet, Universe, sv_complement, sv_constant, sv_from_table, sv_intersection, sv_union

U = Universe(("a", "b", "c"))
E = ParamSet(("p", "q"))
U6 = Universe(tuple("abcdef"))


def _powerset(universe):
    xs = universe.elements
    return [frozenset(c) for r in range(len(xs) + 1) for c in itertools.combinations(xs, r)]


def _unit(rng):
    d = rng.randint(1, 12)
    return F(rng.randint(0, d), d)


# ============================================================
# CRISP E SOFT
# ============================================================

def test_crisp_bounds():
    assert enc.crisp_to_sv(set(), U) == sv_constant(U, enc.UNPARAMETERIZED, BOOL, False)
    assert enc.crisp_to_sv(U.elements, U) == sv_constant(U, enc.UNPARAMETERIZED, BOOL, True)


def test_crisp_outside_universe():
    with pytest.raises(SVError) as e:
        enc.crisp_to_sv({"z"}, U)
    assert e.value.code == "target-mismatch"


def test_crisp_roundtrip_and_ops_on_every_subset():
    subs = _powerset(U6)
    assert len(subs) == 64
    encoded = {S: enc.crisp_to_sv(S, U6) for S in subs}
    for S, A in encoded.items():
        assert enc.sv_to_crisp(A) == S
        assert enc.crisp_to_sv(frozenset(U6) - S, U6) == sv_complement(A)
    for S, T in itertools.product(subs, repeat=2):
        A, B = encoded[S], encoded[T]
        assert encoded[S | T] == sv_union(A, B)
        assert encoded[S & T] == sv_intersection(A, B)



def test_soft_empty_is_bottom():
    F_ = enc.SoftSet(U, E, {"p": set(), "q": set()})
    assert enc.soft_to_sv(F_) == sv_constant(U, E, BOOL, False)


def test_soft_requires_every_param():
    with pytest.raises(SVError) as e:
        enc.SoftSet(U, E, {"p": {"a"}})
    assert e.value.code == "non-total-map"


def test_soft_ops_match_pointwise_on_every_assignment():
    U4, E3 = Universe(("a", "b", "c", "d")), ParamSet(("p", "q", "r"))
    subs = _powerset(U4)
    assignments = [enc.SoftSet(U4, E3, dict(zip(E3, images))) for images in itertools.product(subs, repeat=3)]
    assert len(assignments) == 16 ** 3
    for i, F_ in enumerate(assignments):
        G_ = assignments[(i * 7 + 1) % len(assignments)]
        A, B = enc.soft_to_sv(F_), enc.soft_to_sv(G_)
        assert enc.sv_to_soft(A) == F_
        assert enc.soft_to_sv(enc.soft_union(F_, G_)) == sv_union(A, B)
        assert enc.soft_to_sv(enc.soft_intersection(F_, G_)) == sv_intersection(A, B)
        assert enc.soft_to_sv(enc.soft_complement(F_)) == sv_complement(A)



def test_wrong_scale_decoding():
    A = sv_constant(U, enc.UNPARAMETERIZED, chain_scale(2), 1)
    with pytest.raises(SVError) as e:
        enc.sv_to_crisp(A)
    assert e.value.code == "wrong-scale"
    with pytest.raises(SVError) as e:
        enc.sv_to_fuzzy(A)
    assert e.value.code == "wrong-scale"
    with pytest.raises(SVError) as e:
        enc.sv_to_crisp(sv_constant(U, E, BOOL, True))
    assert e.value.code == "wrong-scale"


# ============================================================
# FUZZY, MULTINSIEMI, L-FUZZY
# ============================================================

def test_fuzzy_roundtrip_and_range():
    mu = {"a": "0.2", "b": "1/3", "c": 1}
    A = enc.fuzzy_to_sv(mu, U)
    assert enc.sv_to_fuzzy(A) == {"a": F(1, 5), "b": F(1, 3), "c": F(1)}
    with pytest.raises(SVError) as e:
        enc.fuzzy_to_sv({"a": "1.2", "b": 0, "c": 0}, U)
    assert e.value.code == "out-of-range"
    with pytest.raises(SVError) as e:
        enc.fuzzy_to_sv({"a": 0}, U)
    assert e.value.code == "non-total-map"


def test_multiset_zero_is_bottom_and_ops():
    assert enc.multiset_to_sv({}, 3, U) == sv_constant(U, enc.UNPARAMETERIZED, chain_scale(3), 0)
    m1, m2 = {"a": 2, "b": 1}, {"b": 3, "c": 1}
    A, B = enc.multiset_to_sv(m1, 3, U), enc.multiset_to_sv(m2, 3, U)
    assert enc.multiset_to_sv(enc.multiset_union(m1, m2), 3, U) == sv_union(A, B)
    assert enc.multiset_to_sv(enc.multiset_intersection(m1, m2), 3, U) == sv_intersection(A, B)
    assert enc.multiset_to_sv(enc.multiset_complement(m1, 3, U), 3, U) == sv_complement(A)
    assert enc.sv_to_multiset(A) == {"a": 2, "b": 1, "c": 0}


def test_multiset_out_of_range():
    with pytest.raises(SVError) as e:
        enc.multiset_to_sv({"a": 4}, 3, U)
    assert e.value.code == "out-of-range"


def test_random_fuzzy_and_multiset_roundtrips():
    rng = random.Random(41)
    for _ in range(200):
        mu = {x: _unit(rng) for x in U6}
        assert enc.sv_to_fuzzy(enc.fuzzy_to_sv(mu, U6)) == mu
        k = rng.randint(1, 6)
        m = {x: rng.randint(0, k) for x in U6}
        A = enc.multiset_to_sv(m, k, U6)
        assert A.scale == chain_scale(k)
        assert enc.sv_to_multiset(A) == m



def test_lfuzzy_on_m3():
    M3 = m3_scale()
    mu = {"a": "p", "b": "q", "c": "1"}
    A = enc.lfuzzy_to_sv(mu, M3, U)
    assert enc.sv_to_lfuzzy(A) == mu
    assert sv_complement(A).single() == ("q", "p", "0")
    with pytest.raises(SVError) as e:
        enc.lfuzzy_to_sv({"a": "r", "b": "p", "c": "q"}, M3, U)
    assert e.value.code == "out-of-range"


# ============================================================
# IFS
# ============================================================

def test_ifs_top_and_complement():
    top = enc.IFSPair({x: F(1) for x in U}, {x: F(0) for x in U})
    assert enc.ifs_to_sv(top, U) == sv_constant(U, enc.UNPARAMETERIZED, IFS, IFS.top)
    X = Universe(("x",))
    A = enc.ifs_to_sv(enc.IFSPair({"x": "0.6"}, {"x": "0.3"}), X)
    assert sv_complement(A)("x") == (F(3, 10), F(3, 5))


def test_ifs_constraint_violation():
    with pytest.raises(SVError) as e:
        enc.IFSPair({"x": "0.7"}, {"x": "0.4"})
    assert e.value.code == "constraint-violation"


def test_ifs_native_ops_match():
    p = enc.IFSPair({"a": "0.6", "b": "0.1", "c": "0"}, {"a": "0.3", "b": "0.5", "c": "1"})
    q = enc.IFSPair({"a": "0.4", "b": "0.7", "c": "0.5"}, {"a": "0.2", "b": "0.2", "c": "0.5"})
    A, B = enc.ifs_to_sv(p, U), enc.ifs_to_sv(q, U)
    assert enc.ifs_to_sv(enc.ifs_union(p, q), U) == sv_union(A, B)
    assert enc.ifs_to_sv(enc.ifs_intersection(p, q), U) == sv_intersection(A, B)
    assert enc.ifs_to_sv(enc.ifs_complement(p), U) == sv_complement(A)
    assert enc.sv_to_ifs(A) == p
    assert sv_union(A, B)("a") == (F(3, 5), F(1, 5))


def test_random_ifs_roundtrips():
    rng = random.Random(42)
    for _ in range(200):
        mu, nu = {}, {}
        for x in U6:
            d = rng.randint(1, 12)
            a = rng.randint(0, d)
            mu[x], nu[x] = F(a, d), F(rng.randint(0, d - a), d)
        p = enc.IFSPair(mu, nu)
        A = enc.ifs_to_sv(p, U6)
        assert enc.sv_to_ifs(A) == p
        assert enc.sv_to_ifs(sv_complement(A)) == enc.ifs_complement(p)



# ============================================================
# ROUGH
# ============================================================

def test_rough_empty_pair():
    A = enc.rough_to_sv(enc.RoughPair(U, frozenset(), frozenset()))
    assert A.single() == ("(0,0)",) * 3


def test_rough_lower_must_be_inside_upper():
    with pytest.raises(SVError) as e:
        enc.RoughPair(U, frozenset({"a"}), frozenset({"b"}))
    assert e.value.code == "constraint-violation"


def _every_rough_pair():
    # ogni elemento: fuori, di frontiera o dentro
    pairs = []
    for status in itertools.product((0, 1, 2), repeat=len(U)):
        lower = frozenset(x for x, s in zip(U, status) if s == 2)
        upper = frozenset(x for x, s in zip(U, status) if s >= 1)
        pairs.append(enc.RoughPair(U, lower, upper))
    return pairs


def test_rough_ops_match_encoding_on_every_pair():
    pairs = _every_rough_pair()
    assert len(pairs) == 27
    for r1 in pairs:
        A = enc.rough_to_sv(r1)
        assert enc.sv_to_rough(A) == r1
        assert enc.rough_to_sv(enc.rough_ops(r1, None, "complement")) == sv_complement(A)
        for r2 in pairs:
            B = enc.rough_to_sv(r2)
            assert enc.rough_to_sv(enc.rough_ops(r1, r2, "union")) == sv_union(A, B)
            assert enc.rough_to_sv(enc.rough_ops(r1, r2, "intersection")) == sv_intersection(A, B)



def test_rough_binary_needs_two_pairs():
    r = enc.RoughPair(U, frozenset(), frozenset({"a"}))
    with pytest.raises(SVError) as e:
        enc.rough_ops(r, None, "union")
    assert e.value.code == "usage"


# ============================================================
# TYPE-2 E INTERVAL TYPE-2
# ============================================================

GRID = ["0", "1/2", "1"]


def test_type2_top_and_roundtrip():
    G = function_scale(GRID)
    ones = {(x, u): 1 for x in U for u in G.grid}
    A = enc.type2_to_sv(ones, GRID, U)
    assert A == sv_constant(U, enc.UNPARAMETERIZED, G, G.top)
    mu = {(x, u): (F(i, 4) if x == "a" else u) for x in U for i, u in enumerate(G.grid)}
    assert enc.sv_to_type2(enc.type2_to_sv(mu, GRID, U)) == mu


def test_type2_missing_point():
    with pytest.raises(SVError) as e:
        enc.type2_to_sv({("a", F(0)): 1}, GRID, U)
    assert e.value.code == "non-total-map"


def test_parameterized_type2():
    G = function_scale(GRID)
    mu = {(x, e, u): (u if e == "p" else 1 - u) for x in U for e in E for u in G.grid}
    A = enc.parameterized_type2_to_sv(mu, GRID, U, E)
    assert A("b", "q") == (F(1), F(1, 2), F(0))
    assert A.params == E


def test_it2_degenerate_and_violation():
    mu = {"a": "0.2", "b": "0.5", "c": "1"}
    A = enc.it2_to_sv(mu, mu, U)
    assert A.scale == interval_scale(UNIT)
    assert A("a") == (F(1, 5), F(1, 5))
    lower, upper = enc.sv_to_it2(A)
    assert lower == upper
    with pytest.raises(SVError) as e:
        enc.it2_to_sv({"a": "0.6", "b": 0, "c": 0}, {"a": "0.4", "b": 0, "c": 0}, U)
    assert e.value.code == "interval-violation"


GRID5 = ["0", "1/4", "1/2", "3/4", "1"]


def test_random_type2_and_it2_roundtrips():
    rng = random.Random(43)
    grid = function_scale(GRID5).grid
    for _ in range(200):
        mu = {(x, u): _unit(rng) for x in U6 for u in grid}
        assert enc.sv_to_type2(enc.type2_to_sv(mu, GRID5, U6)) == mu
        lower, upper = {}, {}
        for x in U6:
            lo, hi = sorted((_unit(rng), _unit(rng)))
            lower[x], upper[x] = lo, hi
        assert enc.sv_to_it2(enc.it2_to_sv(lower, upper, U6)) == (lower, upper)



# ============================================================
# LVISS
# ============================================================

def test_simple_lviss_is_degenerate():
    C = chain_scale(2)
    A = sv_from_table(U, E, C, {(x, e): i % 3 for i, (x, e) in enumerate((x, e) for x in U for e in E)})
    F_ = enc.sv_to_simple_lviss(A)
    assert F_.is_simple
    B = enc.lviss_membership_to_sv(F_)
    assert B.scale == interval_scale(C)
    for (x, e), v in A.items():
        assert B(x, e) == (v, v)


def _lviss(lower, upper):
    return enc.LVISS(U, E, UNIT,
                     {e: {x: F(lower) for x in U} for e in E},
                     {e: {x: F(upper) for x in U} for e in E})


def test_lviss_ops_match_interval_algebra():
    F_, G_ = _lviss("1/5", "1/2"), _lviss("1/10", "4/5")
    A, B = enc.lviss_membership_to_sv(F_), enc.lviss_membership_to_sv(G_)
    assert enc.lviss_membership_to_sv(enc.lviss_union(F_, G_)) == sv_union(A, B)
    assert enc.lviss_membership_to_sv(enc.lviss_intersection(F_, G_)) == sv_intersection(A, B)
    assert enc.lviss_membership_to_sv(enc.lviss_complement(F_)) == sv_complement(A)
    assert enc.lviss_membership_to_sv(enc.lviss_complement(F_))("a", "p") == (F(1, 2), F(4, 5))


def test_lviss_errors():
    F_ = _lviss("1/5", "1/2")
    with pytest.raises(SVError) as e:
        enc.lviss_membership_to_sv(enc.LVISS(U, E, UNIT, F_.lower, F_.upper, domain=("p",)))
    assert e.value.code == "variable-domain-unsupported"
    with pytest.raises(SVError) as e:
        enc.lviss_membership_to_sv(enc.LVISS(U, E, UNIT, {"p": F_.lower["p"]}, F_.upper))
    assert e.value.code == "presentation-missing"
    with pytest.raises(SVError) as e:
        enc.lviss_membership_to_sv(_lviss("1/2", "1/5"))
    assert e.value.code == "interval-violation"


def test_random_lviss_membership():
    rng = random.Random(44)
    E3 = ParamSet(("p", "q", "r"))
    for _ in range(200):
        k = rng.randint(1, 5)
        if rng.random() < 0.5:
            V, draw = chain_scale(k), lambda: rng.randint(0, k)
        else:
            V, draw = UNIT, lambda: _unit(rng)
        lower, upper = {}, {}
        for e in E3:
            lower[e], upper[e] = {}, {}
            for x in U:
                lower[e][x], upper[e][x] = sorted((draw(), draw()))
        F_ = enc.LVISS(U, E3, V, lower, upper)
        A = enc.lviss_membership_to_sv(F_)
        assert A.scale == interval_scale(V)
        for x, e in itertools.product(U, E3):
            assert A(x, e) == (lower[e][x], upper[e][x])
        assert enc.lviss_membership_to_sv(enc.lviss_complement(F_)) == sv_complement(A)



def test_lviss_formal_view():
    M3 = m3_scale()
    A = enc.lviss_formal_to_sv({"p": ("0", "p"), "q": ("q", "1")}, M3)
    assert A.universe.elements == ("p", "q")
    assert A.scale == interval_scale(M3)
    assert A("q") == ("q", "1")
    with pytest.raises(SVError) as e:
        enc.lviss_formal_to_sv({"p": ("p", "q")}, M3)
    assert e.value.code == "element-not-in-carrier"

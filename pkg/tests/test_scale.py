# -*- coding: utf-8 -*-
from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from errors import SVError
from rationals import format_rational, parse_rational
from scale import (
    BOOL,
    IFS,
    UNIT,
    FiniteLatticeSpec,
    Sampling,
    ScaleHom,
    bool_embedding,
    build_finite_scale,
    chain_scale,
    chain_to_unit,
    diagonal_hom,
    function_scale,
    identity_hom,
    interval_scale,
    join,
    leq,
    m3_scale,
    meet,
    neg,
    product_scale,
    rough_scale,
    verify_scale_hom,
    verify_scale_laws,
)


def _chain_spec(names, neg_map):
    return FiniteLatticeSpec(
        elements=list(names),
        covers=list(zip(names, names[1:])),
        neg=neg_map,
        bottom=names[0],
        top=names[-1],
    )


BOOLEAN_SQUARE = FiniteLatticeSpec(
    elements=["0", "a", "b", "1"],
    covers=[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
    neg={"0": "1", "a": "b", "b": "a", "1": "0"},
    bottom="0",
    top="1",
)

KLEENE_FIVE = _chain_spec(["0", "l", "m", "h", "1"], {"0": "1", "l": "h", "m": "m", "h": "l", "1": "0"})


# ============================================================
# OPERAZIONI
# ============================================================

def test_join_examples():
    assert join(chain_scale(10), 3, 7) == 7
    assert join(IFS, (F(6, 10), F(3, 10)), (F(4, 10), F(2, 10))) == (F(6, 10), F(2, 10))
    assert join(m3_scale(), "p", "q") == "1"


def test_meet_examples():
    assert meet(IFS, (F(6, 10), F(3, 10)), (F(4, 10), F(2, 10))) == (F(4, 10), F(3, 10))
    assert meet(m3_scale(), "p", "q") == "0"
    P = product_scale(UNIT, chain_scale(10))
    assert meet(P, (F(9, 10), 8), (F(1, 2), 3)) == (F(1, 2), 3)


def test_neg_examples():
    assert neg(UNIT, F(3, 10)) == F(7, 10)
    assert neg(rough_scale(), "(0,1)") == "(0,1)"
    assert neg(interval_scale(UNIT), (F(1, 5), F(1, 2))) == (F(1, 2), F(4, 5))
    assert neg(product_scale(BOOL, BOOL), (True, False)) == (False, True)


def test_leq_examples():
    assert leq(chain_scale(5), 2, 4)
    assert leq(IFS, (F(3, 10), F(1, 2)), (F(3, 5), F(1, 5)))
    assert not leq(m3_scale(), "p", "q")
    assert not leq(m3_scale(), "q", "p")


def test_constructed_scales():
    P = product_scale(UNIT, chain_scale(10))
    assert P.top == (F(1), 10)
    assert join(product_scale(UNIT, chain_scale(5)), (F(3, 5), 2), (F(13, 20), 4)) == (F(13, 20), 4)
    I = interval_scale(UNIT)
    assert join(I, (F(1, 5), F(3, 5)), (F(3, 10), F(1, 2))) == (F(3, 10), F(3, 5))
    assert neg(I, (F(0), F(1))) == (F(0), F(1))
    assert meet(interval_scale(chain_scale(4)), (1, 2), (2, 3)) == (1, 2)
    G3 = function_scale(["0", "0.5", "1"])
    assert neg(G3, (F(0), F(1, 2), F(1))) == (F(1), F(1, 2), F(0))
    assert G3.top == (F(1), F(1), F(1))
    G2 = function_scale(["0", "1"])
    assert join(G2, (F(1, 5), F(4, 5)), (F(2, 5), F(1, 10))) == (F(2, 5), F(4, 5))


def test_element_validation():
    with pytest.raises(SVError) as e:
        UNIT.join(F(2), F(0))
    assert e.value.code == "element-not-in-carrier"
    with pytest.raises(SVError) as e:
        IFS.parse(["0.7", "0.5"])
    assert e.value.code == "constraint-violation"
    with pytest.raises(SVError) as e:
        interval_scale(chain_scale(3)).parse([3, 1])
    assert e.value.code == "interval-violation"
    with pytest.raises(SVError) as e:
        m3_scale().meet("p", "r")
    assert e.value.code == "element-not-in-carrier"


@pytest.mark.parametrize("grid", [[], ["0.5", "0.2"], ["0", "3/2"]])
def test_bad_grid(grid):
    with pytest.raises(SVError) as e:
        function_scale(grid)
    assert e.value.code == "bad-grid"


def test_flags_and_identity():
    assert chain_scale(3) == chain_scale(3)
    assert chain_scale(3) != chain_scale(4)
    assert BOOL.is_chain and chain_scale(4).is_chain and rough_scale().is_chain and UNIT.is_chain
    assert not m3_scale().is_chain
    assert not product_scale(BOOL, BOOL).is_chain
    assert chain_scale(2).is_complete and not UNIT.is_complete
    assert m3_scale("swap") != m3_scale("fix")
    assert len(interval_scale(chain_scale(2)).elements()) == 6


# ============================================================
# RAZIONALI
# ============================================================

def test_rationals_are_exact():
    assert parse_rational("0.65") == F(13, 20)
    assert parse_rational("13/20") == parse_rational("0.65")
    assert format_rational(F(129, 200)) == "0.645"
    assert format_rational(F(4, 7)) == "4/7"
    with pytest.raises(SVError) as e:
        parse_rational(0.65)
    assert e.value.code == "bad-rational"
    with pytest.raises(SVError):
        parse_rational("zero virgola sei")


# ============================================================
# RETICOLI FINITI
# ============================================================

def test_builtin_finite_scales_pass_exhaustively():
    for S in [BOOL, rough_scale(), m3_scale("swap"), m3_scale("fix")] + [chain_scale(k) for k in range(1, 7)]:
        report = verify_scale_laws(S, Sampling.exhaustive())
        assert report.passed, (S.name, report.failures())


@pytest.mark.parametrize("spec", [BOOLEAN_SQUARE, KLEENE_FIVE])
def test_custom_fixtures_pass(spec):
    S = build_finite_scale(spec)
    assert verify_scale_laws(S).passed


def test_not_a_lattice_bowtie():
    spec = FiniteLatticeSpec(
        elements=["0", "a", "b", "c", "d", "1"],
        covers=[("0", "a"), ("0", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "1"), ("d", "1")],
        neg={"0": "1", "a": "d", "b": "c", "c": "b", "d": "a", "1": "0"},
        bottom="0",
        top="1",
    )
    with pytest.raises(SVError) as e:
        build_finite_scale(spec)
    assert e.value.code == "not-a-lattice"


def test_cycle_is_not_a_lattice():
    spec = FiniteLatticeSpec(elements=["0", "a", "1"], covers=[("0", "a"), ("a", "0"), ("a", "1")],
                             neg={"0": "1", "a": "a", "1": "0"}, bottom="0", top="1")
    with pytest.raises(SVError) as e:
        build_finite_scale(spec)
    assert e.value.code == "not-a-lattice"


def test_de_morgan_violation_on_square():
    spec = BOOLEAN_SQUARE.model_copy(update={"neg": {"0": "a", "a": "0", "b": "1", "1": "b"}})
    with pytest.raises(SVError) as e:
        build_finite_scale(spec)
    assert e.value.code == "de-morgan-violation"


def test_de_morgan_violation_on_chain():
    spec = _chain_spec(["0", "a", "b", "1"], {"0": "1", "a": "a", "b": "b", "1": "0"})
    with pytest.raises(SVError) as e:
        build_finite_scale(spec)
    assert e.value.code == "de-morgan-violation"


def test_bad_involution_and_bounds():
    with pytest.raises(SVError) as e:
        build_finite_scale(_chain_spec(["0", "a", "1"], {"0": "1", "1": "0"}))
    assert e.value.code == "bad-involution"
    with pytest.raises(SVError) as e:
        build_finite_scale(_chain_spec(["0", "a", "1"], {"0": "a", "a": "1", "1": "0"}))
    assert e.value.code == "bad-involution"
    bad_bounds = _chain_spec(["0", "a", "1"], {"0": "1", "a": "a", "1": "0"}).model_copy(update={"bottom": "a"})
    with pytest.raises(SVError) as e:
        build_finite_scale(bad_bounds)
    assert e.value.code == "bounds-mismatch"


def test_corrupted_lattice_reports_witness():
    # neg non antitona: 1 ≤ 2 ma ¬2 = 2 ≰ 1 = ¬1
    spec = _chain_spec(["0", "1", "2", "3"], {"0": "3", "1": "1", "2": "2", "3": "0"})
    S = build_finite_scale(spec, verify=False)
    report = verify_scale_laws(S)
    assert not report.passed
    failed = {c.law: c for c in report.failures()}
    assert failed["antitone"].witness == ["1", "2"]
    assert "involution" not in failed


# ============================================================
# CAMPIONAMENTO CASUALE
# ============================================================

@pytest.mark.parametrize("S", [
    UNIT,
    IFS,
    product_scale(UNIT, chain_scale(10)),
    product_scale(IFS, rough_scale()),
    interval_scale(UNIT),
    interval_scale(m3_scale("fix")),
    function_scale(["0", "1/4", "1/2", "3/4", "1"]),
], ids=lambda S: S.name)
def test_infinite_scales_pass_random(S):
    report = verify_scale_laws(S, Sampling.random(1000, seed=1))
    assert report.passed, report.failures()
    assert all(c.checked >= 1 for c in report.laws)


def test_random_sampling_is_reproducible():
    a = verify_scale_laws(IFS, Sampling.random(200, seed=7))
    b = verify_scale_laws(IFS, Sampling.random(200, seed=7))
    assert a == b


def test_exhaustive_on_infinite_is_refused():
    with pytest.raises(SVError) as e:
        verify_scale_laws(UNIT, Sampling.exhaustive())
    assert e.value.code == "infinite-carrier-exhaustive"


@given(st.integers(min_value=1, max_value=8), st.data())
def test_chain_order_matches_meet_and_join(k, data):
    C = chain_scale(k)
    a = data.draw(st.integers(0, k))
    b = data.draw(st.integers(0, k))
    assert C.leq(a, b) == (C.meet(a, b) == a) == (C.join(a, b) == b)
    assert C.neg(C.bottom) == C.top and C.neg(C.top) == C.bottom


# ============================================================
# OMOMORFISMI
# ============================================================

def test_builtin_homs_pass():
    assert verify_scale_hom(identity_hom(chain_scale(5))).passed
    assert verify_scale_hom(bool_embedding(chain_scale(4))).passed
    assert verify_scale_hom(bool_embedding(m3_scale())).passed
    assert verify_scale_hom(chain_to_unit(4)).passed
    assert verify_scale_hom(diagonal_hom(chain_scale(3))).passed


def test_collapsing_chain_into_bool_fails():
    for middle in (False, True):
        h = ScaleHom.from_table(chain_scale(2), BOOL, {0: False, 1: middle, 2: True})
        report = verify_scale_hom(h)
        assert not report.passed
        failed = {c.law: c for c in report.failures()}
        assert failed["preserves-neg"].witness == [1]


def test_images_outside_target_carrier_fail_before_the_laws():
    shift = ScaleHom(chain_scale(2), chain_scale(2), "shift", lambda a: a + 1)
    report = verify_scale_hom(shift)
    assert not report.passed
    failed = {c.law: c for c in report.failures()}
    assert list(failed) == ["maps-into-target"]
    assert failed["maps-into-target"].witness == [2]

    double = ScaleHom(UNIT, UNIT, "double", lambda a: 2 * a)
    report = verify_scale_hom(double, Sampling.random(200, seed=3))
    assert [c.law for c in report.failures()] == ["maps-into-target"]



def test_hom_table_errors():
    with pytest.raises(SVError) as e:
        ScaleHom.from_table(chain_scale(2), BOOL, {0: False, 2: True})
    assert e.value.code == "non-total-map"
    with pytest.raises(SVError) as e:
        ScaleHom.from_table(UNIT, BOOL, {F(0): False})
    assert e.value.code == "infinite-carrier-exhaustive"
    with pytest.raises(SVError) as e:
        ScaleHom.from_table(chain_scale(1), BOOL, {0: False, 1: 3})
    assert e.value.code == "element-not-in-carrier"

# -*- coding: utf-8 -*-
"""
encoders.py
-----------
Codifiche biiettive tra i modelli classici di insiemi generalizzati e gli SV-set:
crisp, soft, fuzzy, multinsiemi limitati, L-fuzzy, intuitionistici (IFS),
coppie rough, Type-2 su griglia, Interval Type-2, LVISS (vista di membership
e vista formale).

Ogni modello ha anche le sue operazioni native (∪, ∩ e, dove esiste, il
complemento), così che encode(op(...)) = sv_op(encode(...)) sia verificabile.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, FrozenSet, Iterable, Literal, Mapping, Optional, Sequence, Tuple

from errors import SVError
from rationals import format_rational, parse_unit
from scale import BOOL, IFS, ROUGH_ELEMENTS, UNIT, Element, Scale, chain_scale, function_scale, interval_scale, rough_scale
from svset import (
    STAR,
    UNPARAMETERIZED,
    ParamSet,
    SVSet,
    Universe,
    sv_from_function,
    sv_unparameterized,
)

ROUGH = rough_scale()
IT2 = interval_scale(UNIT)


def _require_scale(A: SVSet, expected: Scale, what: str) -> None:
    if A.scale != expected:
        raise SVError("wrong-scale", f"{what} richiede la scala {expected.name}, trovata {A.scale.name}")


def _require_unparameterized(A: SVSet, what: str) -> None:
    if not A.is_unparameterized or A.params.params != (STAR,):
        raise SVError("wrong-scale", f"{what} richiede E = {{*}}, trovati {list(A.params)}")


def _subset_of(universe: Universe, S: Iterable[str], what: str) -> FrozenSet[str]:
    out = frozenset(S)
    outside = sorted(x for x in out if x not in universe)
    if outside:
        raise SVError("target-mismatch", f"{what}: {outside} non appartengono all'universo")
    return out


# ============================================================
# CRISP
# ============================================================

def crisp_to_sv(S: Iterable[str], universe: Universe) -> SVSet:
    members = _subset_of(universe, S, "crisp")
    return sv_unparameterized(universe, BOOL, {x: x in members for x in universe})


def sv_to_crisp(A: SVSet) -> FrozenSet[str]:
    _require_scale(A, BOOL, "sv_to_crisp")
    _require_unparameterized(A, "sv_to_crisp")
    return frozenset(x for x, v in zip(A.universe, A.single()) if v)


# ============================================================
# SOFT
# ============================================================

@dataclass(frozen=True)
class SoftSet:
    universe: Universe
    params: ParamSet
    assignment: Dict[str, FrozenSet[str]]

    def __post_init__(self) -> None:
        missing = [e for e in self.params if e not in self.assignment]
        if missing:
            raise SVError("non-total-map", f"soft set: nessun sottoinsieme per i parametri {missing}")
        fixed = {e: _subset_of(self.universe, self.assignment[e], f"F({e})") for e in self.params}
        object.__setattr__(self, "assignment", fixed)

    def __call__(self, e: str) -> FrozenSet[str]:
        return self.assignment[e]


def soft_to_sv(F: SoftSet) -> SVSet:
    return sv_from_function(F.universe, F.params, BOOL, lambda x, e: x in F.assignment[e])


def sv_to_soft(A: SVSet) -> SoftSet:
    _require_scale(A, BOOL, "sv_to_soft")
    return SoftSet(A.universe, A.params, {e: frozenset(x for x, v in zip(A.universe, A.column(e)) if v) for e in A.params})


def _soft_binary(F: SoftSet, G: SoftSet, op: str) -> SoftSet:
    if F.universe != G.universe or F.params != G.params:
        raise SVError("shape-mismatch", "soft set su universi o parametri diversi")
    combine = (lambda a, b: a | b) if op == "union" else (lambda a, b: a & b)
    return SoftSet(F.universe, F.params, {e: combine(F(e), G(e)) for e in F.params})


def soft_union(F: SoftSet, G: SoftSet) -> SoftSet:
    return _soft_binary(F, G, "union")


def soft_intersection(F: SoftSet, G: SoftSet) -> SoftSet:
    return _soft_binary(F, G, "intersection")


def soft_complement(F: SoftSet) -> SoftSet:
    full = frozenset(F.universe)
    return SoftSet(F.universe, F.params, {e: full - F(e) for e in F.params})


# ============================================================
# FUZZY, MULTINSIEMI, L-FUZZY (codifica identità sui valori)
# ============================================================

def fuzzy_to_sv(mu: Mapping[str, Any], universe: Universe) -> SVSet:
    values: Dict[str, Fraction] = {}
    for x in universe:
        if x not in mu:
            raise SVError("non-total-map", f"fuzzy: grado mancante per {x!r}")
        try:
            values[x] = parse_unit(mu[x], f"mu({x})")
        except SVError as e:
            raise SVError("out-of-range", e.detail) from None
    return sv_unparameterized(universe, UNIT, values)


def sv_to_fuzzy(A: SVSet) -> Dict[str, Fraction]:
    _require_scale(A, UNIT, "sv_to_fuzzy")
    _require_unparameterized(A, "sv_to_fuzzy")
    return {x: Fraction(v) for x, v in zip(A.universe, A.single())}


def multiset_to_sv(m: Mapping[str, int], k: int, universe: Universe) -> SVSet:
    C = chain_scale(k)
    for x in universe:
        n = m.get(x, 0)
        if not C.contains(n):
            raise SVError("out-of-range", f"molteplicità m({x}) = {n!r} fuori da 0..{k}")
    unknown = sorted(set(m) - set(universe))
    if unknown:
        raise SVError("target-mismatch", f"multiset: {unknown} non appartengono all'universo")
    return sv_unparameterized(universe, C, {x: m.get(x, 0) for x in universe})


def sv_to_multiset(A: SVSet) -> Dict[str, int]:
    if A.scale.kind != "chain":
        raise SVError("wrong-scale", f"sv_to_multiset richiede una catena 0..k, trovata {A.scale.name}")
    _require_unparameterized(A, "sv_to_multiset")
    return dict(zip(A.universe, A.single()))


def multiset_union(m1: Mapping[str, int], m2: Mapping[str, int]) -> Dict[str, int]:
    return {x: max(m1.get(x, 0), m2.get(x, 0)) for x in set(m1) | set(m2)}


def multiset_intersection(m1: Mapping[str, int], m2: Mapping[str, int]) -> Dict[str, int]:
    return {x: min(m1.get(x, 0), m2.get(x, 0)) for x in set(m1) | set(m2)}


def multiset_complement(m: Mapping[str, int], k: int, universe: Universe) -> Dict[str, int]:
    return {x: k - m.get(x, 0) for x in universe}


def lfuzzy_to_sv(mu: Mapping[str, Element], L: Scale, universe: Universe) -> SVSet:
    for x in universe:
        if x not in mu:
            raise SVError("non-total-map", f"L-fuzzy: valore mancante per {x!r}")
        if not L.contains(mu[x]):
            raise SVError("out-of-range", f"mu({x}) = {mu[x]!r} non appartiene a {L.name}")
    return sv_unparameterized(universe, L, mu)


def sv_to_lfuzzy(A: SVSet) -> Dict[str, Element]:
    _require_unparameterized(A, "sv_to_lfuzzy")
    return dict(zip(A.universe, A.single()))


# ============================================================
# INTUITIONISTIC FUZZY
# ============================================================

@dataclass(frozen=True)
class IFSPair:
    mu: Dict[str, Fraction]
    nu: Dict[str, Fraction]

    def __post_init__(self) -> None:
        if set(self.mu) != set(self.nu):
            raise SVError("non-total-map", "mu e nu devono avere lo stesso dominio")
        mu = {x: parse_unit(v, f"mu({x})") for x, v in self.mu.items()}
        nu = {x: parse_unit(v, f"nu({x})") for x, v in self.nu.items()}
        for x in mu:
            if mu[x] + nu[x] > 1:
                raise SVError("constraint-violation", f"mu({x}) + nu({x}) = {format_rational(mu[x] + nu[x])} > 1")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "nu", nu)


def ifs_to_sv(p: IFSPair, universe: Universe) -> SVSet:
    missing = [x for x in universe if x not in p.mu]
    if missing:
        raise SVError("non-total-map", f"IFS: coppie mancanti per {missing}")
    return sv_unparameterized(universe, IFS, {x: (p.mu[x], p.nu[x]) for x in universe})


def sv_to_ifs(A: SVSet) -> IFSPair:
    _require_scale(A, IFS, "sv_to_ifs")
    _require_unparameterized(A, "sv_to_ifs")
    vals = dict(zip(A.universe, A.single()))
    return IFSPair({x: v[0] for x, v in vals.items()}, {x: v[1] for x, v in vals.items()})


def ifs_union(p: IFSPair, q: IFSPair) -> IFSPair:
    return IFSPair({x: max(p.mu[x], q.mu[x]) for x in p.mu}, {x: min(p.nu[x], q.nu[x]) for x in p.nu})


def ifs_intersection(p: IFSPair, q: IFSPair) -> IFSPair:
    return IFSPair({x: min(p.mu[x], q.mu[x]) for x in p.mu}, {x: max(p.nu[x], q.nu[x]) for x in p.nu})


def ifs_complement(p: IFSPair) -> IFSPair:
    return IFSPair(dict(p.nu), dict(p.mu))


# ============================================================
# ROUGH (coppie astratte L ⊆ M)
# ============================================================

@dataclass(frozen=True)
class RoughPair:
    universe: Universe
    lower: FrozenSet[str]
    upper: FrozenSet[str]

    def __post_init__(self) -> None:
        lower = _subset_of(self.universe, self.lower, "lower")
        upper = _subset_of(self.universe, self.upper, "upper")
        if not lower <= upper:
            raise SVError("constraint-violation", f"L ⊄ M: {sorted(lower - upper)} sono in L ma non in M")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)


def rough_to_sv(r: RoughPair) -> SVSet:
    def status(x: str) -> str:
        return f"({int(x in r.lower)},{int(x in r.upper)})"
    return sv_unparameterized(r.universe, ROUGH, {x: status(x) for x in r.universe})


def sv_to_rough(A: SVSet) -> RoughPair:
    _require_scale(A, ROUGH, "sv_to_rough")
    _require_unparameterized(A, "sv_to_rough")
    vals = dict(zip(A.universe, A.single()))
    inside, outside = ROUGH_ELEMENTS[2], ROUGH_ELEMENTS[0]
    return RoughPair(A.universe,
                     frozenset(x for x, v in vals.items() if v == inside),
                     frozenset(x for x, v in vals.items() if v != outside))


def rough_ops(r1: RoughPair, r2: Optional[RoughPair], op: Literal["union", "intersection", "complement"]) -> RoughPair:
    """Unione e intersezione componente per componente; complemento (U∖M, U∖L)."""
    if op == "complement":
        full = frozenset(r1.universe)
        return RoughPair(r1.universe, full - r1.upper, full - r1.lower)
    if r2 is None:
        raise SVError("usage", f"rough_ops: '{op}' richiede due coppie")
    if r1.universe != r2.universe:
        raise SVError("shape-mismatch", "coppie rough su universi diversi")
    if op == "union":
        return RoughPair(r1.universe, r1.lower | r2.lower, r1.upper | r2.upper)
    if op == "intersection":
        return RoughPair(r1.universe, r1.lower & r2.lower, r1.upper & r2.upper)
    raise SVError("usage", f"rough_ops: operazione sconosciuta {op!r}")


# ============================================================
# TYPE-2 (griglia finita) E INTERVAL TYPE-2
# ============================================================

def type2_to_sv(mu: Mapping[Tuple[str, Fraction], Any], grid: Sequence[Any], universe: Universe) -> SVSet:
    """A(x,*)(u) = μ̃(x,u) per ogni punto u della griglia."""
    F = function_scale(grid)

    def secondary(x: str) -> Tuple[Fraction, ...]:
        out = []
        for u in F.grid:
            if (x, u) not in mu:
                raise SVError("non-total-map", f"type-2: μ̃({x}, {format_rational(u)}) mancante")
            out.append(parse_unit(mu[(x, u)], f"mu({x},{format_rational(u)})"))
        return tuple(out)

    return sv_unparameterized(universe, F, {x: secondary(x) for x in universe})


def parameterized_type2_to_sv(mu: Mapping[Tuple[str, str, Fraction], Any], grid: Sequence[Any],
                              universe: Universe, params: ParamSet) -> SVSet:
    """Type-2 con parametri esterni: A(x,e)(u) = μ̃(x,e,u)."""
    F = function_scale(grid)

    def secondary(x: str, e: str) -> Tuple[Fraction, ...]:
        try:
            return tuple(parse_unit(mu[(x, e, u)], f"mu({x},{e},{format_rational(u)})") for u in F.grid)
        except KeyError:
            raise SVError("non-total-map", f"type-2: valori mancanti per ({x}, {e})") from None

    return sv_from_function(universe, params, F, secondary)


def sv_to_type2(A: SVSet) -> Dict[Tuple[str, Fraction], Fraction]:
    if A.scale.kind != "function":
        raise SVError("wrong-scale", f"sv_to_type2 richiede una scala di funzioni, trovata {A.scale.name}")
    _require_unparameterized(A, "sv_to_type2")
    grid = A.scale.grid  # type: ignore[attr-defined]
    return {(x, u): f[i] for x, f in zip(A.universe, A.single()) for i, u in enumerate(grid)}


def it2_to_sv(lower: Mapping[str, Any], upper: Mapping[str, Any], universe: Universe) -> SVSet:
    values = {}
    for x in universe:
        if x not in lower or x not in upper:
            raise SVError("non-total-map", f"IT2: membership mancante per {x!r}")
        lo, hi = parse_unit(lower[x], f"lower({x})"), parse_unit(upper[x], f"upper({x})")
        if lo > hi:
            raise SVError("interval-violation", f"lower({x}) = {format_rational(lo)} > upper({x}) = {format_rational(hi)}")
        values[x] = (lo, hi)
    return sv_unparameterized(universe, IT2, values)


def sv_to_it2(A: SVSet) -> Tuple[Dict[str, Fraction], Dict[str, Fraction]]:
    _require_scale(A, IT2, "sv_to_it2")
    _require_unparameterized(A, "sv_to_it2")
    vals = dict(zip(A.universe, A.single()))
    return {x: v[0] for x, v in vals.items()}, {x: v[1] for x, v in vals.items()}


# ============================================================
# LVISS
# ============================================================

@dataclass(frozen=True)
class LVISS:
    """
    LVISS su dominio pieno con presentazione V^U: per ogni parametro e
    l'intervallo F(e) = [f_e^-, f_e^+] come due funzioni U → V.
    `domain` diverso da `params` indica un dominio variabile A ⊊ E.
    """

    universe: Universe
    params: ParamSet
    base: Scale
    lower: Dict[str, Dict[str, Element]]
    upper: Dict[str, Dict[str, Element]]
    domain: Optional[Tuple[str, ...]] = None

    @property
    def is_simple(self) -> bool:
        return self.lower == self.upper


def _presentation(F: LVISS) -> None:
    if F.domain is not None and tuple(F.domain) != F.params.params:
        raise SVError("variable-domain-unsupported", f"dominio {list(F.domain)} ≠ E = {list(F.params)}")
    for e in F.params:
        for side, table in (("lower", F.lower), ("upper", F.upper)):
            fn = table.get(e)
            if fn is None or any(x not in fn for x in F.universe):
                raise SVError("presentation-missing", f"{side}[{e}]: la funzione U → V non è data su tutto U")


def sv_to_simple_lviss(A: SVSet) -> LVISS:
    """e ↦ [A_e, A_e]: LVISS semplice sul dominio pieno."""
    table = {e: dict(zip(A.universe, A.column(e))) for e in A.params}
    return LVISS(A.universe, A.params, A.scale, table, {e: dict(fn) for e, fn in table.items()})


def lviss_membership_to_sv(F: LVISS) -> SVSet:
    """Φ_mem(F)(x,e) = [f_e^-(x), f_e^+(x)] nella scala I(V)."""
    _presentation(F)
    V = F.base

    def interval(x: str, e: str) -> Tuple[Element, Element]:
        lo, hi = F.lower[e][x], F.upper[e][x]
        if not V.leq(lo, hi):
            raise SVError("interval-violation", f"f_{e}^-({x}) = {V.label(lo)} ≰ f_{e}^+({x}) = {V.label(hi)}")
        return (lo, hi)

    return sv_from_function(F.universe, F.params, interval_scale(V), interval)


def _lviss_binary(F: LVISS, G: LVISS, upper: bool) -> LVISS:
    if F.universe != G.universe or F.params != G.params or F.base != G.base:
        raise SVError("shape-mismatch", "LVISS con universo, parametri o base diversi")
    _presentation(F)
    _presentation(G)
    op = F.base._join if upper else F.base._meet
    lower = {e: {x: op(F.lower[e][x], G.lower[e][x]) for x in F.universe} for e in F.params}
    upper_tab = {e: {x: op(F.upper[e][x], G.upper[e][x]) for x in F.universe} for e in F.params}
    return LVISS(F.universe, F.params, F.base, lower, upper_tab)


def lviss_union(F: LVISS, G: LVISS) -> LVISS:
    return _lviss_binary(F, G, upper=True)


def lviss_intersection(F: LVISS, G: LVISS) -> LVISS:
    return _lviss_binary(F, G, upper=False)


def lviss_complement(F: LVISS) -> LVISS:
    """[f^-, f^+] ↦ [¬f^+, ¬f^-], disponibile perché V è di De Morgan."""
    _presentation(F)
    N = F.base._neg
    lower = {e: {x: N(F.upper[e][x]) for x in F.universe} for e in F.params}
    upper = {e: {x: N(F.lower[e][x]) for x in F.universe} for e in F.params}
    return LVISS(F.universe, F.params, F.base, lower, upper)


def lviss_formal_to_sv(assignment: Mapping[str, Tuple[Element, Element]], L: Scale) -> SVSet:
    """
    Vista formale Φ_for: parametri come oggetti, E = {*}, valori in I(L).
    Vale anche per L astratto (nessuna presentazione come reticolo di funzioni).
    """
    IL = interval_scale(L)
    domain = Universe(tuple(assignment.keys()), name="A")
    return sv_unparameterized(domain, IL, {e: IL.check(tuple(iv), f"F({e})") for e, iv in assignment.items()})


__all__ = [
    "ROUGH", "IT2", "SoftSet", "IFSPair", "RoughPair", "LVISS",
    "crisp_to_sv", "sv_to_crisp",
    "soft_to_sv", "sv_to_soft", "soft_union", "soft_intersection", "soft_complement",
    "fuzzy_to_sv", "sv_to_fuzzy", "multiset_to_sv", "sv_to_multiset",
    "multiset_union", "multiset_intersection", "multiset_complement",
    "lfuzzy_to_sv", "sv_to_lfuzzy",
    "ifs_to_sv", "sv_to_ifs", "ifs_union", "ifs_intersection", "ifs_complement",
    "rough_to_sv", "sv_to_rough", "rough_ops",
    "type2_to_sv", "parameterized_type2_to_sv", "sv_to_type2", "it2_to_sv", "sv_to_it2",
    "sv_to_simple_lviss", "lviss_membership_to_sv", "lviss_union", "lviss_intersection",
    "lviss_complement", "lviss_formal_to_sv",
    "UNPARAMETERIZED",
]

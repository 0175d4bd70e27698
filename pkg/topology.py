# -*- coding: utf-8 -*-
"""
topology.py
-----------
Tagli e SV-topologie su universi finiti.

- strong_cut / weak_cut
- SVTopology (famiglia finita di SV-set) e CrispTopology (famiglia di sottoinsiemi)
- validazione con testimone, chiusura da generatori con tetto configurabile
- topologie dei tagli (solo su catene) e controesempio su M3
- SV-continuità, slice di famiglie parametrizzate, intersezione, restrizione

Su famiglie finite "join arbitrari" = join di sottofamiglie: la chiusura per
join binari più la costante 0 (join vuoto) li copre tutti.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from pydantic import BaseModel

from config import CLOSURE_CAP, log
from errors import SVError
from scale import BOOL, Element, Scale, m3_scale
from svset import (
    UNPARAMETERIZED,
    ParamSet,
    SVSet,
    Universe,
    pullback,
    sv_constant,
    sv_intersection,
    sv_slice,
    sv_union,
    sv_unparameterized,
)

Table = Tuple[Tuple[Element, ...], ...]


# ============================================================
# TAGLI
# ============================================================

def strong_cut(A: SVSet, alpha: Element) -> FrozenSet[str]:
    """A^{>α} = {x : α ≤ A(x), α ≠ A(x)}. Ammesso su ogni scala, α deve essere < 1."""
    S = A.scale
    S.check(alpha, "alpha")
    if alpha == S.top:
        raise SVError("alpha-is-top", f"il taglio forte a α = {S.label(alpha)} (top) è sempre vuoto")
    return frozenset(x for x, v in zip(A.universe, A.single()) if S.lt(alpha, v))


def weak_cut(A: SVSet, alpha: Element) -> FrozenSet[str]:
    """A_α = {x : α ≤ A(x)}."""
    S = A.scale
    S.check(alpha, "alpha")
    return frozenset(x for x, v in zip(A.universe, A.single()) if S._leq(alpha, v))


# ============================================================
# FAMIGLIE
# ============================================================

@dataclass(frozen=True)
class SVTopology:
    """
    Famiglia finita di SV-set sullo stesso (U, E, Σ). Con E = {*} è una
    SV-topologia su U; con E più grande è una famiglia parametrizzata
    (da cui si prendono le slice).
    """

    universe: Universe
    scale: Scale
    opens: Tuple[SVSet, ...]
    params: ParamSet = UNPARAMETERIZED

    def __post_init__(self) -> None:
        object.__setattr__(self, "opens", tuple(self.opens))
        for i, A in enumerate(self.opens):
            if A.universe != self.universe:
                raise SVError("shape-mismatch", f"opens[{i}]: universo diverso da quello della topologia")
            if A.params != self.params:
                raise SVError("shape-mismatch", f"opens[{i}]: parametri {list(A.params)} ≠ {list(self.params)}")
            if A.scale != self.scale:
                raise SVError("shape-mismatch", f"opens[{i}]: scala {A.scale.name} ≠ {self.scale.name}")

    def __len__(self) -> int:
        return len(self.opens)

    def tables(self) -> List[Table]:
        return [A.values for A in self.opens]

    def contains(self, A: SVSet) -> bool:
        return any(A.values == B.values for B in self.opens)

    def bottom(self) -> SVSet:
        return sv_constant(self.universe, self.params, self.scale, self.scale.bottom)

    def top(self) -> SVSet:
        return sv_constant(self.universe, self.params, self.scale, self.scale.top)

    def to_document(self) -> Dict[str, Any]:
        doc: Dict[str, Any] = {
            "scale": self.scale.descriptor(),
            "universe": list(self.universe.elements),
            "opens": [_table_doc(A) for A in self.opens],
        }
        if self.params != UNPARAMETERIZED:
            doc["params"] = list(self.params.params)
        return doc


@dataclass(frozen=True)
class CrispTopology:
    universe: Universe
    opens: Tuple[FrozenSet[str], ...] = field(default=())

    def __post_init__(self) -> None:
        seen: List[FrozenSet[str]] = []
        for O in self.opens:
            O = frozenset(O)
            outside = sorted(x for x in O if x not in self.universe)
            if outside:
                raise SVError("target-mismatch", f"aperto con elementi fuori da U: {outside}")
            if O not in seen:
                seen.append(O)
        object.__setattr__(self, "opens", tuple(seen))

    def __contains__(self, O: object) -> bool:
        return frozenset(O) in self.opens  # type: ignore[arg-type]

    def __len__(self) -> int:
        return len(self.opens)

    def to_document(self) -> Dict[str, Any]:
        ordered = sorted(self.opens, key=lambda O: (len(O), sorted(O)))
        return {"universe": list(self.universe.elements), "opens": [_ordered(self.universe, O) for O in ordered]}


def _ordered(universe: Universe, S: Iterable[str]) -> List[str]:
    members = set(S)
    return [x for x in universe if x in members]


def _table_doc(A: SVSet) -> Dict[str, Any]:
    if A.is_unparameterized:
        return {x: A.scale.dump(v) for x, v in zip(A.universe, A.single())}
    return {f"{x}|{e}": A.scale.dump(v) for (x, e), v in A.items()}


# ============================================================
# REPORT
# ============================================================

class AxiomCheck(BaseModel):
    axiom: str
    passed: bool
    witness: Optional[Dict[str, Any]] = None


class ValidationReport(BaseModel):
    subject: str
    valid: bool
    size: int
    axioms: List[AxiomCheck]

    def failures(self) -> List[AxiomCheck]:
        return [a for a in self.axioms if not a.passed]


class CounterexampleReport(BaseModel):
    operation: str
    scale: str
    universe: List[str]
    alpha: Any
    a_value: Any
    b_value: Any
    combined_value: Any
    cuts_combined: List[str]
    cut_of_combined: List[str]
    counterexample: bool
    note: str = ""


class ContinuityReport(BaseModel):
    continuous: bool
    checked: int
    failing_open: Optional[Any] = None
    pullback: Optional[Any] = None


# ============================================================
# VALIDAZIONE
# ============================================================

def _join_table(S: Scale, a: Table, b: Table) -> Table:
    return tuple(tuple(S._join(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _meet_table(S: Scale, a: Table, b: Table) -> Table:
    return tuple(tuple(S._meet(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _const_table(tau: SVTopology, v: Element) -> Table:
    return tuple(tuple(v for _ in tau.params) for _ in tau.universe)


def validate_sv_topology(tau: SVTopology) -> ValidationReport:
    """Costanti 0 e 1, join e meet a coppie; per ogni assioma violato il primo testimone."""
    S = tau.scale
    tables = tau.tables()
    present = set(tables)
    checks: List[AxiomCheck] = []

    for axiom, v in (("contains-bottom", S.bottom), ("contains-top", S.top)):
        const = _const_table(tau, v)
        ok = const in present
        checks.append(AxiomCheck(axiom=axiom, passed=ok,
                                 witness=None if ok else {"missing": _table_doc(SVSet(tau.universe, tau.params, S, const))}))

    for axiom, op in (("closed-under-joins", _join_table), ("closed-under-meets", _meet_table)):
        witness = None
        for i in range(len(tables)):
            for j in range(i + 1, len(tables)):
                combined = op(S, tables[i], tables[j])
                if combined not in present:
                    witness = {"operands": [i, j],
                               "missing": _table_doc(SVSet(tau.universe, tau.params, S, combined))}
                    break
            if witness:
                break
        checks.append(AxiomCheck(axiom=axiom, passed=witness is None, witness=witness))

    valid = all(c.passed for c in checks)
    if not valid:
        log("TOPO", f"famiglia non valida: {[c.axiom for c in checks if not c.passed]}", "DEBUG")
    return ValidationReport(subject=f"SV-topology on {S.name}", valid=valid, size=len(set(tables)), axioms=checks)


def validate_crisp_topology(T: CrispTopology) -> ValidationReport:
    full = frozenset(T.universe)
    opens = list(T.opens)
    present = set(opens)
    checks = [
        AxiomCheck(axiom="contains-empty", passed=frozenset() in present,
                   witness=None if frozenset() in present else {"missing": []}),
        AxiomCheck(axiom="contains-universe", passed=full in present,
                   witness=None if full in present else {"missing": list(T.universe)}),
    ]
    for axiom, op in (("closed-under-unions", frozenset.union), ("closed-under-intersections", frozenset.intersection)):
        witness = None
        for i in range(len(opens)):
            for j in range(i + 1, len(opens)):
                combined = op(opens[i], opens[j])
                if combined not in present:
                    witness = {"operands": [_ordered(T.universe, opens[i]), _ordered(T.universe, opens[j])],
                               "missing": _ordered(T.universe, combined)}
                    break
            if witness:
                break
        checks.append(AxiomCheck(axiom=axiom, passed=witness is None, witness=witness))
    return ValidationReport(subject="crisp topology", valid=all(c.passed for c in checks), size=len(opens), axioms=checks)


# ============================================================
# CHIUSURA
# ============================================================

def generate_sv_topology(generators: Sequence[SVSet], universe: Optional[Universe] = None,
                         scale: Optional[Scale] = None, params: Optional[ParamSet] = None,
                         cap: int = CLOSURE_CAP) -> SVTopology:
    """
    Minima famiglia che contiene i generatori, 0 e 1, chiusa per join e meet.
    Iterazione a punto fisso in ordine di inserimento (risultato deterministico).
    """
    if generators:
        first = generators[0]
        universe, scale, params = first.universe, first.scale, first.params
    if universe is None or scale is None:
        raise SVError("usage", "senza generatori servono universo e scala")
    params = params or UNPARAMETERIZED
    for i, A in enumerate(generators):
        if A.universe != universe or A.params != params or A.scale != scale:
            raise SVError("shape-mismatch", f"generators[{i}]: universo, parametri o scala diversi dal primo")

    S = scale

    def const(v: Element) -> Table:
        return tuple(tuple(v for _ in params) for _ in universe)

    order: List[Table] = []
    seen = set()

    def add(t: Table) -> None:
        if t in seen:
            return
        if len(order) >= cap:
            raise SVError("closure-size-cap-exceeded", f"la chiusura supera {cap} aperti (SVSET_CLOSURE_CAP)")
        seen.add(t)
        order.append(t)

    add(const(S.bottom))
    for A in generators:
        add(A.values)
    add(const(S.top))

    i = 0
    while i < len(order):
        for j in range(i):
            add(_join_table(S, order[i], order[j]))
            add(_meet_table(S, order[i], order[j]))
        i += 1
    log("TOPO", f"chiusura di {len(generators)} generatori: {len(order)} aperti", "DEBUG")
    return SVTopology(universe, S, tuple(SVSet(universe, params, S, t) for t in order), params)


# ============================================================
# TOPOLOGIE DEI TAGLI
# ============================================================

def cut_topology(tau: SVTopology, alpha: Element) -> CrispTopology:
    S = tau.scale
    if not S.is_chain:
        raise SVError("not-a-chain",
                      f"la scala {S.name} non è una catena: i tagli forti di una SV-topologia "
                      "possono non essere chiusi per intersezione (vedi il controesempio su M3)")
    S.check(alpha, "alpha")
    if alpha == S.top:
        raise SVError("alpha-is-top", "α deve essere strettamente sotto il top")
    if tau.params != UNPARAMETERIZED:
        raise SVError("shape-mismatch", "cut_topology richiede una SV-topologia non parametrizzata (usa soft_cut_topology)")
    T = CrispTopology(tau.universe, tuple(strong_cut(A, alpha) for A in tau.opens))
    report = validate_crisp_topology(T)
    if not report.valid:
        raise SVError("invalid-family", f"i tagli non formano una topologia: {[a.axiom for a in report.failures()]}")
    return T


def _cut_witness(S: Scale, a: Element, b: Element, alpha: Element, operation: str) -> CounterexampleReport:
    U = Universe(("x",))
    A = sv_unparameterized(U, S, {"x": S.check(a, "a")})
    B = sv_unparameterized(U, S, {"x": S.check(b, "b")})
    cut_a, cut_b = strong_cut(A, alpha), strong_cut(B, alpha)
    if operation == "meet":
        combined, cuts = sv_intersection(A, B), cut_a & cut_b
    else:
        combined, cuts = sv_union(A, B), cut_a | cut_b
    of_combined = strong_cut(combined, alpha)
    return CounterexampleReport(
        operation=operation,
        scale=S.name,
        universe=list(U.elements),
        alpha=S.dump(alpha),
        a_value=S.dump(a),
        b_value=S.dump(b),
        combined_value=S.dump(combined("x")),
        cuts_combined=sorted(cuts),
        cut_of_combined=sorted(of_combined),
        counterexample=cuts != of_combined,
    )


def cut_meet_witness(S: Scale, a: Element, b: Element, alpha: Element) -> CounterexampleReport:
    """
    Su U = {x} con A(x) = a e B(x) = b confronta A^{>α} ∩ B^{>α} con (A∧B)^{>α}.
    counterexample=True quando i due insiemi differiscono.
    """
    return _cut_witness(S, a, b, alpha, "meet")


def cut_join_witness(S: Scale, a: Element, b: Element, alpha: Element) -> CounterexampleReport:
    """A^{>α} ∪ B^{>α} contro (A∨B)^{>α}. Su M3 con a = p, b = q, α = p differiscono."""
    return _cut_witness(S, a, b, alpha, "join")


def m3_cut_counterexample() -> CounterexampleReport:
    """A(x) = p, B(x) = q su M3, α = 0: x sta in entrambi i tagli ma (A∧B)(x) = 0."""
    report = cut_meet_witness(m3_scale("swap"), "p", "q", "0")
    return report.model_copy(update={"note": "A^{>0} ∩ B^{>0} = {x} ma (A∧B)(x) = 0: su reticoli non totali i tagli non preservano ∩"})


def m3_cut_join_counterexample() -> CounterexampleReport:
    """A(x) = p, B(x) = q su M3, α = p: (A∨B)(x) = 1 > p ma né p né q stanno sopra p."""
    report = cut_join_witness(m3_scale("swap"), "p", "q", "p")
    return report.model_copy(update={"note": "(A∨B)^{>p} = {x} ma A^{>p} ∪ B^{>p} = ∅: fuori dalle catene vale solo ⊆"})


# ============================================================
# CONTINUITÀ
# ============================================================

def check_sv_continuity(f: Mapping[str, str], tau_U: SVTopology, tau_V: SVTopology) -> ContinuityReport:
    """f continua sse B∘f ∈ τ_U per ogni B ∈ τ_V (uguaglianza esatta delle tabelle)."""
    if tau_U.scale != tau_V.scale:
        raise SVError("scale-mismatch", f"τ_U su {tau_U.scale.name}, τ_V su {tau_V.scale.name}")
    present = set(tau_U.tables())
    for i, B in enumerate(tau_V.opens):
        pulled = pullback(f, None, B, universe=tau_U.universe)
        if pulled.values not in present:
            return ContinuityReport(continuous=False, checked=i + 1, failing_open=_table_doc(B), pullback=_table_doc(pulled))
    return ContinuityReport(continuous=True, checked=len(tau_V.opens))


def check_crisp_continuity(f: Mapping[str, str], T_U: CrispTopology, T_V: CrispTopology) -> ContinuityReport:
    missing = [x for x in T_U.universe if x not in f]
    if missing:
        raise SVError("non-total-map", f"f: nessuna immagine per {missing[:5]}")
    present = set(T_U.opens)
    for i, O in enumerate(T_V.opens):
        pre = frozenset(x for x in T_U.universe if f[x] in O)
        if pre not in present:
            return ContinuityReport(continuous=False, checked=i + 1,
                                    failing_open=_ordered(T_V.universe, O), pullback=_ordered(T_U.universe, pre))
    return ContinuityReport(continuous=True, checked=len(T_V.opens))


# ============================================================
# SLICE, INTERSEZIONI, RESTRIZIONI
# ============================================================

def _dedup(opens: Iterable[SVSet]) -> Tuple[SVSet, ...]:
    out: List[SVSet] = []
    seen = set()
    for A in opens:
        if A.values not in seen:
            seen.add(A.values)
            out.append(A)
    return tuple(out)


def slice_topology(tau: SVTopology, e: str) -> SVTopology:
    """τ_e = {A_e : A ∈ τ} per una famiglia parametrizzata valida."""
    tau.params.index(e)
    report = validate_sv_topology(tau)
    if not report.valid:
        raise SVError("invalid-family", f"la famiglia parametrizzata viola {[a.axiom for a in report.failures()]}")
    return SVTopology(tau.universe, tau.scale, _dedup(sv_slice(A, e) for A in tau.opens))


def soft_cut_topology(tau: SVTopology, alpha: Element) -> Dict[str, CrispTopology]:
    """Un taglio per parametro: famiglia soft di topologie crisp."""
    return {e: cut_topology(slice_topology(tau, e), alpha) for e in tau.params}


def intersect_topologies(tau1: SVTopology, tau2: SVTopology) -> SVTopology:
    if tau1.universe != tau2.universe or tau1.scale != tau2.scale or tau1.params != tau2.params:
        raise SVError("shape-mismatch", "le topologie vivono su (U, E, Σ) diversi")
    other = set(tau2.tables())
    return SVTopology(tau1.universe, tau1.scale, tuple(A for A in tau1.opens if A.values in other), tau1.params)


def restrict_topology(tau: SVTopology, subset: Sequence[str]) -> SVTopology:
    """Topologia indotta su V ⊆ U: {A|_V : A ∈ τ}."""
    wanted = set(subset)
    outside = sorted(wanted - set(tau.universe))
    if outside:
        raise SVError("target-mismatch", f"{outside} non appartengono a U")
    V = Universe(tuple(x for x in tau.universe if x in wanted), name="V")
    inclusion = {x: x for x in V}
    return SVTopology(V, tau.scale, _dedup(pullback(inclusion, None, A, universe=V) for A in tau.opens), tau.params)


def crisp_to_sv_topology(T: CrispTopology) -> SVTopology:
    """Funzioni caratteristiche: ogni topologia classica è una SV-topologia su {0,1}."""
    opens = tuple(sv_unparameterized(T.universe, BOOL, {x: x in O for x in T.universe}) for O in T.opens)
    return SVTopology(T.universe, BOOL, opens)


def sv_to_crisp_topology(tau: SVTopology) -> CrispTopology:
    if tau.scale != BOOL:
        raise SVError("wrong-scale", f"serve la scala bool, trovata {tau.scale.name}")
    return CrispTopology(tau.universe, tuple(frozenset(x for x, v in zip(A.universe, A.single()) if v) for A in tau.opens))


__all__ = [
    "strong_cut", "weak_cut", "SVTopology", "CrispTopology",
    "AxiomCheck", "ValidationReport", "CounterexampleReport", "ContinuityReport",
    "validate_sv_topology", "validate_crisp_topology", "generate_sv_topology",
    "cut_topology", "cut_meet_witness", "cut_join_witness", "m3_cut_counterexample", "m3_cut_join_counterexample",
    "check_sv_continuity", "check_crisp_continuity",
    "slice_topology", "soft_cut_topology", "intersect_topologies", "restrict_topology",
    "crisp_to_sv_topology", "sv_to_crisp_topology",
]

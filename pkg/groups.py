# -*- coding: utf-8 -*-
"""
groups.py
---------
Gruppi finiti da tavola di Cayley e SV-sottogruppi.

A è un SV-sottogruppo di G se A(e) = 1 e A(xy⁻¹) ≥ A(x) ∧ A(y) per ogni x, y.
Un A parametrizzato è accettato sse ogni slice A_e lo è.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from config import log
from errors import SVError
from scale import Element, Scale
from svset import SVSet, Universe, pullback, sv_intersection, sv_slice
from topology import weak_cut

# oltre questa taglia enumerate_subgroups rifiuta (2^n sottoinsiemi)
MAX_ENUMERATION_ORDER = 16


# ============================================================
# GRUPPI
# ============================================================

@dataclass(frozen=True)
class FiniteGroup:
    elements: Tuple[str, ...]
    table: Dict[Tuple[str, str], str] = field(repr=False)
    identity: str
    name: str = field(default="G", compare=False)

    def __post_init__(self) -> None:
        els = tuple(self.elements)
        object.__setattr__(self, "elements", els)
        inverses = {}
        for a in els:
            inv = [b for b in els if self.table.get((a, b)) == self.identity and self.table.get((b, a)) == self.identity]
            if not inv:
                raise SVError("not-a-group", f"{a} non ha inverso rispetto a {self.identity!r}")
            inverses[a] = inv[0]
        object.__setattr__(self, "_inverses", inverses)

    @classmethod
    def from_table(cls, elements: Sequence[str], rows: Sequence[Sequence[str]],
                   identity: Optional[str] = None, name: str = "G") -> "FiniteGroup":
        """Riga i, colonna j = elements[i] · elements[j]. Verifica tutti gli assiomi."""
        els = tuple(elements)
        if not els or len(set(els)) != len(els):
            raise SVError("not-a-group", "elementi vuoti o duplicati")
        if len(rows) != len(els) or any(len(r) != len(els) for r in rows):
            raise SVError("not-a-group", f"la tavola deve essere {len(els)}×{len(els)}")
        members = set(els)
        table: Dict[Tuple[str, str], str] = {}
        for a, row in zip(els, rows):
            for b, c in zip(els, row):
                if c not in members:
                    raise SVError("not-a-group", f"{a}·{b} = {c!r} non è un elemento (chiusura)")
                table[(a, b)] = c

        if identity is None:
            found = [e for e in els if all(table[(e, a)] == a and table[(a, e)] == a for a in els)]
            if not found:
                raise SVError("not-a-group", "nessun elemento neutro")
            identity = found[0]
        if identity not in members:
            raise SVError("not-a-group", f"identity {identity!r} non è un elemento")
        for a in els:
            if table[(identity, a)] != a or table[(a, identity)] != a:
                raise SVError("not-a-group", f"{identity} non è neutro per {a}")
        for a in els:
            if not any(table[(a, b)] == identity and table[(b, a)] == identity for b in els):
                raise SVError("not-a-group", f"{a} non ha inverso")
        for a, b, c in itertools.product(els, repeat=3):
            if table[(table[(a, b)], c)] != table[(a, table[(b, c)])]:
                raise SVError("not-a-group", f"associatività violata su ({a}, {b}, {c})")
        return cls(els, table, identity, name)

    @classmethod
    def from_operation(cls, elements: Sequence[str], op, name: str = "G") -> "FiniteGroup":
        els = tuple(elements)
        return cls.from_table(els, [[op(a, b) for b in els] for a in els], name=name)

    def mul(self, a: str, b: str) -> str:
        return self.table[(a, b)]

    def inv(self, a: str) -> str:
        return self._inverses[a]  # type: ignore[attr-defined]

    @property
    def universe(self) -> Universe:
        return Universe(self.elements, name=self.name)

    def __len__(self) -> int:
        return len(self.elements)

    def rows(self) -> List[List[str]]:
        return [[self.table[(a, b)] for b in self.elements] for a in self.elements]

    def to_document(self) -> Dict[str, Any]:
        return {"elements": list(self.elements), "table": self.rows(), "identity": self.identity}


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise SVError("not-a-group", f"Z{n}: serve n ≥ 1")
    return FiniteGroup.from_operation([str(i) for i in range(n)], lambda a, b: str((int(a) + int(b)) % n), name=f"Z{n}")


def _permutation_group(labels: Sequence[str], perms: Sequence[Tuple[int, ...]], name: str) -> FiniteGroup:
    # composizione (ab)(i) = a(b(i))
    by_perm = dict(zip(perms, labels))
    by_label = dict(zip(labels, perms))

    def compose(a: str, b: str) -> str:
        pa, pb = by_label[a], by_label[b]
        return by_perm[tuple(pa[pb[i]] for i in range(len(pa)))]

    return FiniteGroup.from_operation(labels, compose, name=name)


def symmetric3() -> FiniteGroup:
    labels = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"]
    perms = [(0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)]
    return _permutation_group(labels, perms, "S3")


def dihedral4() -> FiniteGroup:
    """Simmetrie del quadrato: rotazioni r0..r3, riflessioni s0..s3 (s_k = r_k ∘ s0)."""
    rot = [tuple((i + k) % 4 for i in range(4)) for k in range(4)]
    s0 = (0, 3, 2, 1)
    refl = [tuple(r[s0[i]] for i in range(4)) for r in rot]
    labels = [f"r{k}" for k in range(4)] + [f"s{k}" for k in range(4)]
    return _permutation_group(labels, rot + refl, "D4")


# ============================================================
# OMOMORFISMI
# ============================================================

@dataclass(frozen=True)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    mapping: Dict[str, str]
    name: str = field(default="phi", compare=False)

    def __post_init__(self) -> None:
        missing = [a for a in self.source.elements if a not in self.mapping]
        if missing:
            raise SVError("not-a-hom", f"{self.name}: nessuna immagine per {missing}")
        outside = [b for b in self.mapping.values() if b not in set(self.target.elements)]
        if outside:
            raise SVError("not-a-hom", f"{self.name}: immagini fuori dal codominio {outside}")
        f, S, T = self.mapping, self.source, self.target
        for a, b in itertools.product(S.elements, repeat=2):
            if f[S.mul(a, b)] != T.mul(f[a], f[b]):
                raise SVError("not-a-hom", f"{self.name}({a}·{b}) ≠ {self.name}({a})·{self.name}({b})")

    def __call__(self, a: str) -> str:
        return self.mapping[a]


def identity_group_hom(G: FiniteGroup) -> GroupHom:
    return GroupHom(G, G, {a: a for a in G.elements}, name="id")


def reduction_hom(n: int, m: int) -> GroupHom:
    """Zn → Zm, a ↦ a mod m; omomorfismo solo se m divide n."""
    if m < 1 or n % m:
        raise SVError("not-a-hom", f"la riduzione Z{n} → Z{m} richiede m | n")
    return GroupHom(cyclic(n), cyclic(m), {str(a): str(a % m) for a in range(n)}, name=f"mod{m}")


# ============================================================
# REPORT
# ============================================================

class SubgroupReport(BaseModel):
    passed: bool
    group: str
    checked: int
    condition: Optional[str] = None
    witness: Optional[List[str]] = None
    param: Optional[str] = None


class PropertyCheck(BaseModel):
    property: str
    passed: bool
    witness: Optional[List[str]] = None


class DerivedReport(BaseModel):
    passed: bool
    checks: List[PropertyCheck]


class LevelCheck(BaseModel):
    alpha: Any
    level: List[str]
    is_subgroup: bool


class EquivalenceReport(BaseModel):
    sv_subgroup: bool
    levels_all_subgroups: bool
    agree: bool
    test_set: str
    levels: List[LevelCheck]
    discrepancy: Optional[str] = None


class AgreementReport(BaseModel):
    standard: bool
    alternative: bool
    agree: bool


# ============================================================
# SV-SOTTOGRUPPI
# ============================================================

def _require_universe(G: FiniteGroup, A: SVSet) -> None:
    if set(A.universe.elements) != set(G.elements) or len(A.universe) != len(G):
        raise SVError("universe-mismatch", f"l'universo di A non coincide con gli elementi di {G.name}")


def _slices(A: SVSet) -> List[Tuple[Optional[str], SVSet]]:
    if A.is_unparameterized:
        return [(None, A)]
    return [(e, sv_slice(A, e)) for e in A.params]


def _check_slice(G: FiniteGroup, A: SVSet) -> SubgroupReport:
    S = A.scale
    if A(G.identity) != S.top:
        return SubgroupReport(passed=False, group=G.name, checked=1, condition="identity", witness=[G.identity])
    checked = 1
    for x in G.elements:
        ax = A(x)
        for y in G.elements:
            checked += 1
            if not S._leq(S._meet(ax, A(y)), A(G.mul(x, G.inv(y)))):
                return SubgroupReport(passed=False, group=G.name, checked=checked, condition="x·y⁻¹", witness=[x, y])
    return SubgroupReport(passed=True, group=G.name, checked=checked)


def is_sv_subgroup(G: FiniteGroup, A: SVSet) -> SubgroupReport:
    _require_universe(G, A)
    total = 0
    for e, Ae in _slices(A):
        report = _check_slice(G, Ae)
        total += report.checked
        if not report.passed:
            return report.model_copy(update={"param": e, "checked": total})
    return SubgroupReport(passed=True, group=G.name, checked=total)


def derived_properties_check(G: FiniteGroup, A: SVSet) -> DerivedReport:
    """A(x) ≤ A(e), A(x⁻¹) = A(x), A(xy) ≥ A(x) ∧ A(y): conseguenze della definizione."""
    if not is_sv_subgroup(G, A).passed:
        raise SVError("not-a-subgroup", "le proprietà derivate richiedono un SV-sottogruppo")
    checks: List[PropertyCheck] = []
    for e, Ae in _slices(A):
        S = Ae.scale
        top_ok = next(([x] for x in G.elements if not S._leq(Ae(x), Ae(G.identity))), None)
        inv_ok = next(([x] for x in G.elements if Ae(G.inv(x)) != Ae(x)), None)
        prod_ok = next(([x, y] for x, y in itertools.product(G.elements, repeat=2)
                        if not S._leq(S._meet(Ae(x), Ae(y)), Ae(G.mul(x, y)))), None)
        for name, witness in (("below-identity", top_ok), ("inverse-symmetric", inv_ok), ("closed-product", prod_ok)):
            if e is not None:
                name = f"{name}[{e}]"
            checks.append(PropertyCheck(property=name, passed=witness is None, witness=witness))
    passed = all(c.passed for c in checks)
    if not passed:
        log("GROUPS", f"proprietà derivate violate su {G.name}: {[c.property for c in checks if not c.passed]}", "ERROR")
    return DerivedReport(passed=passed, checks=checks)


def definitions_agree(G: FiniteGroup, A: SVSet) -> AgreementReport:
    """Definizione con xy⁻¹ contro la forma con inversi e prodotti: devono coincidere."""
    _require_universe(G, A)
    standard = is_sv_subgroup(G, A).passed
    alternative = True
    for _, Ae in _slices(A):
        S = Ae.scale
        ok = Ae(G.identity) == S.top
        ok = ok and all(Ae(G.inv(x)) == Ae(x) for x in G.elements)
        ok = ok and all(S._leq(S._meet(Ae(x), Ae(y)), Ae(G.mul(x, y)))
                        for x, y in itertools.product(G.elements, repeat=2))
        alternative = alternative and ok
    return AgreementReport(standard=standard, alternative=alternative, agree=standard == alternative)


# ============================================================
# LIVELLI
# ============================================================

def is_crisp_subgroup(G: FiniteGroup, H: Iterable[str]) -> bool:
    members = frozenset(H)
    if G.identity not in members:
        return False
    return all(G.mul(x, G.inv(y)) in members for x in members for y in members)


def level_subgroup(G: FiniteGroup, A: SVSet, alpha: Element) -> FrozenSet[str]:
    """A_α = {x : α ≤ A(x)}."""
    _require_universe(G, A)
    return weak_cut(A, alpha)


def soft_level_subgroups(G: FiniteGroup, A: SVSet, alpha: Element) -> Dict[str, FrozenSet[str]]:
    """Livello α di ogni slice: famiglia soft di sottoinsiemi di G."""
    _require_universe(G, A)
    return {e: weak_cut(sv_slice(A, e), alpha) for e in A.params}


def enumerate_subgroups(G: FiniteGroup) -> List[FrozenSet[str]]:
    """Forza bruta su tutti i sottoinsiemi che contengono e; ordinati per taglia."""
    if len(G) > MAX_ENUMERATION_ORDER:
        raise SVError("out-of-range", f"|{G.name}| = {len(G)} troppo grande per l'enumerazione (max {MAX_ENUMERATION_ORDER})")
    others = [a for a in G.elements if a != G.identity]
    found = []
    for r in range(len(others) + 1):
        for combo in itertools.combinations(others, r):
            H = frozenset((G.identity,) + combo)
            if is_crisp_subgroup(G, H):
                found.append(H)
    return found


def _meet_closure(S: Scale, seeds: Sequence[Element]) -> List[Element]:
    out: List[Element] = []
    for v in seeds:
        if v not in out:
            out.append(v)
    i = 0
    while i < len(out):
        for j in range(i):
            m = S._meet(out[i], out[j])
            if m not in out:
                out.append(m)
        i += 1
    return out


def level_equivalence_check(G: FiniteGroup, A: SVSet) -> EquivalenceReport:
    """
    SV-sottogruppo sse ogni livello A_α è un sottogruppo. α scorre tutto il
    carrier se finito, altrimenti la chiusura per meet di image(A) ∪ {1}.
    """
    _require_universe(G, A)
    if not A.is_unparameterized:
        raise SVError("shape-mismatch", "level_equivalence_check lavora su SV-set non parametrizzati (usa le slice)")
    S = A.scale
    if S.finite:
        alphas = list(S.elements())
        test_set = "carrier"
    else:
        alphas = _meet_closure(S, list(A.single()) + [S.top])
        test_set = "meet-closure"

    sv = is_sv_subgroup(G, A).passed
    levels: List[LevelCheck] = []
    for a in alphas:
        H = weak_cut(A, a)
        levels.append(LevelCheck(alpha=S.dump(a), level=[x for x in G.elements if x in H], is_subgroup=is_crisp_subgroup(G, H)))
    all_levels = all(lv.is_subgroup for lv in levels)

    discrepancy = None
    if sv != all_levels:
        discrepancy = f"is_sv_subgroup={sv} ma livelli tutti sottogruppi={all_levels}"
        log("GROUPS", f"discrepanza su {G.name}: {discrepancy}", "ERROR")
    return EquivalenceReport(sv_subgroup=sv, levels_all_subgroups=all_levels, agree=discrepancy is None,
                             test_set=test_set, levels=levels, discrepancy=discrepancy)


# ============================================================
# COSTRUZIONI
# ============================================================

def _require_subgroup(G: FiniteGroup, A: SVSet, what: str) -> None:
    report = is_sv_subgroup(G, A)
    if not report.passed:
        raise SVError("not-a-subgroup", f"{what}: fallisce su {report.condition} con testimone {report.witness}")


def meet_subgroups(G: FiniteGroup, As: Sequence[SVSet]) -> SVSet:
    if not As:
        raise SVError("usage", "meet_subgroups richiede almeno un SV-set")
    for i, A in enumerate(As):
        _require_subgroup(G, A, f"As[{i}]")
    out = As[0]
    for A in As[1:]:
        out = sv_intersection(out, A)
    if not is_sv_subgroup(G, out).passed:
        log("GROUPS", "il meet di SV-sottogruppi non è un SV-sottogruppo", "ERROR")
        raise SVError("not-a-subgroup", "postcondizione violata sul meet")
    return out


def pullback_subgroup(phi: GroupHom, A: SVSet) -> SVSet:
    """(φ*A)(x) = A(φ(x)), SV-sottogruppo di φ.source."""
    if set(A.universe.elements) != set(phi.target.elements):
        raise SVError("hom-mismatch", f"A non vive sul codominio {phi.target.name} di {phi.name}")
    _require_subgroup(phi.target, A, "A")
    out = pullback(phi.mapping, None, A, universe=phi.source.universe)
    if not is_sv_subgroup(phi.source, out).passed:
        log("GROUPS", f"pullback lungo {phi.name} non è un SV-sottogruppo", "ERROR")
        raise SVError("not-a-subgroup", "postcondizione violata sul pullback")
    return out


__all__ = [
    "FiniteGroup", "GroupHom", "cyclic", "symmetric3", "dihedral4", "identity_group_hom", "reduction_hom",
    "SubgroupReport", "DerivedReport", "EquivalenceReport", "AgreementReport", "LevelCheck", "PropertyCheck",
    "is_sv_subgroup", "derived_properties_check", "definitions_agree",
    "is_crisp_subgroup", "level_subgroup", "soft_level_subgroups", "enumerate_subgroups",
    "level_equivalence_check", "meet_subgroups", "pullback_subgroup",
]

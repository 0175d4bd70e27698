# -*- coding: utf-8 -*-
"""
documents.py
------------
Documenti JSON/CSV in ingresso, validati con pydantic e convertiti negli
oggetti del dominio. Ogni ValidationError diventa SVError("malformed-document")
con il percorso della chiave che non va.

Formati:
- scala:      {"kind": "chain", "k": 3}   (alias: unit-rational, ifs-delta, rough-chain, m3-diamond, ...)
- SV-set:     {"universe": [...], "params": [...], "scale": {...}, "values": {"x|e": v}}
- topologia:  {"scale": {...}, "universe": [...], "opens": [{"x": v, ...}, ...]}
- gruppo:     {"elements": [...], "table": [[...]], "identity": "e"}  oppure {"builtin": "Z6"}
- omomorfismo di scala / di gruppo, mappe f: U' → U
- tabella decisionale: CSV (intestazione = criteri, prima colonna = alternative, celle "mu;m")
  oppure JSON {"k": 10, "alternatives": [...], "criteria": [...], "values": {"a|c": "mu;m"}}
"""

from __future__ import annotations

import csv
import io
import os
import re
from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Union

import orjson
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError

import encoders as enc
from config import log
from decision import DecisionTable, EvidenceGrade
from errors import SVError
from groups import FiniteGroup, GroupHom, cyclic, dihedral4, identity_group_hom, reduction_hom, symmetric3
from rationals import format_rational
from scale import (
    BOOL,
    IFS,
    UNIT,
    FiniteLatticeSpec,
    Scale,
    ScaleHom,
    bool_embedding,
    build_finite_scale,
    chain_scale,
    chain_to_unit,
    diagonal_hom,
    function_scale,
    identity_hom,
    interval_scale,
    m3_scale,
    product_scale,
    rough_scale,
)
from svset import STAR, ParamSet, SVSet, Universe, sv_from_function
from topology import SVTopology


def _validate(adapter: Any, data: Any, what: str) -> Any:
    try:
        if isinstance(adapter, TypeAdapter):
            return adapter.validate_python(data)
        return adapter.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        path = ".".join(str(p) for p in first.get("loc", ())) or "<radice>"
        raise SVError("malformed-document", f"{what}: chiave '{path}': {first.get('msg', 'non valida')}") from None


# ============================================================
# SORGENTI (file o JSON inline)
# ============================================================

def read_json(source: str) -> Any:
    """Accetta un percorso oppure JSON inline (stringa che inizia con { o [)."""
    text = source.strip()
    if text.startswith("{") or text.startswith("["):
        raw = text.encode("utf-8")
        origin = "<inline>"
    else:
        if not os.path.exists(source):
            raise SVError("malformed-document", f"file non trovato: {source}")
        with open(source, "rb") as f:
            raw = f.read()
        origin = source
    try:
        data = orjson.loads(raw)
    except orjson.JSONDecodeError as e:
        raise SVError("malformed-document", f"{origin}: JSON non valido ({e})") from None
    log("LOADER", f"letto {origin}", "DEBUG")
    return data


# ============================================================
# SCALE
# ============================================================

class _Doc(BaseModel):
    model_config = ConfigDict(extra="forbid")


class BoolDoc(_Doc):
    kind: Literal["bool"]

    def build(self) -> Scale:
        return BOOL


class ChainDoc(_Doc):
    kind: Literal["chain"]
    k: int = Field(ge=1)

    def build(self) -> Scale:
        return chain_scale(self.k)


class UnitDoc(_Doc):
    kind: Literal["unit", "unit-rational"]

    def build(self) -> Scale:
        return UNIT


class IFSDoc(_Doc):
    kind: Literal["ifs", "ifs-delta"]

    def build(self) -> Scale:
        return IFS


class RoughDoc(_Doc):
    kind: Literal["rough", "rough-chain"]

    def build(self) -> Scale:
        return rough_scale()


class M3Doc(_Doc):
    kind: Literal["m3", "m3-diamond"]
    variant: Literal["swap", "fix"] = "swap"

    def build(self) -> Scale:
        return m3_scale(self.variant)


class ProductDoc(_Doc):
    kind: Literal["product"]
    left: "ScaleDescriptor"
    right: "ScaleDescriptor"

    def build(self) -> Scale:
        return product_scale(self.left.build(), self.right.build())


class IntervalDoc(_Doc):
    kind: Literal["interval"]
    base: "ScaleDescriptor"

    def build(self) -> Scale:
        return interval_scale(self.base.build())


class FunctionDoc(_Doc):
    kind: Literal["function", "function-grid"]
    grid: List[Union[str, int]]

    def build(self) -> Scale:
        return function_scale(self.grid)


class CustomDoc(_Doc):
    kind: Literal["custom", "custom-finite"]
    elements: List[str]
    covers: List[Tuple[str, str]] = Field(default_factory=list)
    neg: Dict[str, str]
    bottom: str
    top: str

    def build(self) -> Scale:
        spec = FiniteLatticeSpec(elements=self.elements, covers=self.covers, neg=self.neg, bottom=self.bottom, top=self.top)
        return build_finite_scale(spec)


ScaleDescriptor = Annotated[
    Union[BoolDoc, ChainDoc, UnitDoc, IFSDoc, RoughDoc, M3Doc, ProductDoc, IntervalDoc, FunctionDoc, CustomDoc],
    Field(discriminator="kind"),
]

ProductDoc.model_rebuild()
IntervalDoc.model_rebuild()

_SCALE_ADAPTER: TypeAdapter = TypeAdapter(ScaleDescriptor)


def scale_from_descriptor(data: Any) -> Scale:
    if isinstance(data, str):
        data = read_json(data)
    return _validate(_SCALE_ADAPTER, data, "scale").build()


# ============================================================
# SV-SET E TOPOLOGIE
# ============================================================

class SVSetDoc(_Doc):
    universe: List[str]
    params: List[str] = Field(default_factory=lambda: [STAR])
    scale: ScaleDescriptor
    values: Dict[str, Any]


def _table_from_values(universe: Universe, params: ParamSet, S: Scale, values: Dict[str, Any], where: str) -> SVSet:
    """Chiavi "x|e"; per E = {*} basta "x"."""
    unparam = params.params == (STAR,)
    for key in values:
        x, _, e = key.partition("|")
        if x not in universe or (e and e not in params) or (not e and not unparam):
            raise SVError("malformed-document", f"{where}: chiave '{key}' fuori da U × E")

    def cell(x: str, e: str) -> Any:
        key = f"{x}|{e}"
        if key in values:
            return S.parse(values[key], f"{where}.{key}")
        if unparam and x in values:
            return S.parse(values[x], f"{where}.{x}")
        raise SVError("non-total-map", f"{where}: manca il valore per '{key}'")

    return sv_from_function(universe, params, S, cell)


def svset_from_document(data: Any) -> SVSet:
    if isinstance(data, str):
        data = read_json(data)
    doc: SVSetDoc = _validate(SVSetDoc, data, "svset")
    S = doc.scale.build()
    U = Universe(tuple(doc.universe))
    E = ParamSet(tuple(doc.params))
    return _table_from_values(U, E, S, doc.values, "values")


class TopologyDoc(_Doc):
    scale: ScaleDescriptor
    universe: List[str]
    params: List[str] = Field(default_factory=lambda: [STAR])
    opens: List[Dict[str, Any]]


def topology_from_document(data: Any) -> SVTopology:
    if isinstance(data, str):
        data = read_json(data)
    doc: TopologyDoc = _validate(TopologyDoc, data, "topology")
    S = doc.scale.build()
    U = Universe(tuple(doc.universe))
    E = ParamSet(tuple(doc.params))
    opens = tuple(_table_from_values(U, E, S, table, f"opens[{i}]") for i, table in enumerate(doc.opens))
    log("LOADER", f"topologia su {S.name}: {len(opens)} aperti", "DEBUG")
    return SVTopology(U, S, opens, E)


def generators_from_document(data: Any) -> Tuple[Universe, Scale, ParamSet, List[SVSet]]:
    """Stesso formato della topologia, con "generators" al posto di "opens"."""
    if isinstance(data, str):
        data = read_json(data)
    if isinstance(data, dict) and "generators" in data:
        data = {**{k: v for k, v in data.items() if k != "generators"}, "opens": data["generators"]}
    tau = topology_from_document(data)
    return tau.universe, tau.scale, tau.params, list(tau.opens)


# ============================================================
# OMOMORFISMI DI SCALA
# ============================================================

class ScaleHomDoc(_Doc):
    source: ScaleDescriptor
    target: Optional[ScaleDescriptor] = None
    table: Optional[Dict[str, Any]] = None
    builtin: Optional[Literal["identity", "bool-embed", "chain-to-unit", "diagonal"]] = None
    name: str = "table"


def scale_hom_from_document(data: Any) -> ScaleHom:
    if isinstance(data, str):
        data = read_json(data)
    doc: ScaleHomDoc = _validate(ScaleHomDoc, data, "hom")
    S = doc.source.build()
    if doc.builtin == "identity":
        return identity_hom(S)
    if doc.builtin == "diagonal":
        return diagonal_hom(S)
    if doc.builtin == "chain-to-unit":
        if S.kind != "chain":
            raise SVError("scale-mismatch", "chain-to-unit richiede una catena come sorgente")
        return chain_to_unit(S.k)  # type: ignore[attr-defined]
    if doc.target is None:
        raise SVError("malformed-document", "hom: chiave 'target' mancante")
    T = doc.target.build()
    if doc.builtin == "bool-embed":
        if S != BOOL:
            raise SVError("scale-mismatch", "bool-embed richiede la sorgente bool")
        return bool_embedding(T)
    if doc.table is None:
        raise SVError("malformed-document", "hom: servono 'table' oppure 'builtin'")
    table = {S.parse(k, f"table.{k}"): T.parse(v, f"table.{k}") for k, v in doc.table.items()}
    return ScaleHom.from_table(S, T, table, name=doc.name)


# ============================================================
# GRUPPI
# ============================================================

_BUILTIN_GROUP = re.compile(r"^(Z(\d+)|S3|D4)$")


class GroupDoc(_Doc):
    builtin: Optional[str] = None
    elements: Optional[List[str]] = None
    table: Optional[List[List[str]]] = None
    identity: Optional[str] = None
    name: str = "G"


def builtin_group(name: str) -> FiniteGroup:
    m = _BUILTIN_GROUP.match(name.strip())
    if not m:
        raise SVError("malformed-document", f"gruppo predefinito sconosciuto {name!r} (Zn, S3, D4)")
    if m.group(2):
        return cyclic(int(m.group(2)))
    return symmetric3() if name.strip() == "S3" else dihedral4()


def group_from_document(data: Any) -> FiniteGroup:
    if isinstance(data, str):
        if _BUILTIN_GROUP.match(data.strip()):
            return builtin_group(data)
        data = read_json(data)
    doc: GroupDoc = _validate(GroupDoc, data, "group")
    if doc.builtin:
        return builtin_group(doc.builtin)
    if doc.elements is None or doc.table is None:
        raise SVError("malformed-document", "group: servono 'elements' e 'table' (oppure 'builtin')")
    return FiniteGroup.from_table(doc.elements, doc.table, doc.identity, name=doc.name)


class GroupHomDoc(_Doc):
    builtin: Optional[Literal["identity", "reduction"]] = None
    n: Optional[int] = None
    m: Optional[int] = None
    source: Optional[Union[str, GroupDoc]] = None
    target: Optional[Union[str, GroupDoc]] = None
    mapping: Optional[Dict[str, str]] = None
    name: str = "phi"


def _group(ref: Union[str, GroupDoc, None], key: str) -> FiniteGroup:
    if ref is None:
        raise SVError("malformed-document", f"group-hom: chiave '{key}' mancante")
    if isinstance(ref, str):
        return builtin_group(ref)
    return group_from_document(ref.model_dump(exclude_none=True))


def group_hom_from_document(data: Any) -> GroupHom:
    if isinstance(data, str):
        data = read_json(data)
    doc: GroupHomDoc = _validate(GroupHomDoc, data, "group-hom")
    if doc.builtin == "reduction":
        if doc.n is None or doc.m is None:
            raise SVError("malformed-document", "group-hom: 'reduction' richiede 'n' e 'm'")
        return reduction_hom(doc.n, doc.m)
    if doc.builtin == "identity":
        return identity_group_hom(_group(doc.source, "source"))
    if doc.mapping is None:
        raise SVError("malformed-document", "group-hom: chiave 'mapping' mancante")
    return GroupHom(_group(doc.source, "source"), _group(doc.target, "target"), dict(doc.mapping), name=doc.name)


# ============================================================
# MAPPE TRA UNIVERSI
# ============================================================

class MapDoc(_Doc):
    f: Dict[str, str]
    g: Optional[Dict[str, str]] = None
    target: Optional[List[str]] = None


def map_from_document(data: Any) -> MapDoc:
    if isinstance(data, str):
        data = read_json(data)
    return _validate(MapDoc, data, "map")


# ============================================================
# TABELLE DECISIONALI
# ============================================================

class DecisionDoc(_Doc):
    k: int = Field(ge=1)
    alternatives: List[str]
    criteria: List[str]
    values: Dict[str, Union[str, Tuple[Union[str, int], int]]]


def _grade(raw: Union[str, Tuple[Any, int]], k: int, key: str) -> EvidenceGrade:
    """Cella "mu;m" oppure coppia [mu, m]."""
    if isinstance(raw, str):
        return EvidenceGrade.parse(raw, k, key)
    mu, m = raw
    return EvidenceGrade(mu, m, k)



def decision_table_from_json(data: Any) -> DecisionTable:
    if isinstance(data, str):
        data = read_json(data)
    doc: DecisionDoc = _validate(DecisionDoc, data, "decision")
    if not doc.criteria:
        raise SVError("empty-criteria", "criteria: lista vuota")
    grades = {}
    for key, raw in doc.values.items():
        a, _, c = key.partition("|")
        grades[(a, c)] = _grade(raw, doc.k, f"values.{key}")
    return DecisionTable.from_grades(doc.alternatives, doc.criteria, doc.k, grades)


def decision_table_from_csv(text: str, k: int, origin: str = "<csv>") -> DecisionTable:
    rows = [r for r in csv.reader(io.StringIO(text)) if any(cell.strip() for cell in r)]
    if not rows:
        raise SVError("malformed-document", f"{origin}: CSV vuoto")
    header = [h.strip() for h in rows[0]]
    criteria = header[1:]
    if not criteria:
        raise SVError("empty-criteria", f"{origin}: nessuna colonna di criterio")
    alternatives: List[str] = []
    grades: Dict[Tuple[str, str], EvidenceGrade] = {}
    for n, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise SVError("malformed-document", f"{origin}: riga {n} ha {len(row)} celle, attese {len(header)}")
        a = row[0].strip()
        alternatives.append(a)
        for c, cell in zip(criteria, row[1:]):
            grades[(a, c)] = EvidenceGrade.parse(cell, k, f"{origin}:{a}|{c}")
    log("LOADER", f"{origin}: {len(alternatives)} alternative × {len(criteria)} criteri (k={k})", "DEBUG")
    return DecisionTable.from_grades(alternatives, criteria, k, grades)


def load_decision_table(path: str, k: Optional[int] = None) -> DecisionTable:
    """CSV se l'estensione è .csv (serve k), altrimenti JSON con k esplicito."""
    if not os.path.exists(path):
        raise SVError("malformed-document", f"file non trovato: {path}")
    if path.lower().endswith(".csv"):
        if k is None:
            raise SVError("usage", "le tabelle CSV richiedono --k")
        with open(path, "r", encoding="utf-8") as f:
            return decision_table_from_csv(f.read(), k, os.path.basename(path))
    table = decision_table_from_json(read_json(path))
    if k is not None and k != table.k:
        raise SVError("bound-mismatch", f"--k {k} ma il documento dichiara k = {table.k}")
    return table


# ============================================================
# MODELLI CLASSICI (set encode / set decode)
# ============================================================

class _ModelDoc(_Doc):
    universe: List[str]


class CrispModelDoc(_ModelDoc):
    members: List[str]

    def build(self, U: Universe) -> SVSet:
        return enc.crisp_to_sv(self.members, U)


class SoftModelDoc(_ModelDoc):
    params: List[str]
    assignment: Dict[str, List[str]]

    def build(self, U: Universe) -> SVSet:
        E = ParamSet(tuple(self.params))
        return enc.soft_to_sv(enc.SoftSet(U, E, {e: frozenset(v) for e, v in self.assignment.items()}))


class FuzzyModelDoc(_ModelDoc):
    mu: Dict[str, Any]

    def build(self, U: Universe) -> SVSet:
        return enc.fuzzy_to_sv(self.mu, U)


class MultisetModelDoc(_ModelDoc):
    k: int = Field(ge=1)
    m: Dict[str, int]

    def build(self, U: Universe) -> SVSet:
        return enc.multiset_to_sv(self.m, self.k, U)


class LFuzzyModelDoc(_ModelDoc):
    scale: ScaleDescriptor
    mu: Dict[str, Any]

    def build(self, U: Universe) -> SVSet:
        L = self.scale.build()
        return enc.lfuzzy_to_sv({x: L.parse(v, f"mu.{x}") for x, v in self.mu.items()}, L, U)


class IFSModelDoc(_ModelDoc):
    mu: Dict[str, Any]
    nu: Dict[str, Any]

    def build(self, U: Universe) -> SVSet:
        return enc.ifs_to_sv(enc.IFSPair(self.mu, self.nu), U)


class RoughModelDoc(_ModelDoc):
    lower: List[str]
    upper: List[str]

    def build(self, U: Universe) -> SVSet:
        return enc.rough_to_sv(enc.RoughPair(U, frozenset(self.lower), frozenset(self.upper)))


class Type2ModelDoc(_ModelDoc):
    grid: List[Union[str, int]]
    mu: Dict[str, List[Any]]

    def build(self, U: Universe) -> SVSet:
        F = function_scale(self.grid)
        mu = {}
        for x, row in self.mu.items():
            if len(row) != len(F.grid):
                raise SVError("malformed-document", f"type2: mu.{x} ha {len(row)} valori, griglia di {len(F.grid)}")
            mu.update({(x, u): v for u, v in zip(F.grid, row)})
        return enc.type2_to_sv(mu, F.grid, U)


class IT2ModelDoc(_ModelDoc):
    lower: Dict[str, Any]
    upper: Dict[str, Any]

    def build(self, U: Universe) -> SVSet:
        return enc.it2_to_sv(self.lower, self.upper, U)


class LVISSModelDoc(_ModelDoc):
    params: List[str]
    base: ScaleDescriptor
    lower: Dict[str, Dict[str, Any]]
    upper: Dict[str, Dict[str, Any]]
    domain: Optional[List[str]] = None

    def build(self, U: Universe) -> SVSet:
        V = self.base.build()
        E = ParamSet(tuple(self.params))

        def side(key: str, table: Dict[str, Dict[str, Any]]) -> Dict[str, Dict[str, Any]]:
            return {e: {x: V.parse(v, f"{key}.{e}.{x}") for x, v in fn.items()} for e, fn in table.items()}

        domain = tuple(self.domain) if self.domain is not None else None
        F = enc.LVISS(U, E, V, side("lower", self.lower), side("upper", self.upper), domain)
        return enc.lviss_membership_to_sv(F)


MODEL_DOCS: Dict[str, Any] = {
    "crisp": CrispModelDoc,
    "soft": SoftModelDoc,
    "fuzzy": FuzzyModelDoc,
    "multiset": MultisetModelDoc,
    "lfuzzy": LFuzzyModelDoc,
    "ifs": IFSModelDoc,
    "rough": RoughModelDoc,
    "type2": Type2ModelDoc,
    "it2": IT2ModelDoc,
    "lviss": LVISSModelDoc,
}
ENCODABLE_MODELS = tuple(MODEL_DOCS)


def encode_from_document(model: str, data: Any) -> SVSet:
    """
    Documento del modello classico → SV-set. Chiavi per modello:
    crisp {members}, soft {params, assignment}, fuzzy {mu}, multiset {k, m},
    lfuzzy {scale, mu}, ifs {mu, nu}, rough {lower, upper}, type2 {grid, mu: x → valori},
    it2 {lower, upper}, lviss {params, base, lower, upper, domain?}.
    """
    doc_type = MODEL_DOCS.get(model)
    if doc_type is None:
        raise SVError("usage", f"modello sconosciuto {model!r} (attesi: {', '.join(ENCODABLE_MODELS)})")
    if isinstance(data, str):
        data = read_json(data)
    doc = _validate(doc_type, data, model)
    return doc.build(Universe(tuple(doc.universe)))



def decode_to_document(model: str, A: SVSet) -> Dict[str, Any]:
    """Inversa di encode_from_document, con i razionali come stringhe."""
    U = list(A.universe.elements)
    if model == "crisp":
        members = enc.sv_to_crisp(A)
        return {"universe": U, "members": [x for x in U if x in members]}
    if model == "soft":
        F = enc.sv_to_soft(A)
        return {"universe": U, "params": list(A.params.params),
                "assignment": {e: [x for x in U if x in F(e)] for e in A.params}}
    if model == "fuzzy":
        return {"universe": U, "mu": {x: format_rational(v) for x, v in enc.sv_to_fuzzy(A).items()}}
    if model == "multiset":
        return {"universe": U, "k": A.scale.k, "m": enc.sv_to_multiset(A)}  # type: ignore[attr-defined]
    if model == "lfuzzy":
        return {"universe": U, "scale": A.scale.descriptor(),
                "mu": {x: A.scale.dump(v) for x, v in enc.sv_to_lfuzzy(A).items()}}
    if model == "ifs":
        p = enc.sv_to_ifs(A)
        return {"universe": U, "mu": {x: format_rational(p.mu[x]) for x in U}, "nu": {x: format_rational(p.nu[x]) for x in U}}
    if model == "rough":
        r = enc.sv_to_rough(A)
        return {"universe": U, "lower": [x for x in U if x in r.lower], "upper": [x for x in U if x in r.upper]}
    if model == "type2":
        grid = A.scale.grid  # type: ignore[attr-defined]
        mu = enc.sv_to_type2(A)
        return {"universe": U, "grid": [format_rational(u) for u in grid],
                "mu": {x: [format_rational(mu[(x, u)]) for u in grid] for x in U}}
    if model == "it2":
        lo, hi = enc.sv_to_it2(A)
        return {"universe": U, "lower": {x: format_rational(lo[x]) for x in U}, "upper": {x: format_rational(hi[x]) for x in U}}
    if model == "lviss":
        if A.scale.kind != "interval":
            raise SVError("wrong-scale", f"lviss richiede una scala I(V), trovata {A.scale.name}")
        V = A.scale.base  # type: ignore[attr-defined]
        lower = {e: {x: V.dump(A(x, e)[0]) for x in U} for e in A.params}
        upper = {e: {x: V.dump(A(x, e)[1]) for x in U} for e in A.params}
        return {"universe": U, "params": list(A.params.params), "base": V.descriptor(), "lower": lower, "upper": upper}
    raise SVError("usage", f"modello sconosciuto {model!r} (attesi: {', '.join(ENCODABLE_MODELS)})")


__all__ = [
    "read_json", "ScaleDescriptor", "scale_from_descriptor",
    "svset_from_document", "topology_from_document", "generators_from_document",
    "scale_hom_from_document", "builtin_group", "group_from_document", "group_hom_from_document",
    "map_from_document", "MapDoc",
    "decision_table_from_json", "decision_table_from_csv", "load_decision_table",
    "ENCODABLE_MODELS", "encode_from_document", "decode_to_document",
]

# -*- coding: utf-8 -*-
"""
svset.py
--------
SV-set = mappa totale A: U × E → Σ su universo e parametri finiti.

- Universe / ParamSet etichettati (E = {"*"} per gli SV-set non parametrizzati)
- algebra puntuale: unione, intersezione, complemento, inclusione
- slice A_e
- trasporti: transport (h_*), pullback ((f,g)^*), pushforward (f_!)

I valori sono memorizzati densi, righe = elementi, colonne = parametri,
nell'ordine dichiarato: la serializzazione è deterministica.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, Mapping, Optional, Sequence, Tuple

from errors import SVError
from scale import Element, Scale, ScaleHom

STAR = "*"


# ============================================================
# UNIVERSI E PARAMETRI
# ============================================================

def _labels(kind: str, labels: Sequence[str]) -> Tuple[str, ...]:
    out = tuple(labels)
    if not out:
        raise SVError("malformed-document", f"{kind}: non può essere vuoto")
    if len(set(out)) != len(out):
        raise SVError("malformed-document", f"{kind}: etichette duplicate")
    for lab in out:
        if not isinstance(lab, str):
            raise SVError("malformed-document", f"{kind}: etichetta {lab!r} non è una stringa")
    return out


@dataclass(frozen=True)
class Universe:
    elements: Tuple[str, ...]
    name: str = field(default="U", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", _labels("universe", self.elements))
        object.__setattr__(self, "_pos", {x: i for i, x in enumerate(self.elements)})

    def index(self, x: str) -> int:
        try:
            return self._pos[x]  # type: ignore[attr-defined]
        except KeyError:
            raise SVError("target-mismatch", f"{x!r} non appartiene all'universo {self.name}") from None

    def __contains__(self, x: object) -> bool:
        return x in self._pos  # type: ignore[attr-defined]

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class ParamSet:
    params: Tuple[str, ...]
    name: str = field(default="E", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "params", _labels("params", self.params))
        object.__setattr__(self, "_pos", {e: i for i, e in enumerate(self.params)})

    def index(self, e: str) -> int:
        try:
            return self._pos[e]  # type: ignore[attr-defined]
        except KeyError:
            raise SVError("unknown-param", f"parametro {e!r} non in {list(self.params)}") from None

    def __contains__(self, e: object) -> bool:
        return e in self._pos  # type: ignore[attr-defined]

    def __iter__(self) -> Iterator[str]:
        return iter(self.params)

    def __len__(self) -> int:
        return len(self.params)


UNPARAMETERIZED = ParamSet((STAR,))


# ============================================================
# SV-SET
# ============================================================

@dataclass(frozen=True)
class SVSet:
    universe: Universe
    params: ParamSet
    scale: Scale
    values: Tuple[Tuple[Element, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(r) for r in self.values)
        if len(rows) != len(self.universe) or any(len(r) != len(self.params) for r in rows):
            raise SVError("non-total-map", "la tabella dei valori non copre U × E")
        for x, row in zip(self.universe, rows):
            for e, v in zip(self.params, row):
                self.scale.check(v, f"{x}|{e}")
        object.__setattr__(self, "values", rows)

    def __call__(self, x: str, e: str = STAR) -> Element:
        return self.values[self.universe.index(x)][self.params.index(e)]

    value = __call__

    @property
    def is_unparameterized(self) -> bool:
        return len(self.params) == 1

    def items(self) -> Iterator[Tuple[Tuple[str, str], Element]]:
        for x, row in zip(self.universe, self.values):
            for e, v in zip(self.params, row):
                yield (x, e), v

    def column(self, e: str) -> Tuple[Element, ...]:
        j = self.params.index(e)
        return tuple(row[j] for row in self.values)

    def single(self) -> Tuple[Element, ...]:
        """Valori per elemento di un SV-set non parametrizzato."""
        if not self.is_unparameterized:
            raise SVError("shape-mismatch", f"atteso un SV-set non parametrizzato, parametri {list(self.params)}")
        return tuple(row[0] for row in self.values)

    def to_document(self) -> Dict[str, Any]:
        return {
            "universe": list(self.universe.elements),
            "params": list(self.params.params),
            "scale": self.scale.descriptor(),
            "values": {f"{x}|{e}": self.scale.dump(v) for (x, e), v in self.items()},
        }


def sv_from_function(universe: Universe, params: ParamSet, scale: Scale,
                     fn: Callable[[str, str], Element]) -> SVSet:
    return SVSet(universe, params, scale, tuple(tuple(fn(x, e) for e in params) for x in universe))


def sv_from_table(universe: Universe, params: ParamSet, scale: Scale,
                  table: Mapping[Tuple[str, str], Element]) -> SVSet:
    missing = [f"{x}|{e}" for x in universe for e in params if (x, e) not in table]
    if missing:
        raise SVError("non-total-map", f"values: mancano {missing[:5]}")
    return sv_from_function(universe, params, scale, lambda x, e: table[(x, e)])


def sv_unparameterized(universe: Universe, scale: Scale, mapping: Mapping[str, Element]) -> SVSet:
    missing = [x for x in universe if x not in mapping]
    if missing:
        raise SVError("non-total-map", f"values: mancano {missing[:5]}")
    return SVSet(universe, UNPARAMETERIZED, scale, tuple((mapping[x],) for x in universe))


def sv_constant(universe: Universe, params: ParamSet, scale: Scale, value: Element) -> SVSet:
    return sv_from_function(universe, params, scale, lambda x, e: value)


# ============================================================
# ALGEBRA PUNTUALE
# ============================================================

def require_same_shape(A: SVSet, B: SVSet) -> None:
    if A.universe != B.universe:
        raise SVError("shape-mismatch", "universi diversi")
    if A.params != B.params:
        raise SVError("shape-mismatch", "insiemi di parametri diversi")
    if A.scale != B.scale:
        raise SVError("shape-mismatch", f"scale diverse: {A.scale.name} vs {B.scale.name}")


def _pointwise(A: SVSet, B: SVSet, op: Callable[[Element, Element], Element]) -> SVSet:
    require_same_shape(A, B)
    rows = tuple(tuple(op(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(A.values, B.values))
    return SVSet(A.universe, A.params, A.scale, rows)


def sv_union(A: SVSet, B: SVSet) -> SVSet:
    return _pointwise(A, B, A.scale._join)


def sv_intersection(A: SVSet, B: SVSet) -> SVSet:
    return _pointwise(A, B, A.scale._meet)


def sv_complement(A: SVSet) -> SVSet:
    rows = tuple(tuple(A.scale._neg(v) for v in row) for row in A.values)
    return SVSet(A.universe, A.params, A.scale, rows)


def sv_subset(A: SVSet, B: SVSet) -> bool:
    require_same_shape(A, B)
    L = A.scale._leq
    return all(L(a, b) for ra, rb in zip(A.values, B.values) for a, b in zip(ra, rb))


def sv_slice(A: SVSet, e: str) -> SVSet:
    """A_e(x) = A(x, e), non parametrizzato sullo stesso universo."""
    col = A.column(e)
    return SVSet(A.universe, UNPARAMETERIZED, A.scale, tuple((v,) for v in col))


# ============================================================
# TRASPORTI
# ============================================================

def transport(h: ScaleHom, A: SVSet) -> SVSet:
    """(h_*A)(x,e) = h(A(x,e))."""
    if A.scale != h.source:
        raise SVError("scale-mismatch", f"omomorfismo da {h.source.name}, SV-set su {A.scale.name}")
    rows = tuple(tuple(h.mapping(v) for v in row) for row in A.values)
    return SVSet(A.universe, A.params, h.target, rows)


def _check_map(f: Mapping[str, str], domain: Sequence[str], codomain: Any, what: str) -> None:
    unmapped = [x for x in domain if x not in f]
    if unmapped:
        raise SVError("non-total-map", f"{what}: nessuna immagine per {unmapped[:5]}")
    outside = [f[x] for x in domain if f[x] not in codomain]
    if outside:
        raise SVError("target-mismatch", f"{what}: immagini fuori dal codominio {outside[:5]}")


def pullback(f: Mapping[str, str], g: Optional[Mapping[str, str]], A: SVSet,
             universe: Optional[Universe] = None, params: Optional[ParamSet] = None) -> SVSet:
    """
    ((f,g)^*A)(x',e') = A(f(x'), g(e')). U' ed E' sono presi dalle chiavi
    delle mappe se non indicati; g=None vale l'identità su E.
    """
    universe = universe or Universe(tuple(f.keys()), name="U'")
    if g is None:
        g = {e: e for e in A.params}
        params = params or A.params
    params = params or ParamSet(tuple(g.keys()), name="E'")
    _check_map(f, universe.elements, A.universe, "f")
    _check_map(g, params.params, A.params, "g")
    rows = tuple(
        tuple(A.values[A.universe.index(f[x])][A.params.index(g[e])] for e in params)
        for x in universe
    )
    return SVSet(universe, params, A.scale, rows)


def pushforward(f: Mapping[str, str], A: SVSet, target: Universe) -> SVSet:
    """(f_!A)(v,e) = ⋁ {A(x,e) : f(x) = v}; fibra vuota ↦ 0. Fibre finite: il join esiste sempre."""
    _check_map(f, A.universe.elements, target, "f")
    S = A.scale
    rows = []
    for v in target:
        fiber = [A.universe.index(x) for x in A.universe if f[x] == v]
        rows.append(tuple(S.join_all(A.values[i][j] for i in fiber) for j in range(len(A.params))))
    return SVSet(target, A.params, S, tuple(rows))

# -*- coding: utf-8 -*-
"""
scale.py
--------
Scale = reticoli di De Morgan limitati (carrier, ∨, ∧, 0, 1, ¬).

Contiene:
- le scale predefinite (bool, catena 0..k, [0,1] razionale, Δ intuizionistica,
  catena rough, diamante M3, prodotto, intervalli I(V), funzioni su griglia),
- la costruzione di reticoli finiti da coppie di copertura (build_finite_scale),
- gli omomorfismi di scala,
- la verifica delle leggi (verify_scale_laws / verify_scale_hom) con testimone.

Tutti gli oggetti sono immutabili dopo la costruzione; le operazioni sono pure.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Literal, Optional, Sequence, Tuple

import orjson
from pydantic import BaseModel, Field

from config import RANDOM_SAMPLES, log
from errors import SVError
from rationals import format_rational, parse_rational, parse_unit

Element = Any


# ============================================================
# SCALA ASTRATTA
# ============================================================

class Scale:
    """
    Base comune. Le sottoclassi implementano _join/_meet/_neg, contains,
    parse/dump e, se finite, _enumerate. I metodi pubblici validano gli argomenti.
    """

    kind: str = "abstract"
    finite: bool = False
    bottom: Element
    top: Element

    # --- da implementare -------------------------------------------------
    def contains(self, a: Element) -> bool:
        raise NotImplementedError

    def _join(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def _meet(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def _neg(self, a: Element) -> Element:
        raise NotImplementedError

    def _enumerate(self) -> Tuple[Element, ...]:
        raise SVError("infinite-carrier-exhaustive", f"la scala {self.name} ha carrier infinito")

    def random_element(self, rng: random.Random) -> Element:
        return rng.choice(self.elements())

    def descriptor(self) -> Dict[str, Any]:
        raise NotImplementedError

    def parse(self, raw: Any, key: str = "valore") -> Element:
        raise NotImplementedError

    def dump(self, a: Element) -> Any:
        return a

    def label(self, a: Element) -> str:
        return str(self.dump(a))

    # --- proprietà derivate ---------------------------------------------
    @property
    def name(self) -> str:
        return self.kind

    @property
    def is_complete(self) -> bool:
        return self.finite

    @property
    def is_chain(self) -> bool:
        if not self.finite:
            return False
        els = self.elements()
        return all(self._leq(a, b) or self._leq(b, a) for a, b in itertools.combinations(els, 2))

    def elements(self) -> Tuple[Element, ...]:
        cached = self.__dict__.get("_elements")
        if cached is None:
            cached = self._enumerate()
            object.__setattr__(self, "_elements", cached)
        return cached

    def _leq(self, a: Element, b: Element) -> bool:
        return self._meet(a, b) == a

    # --- operazioni pubbliche -------------------------------------------
    def check(self, a: Element, key: str = "valore") -> Element:
        if not self.contains(a):
            raise SVError("element-not-in-carrier", f"{key}: {a!r} non appartiene alla scala {self.name}")
        return a

    def join(self, a: Element, b: Element) -> Element:
        return self._join(self.check(a), self.check(b))

    def meet(self, a: Element, b: Element) -> Element:
        return self._meet(self.check(a), self.check(b))

    def neg(self, a: Element) -> Element:
        return self._neg(self.check(a))

    def leq(self, a: Element, b: Element) -> bool:
        return self._leq(self.check(a), self.check(b))

    def lt(self, a: Element, b: Element) -> bool:
        """Ordine stretto: a ≤ b e a ≠ b (anche su reticoli non totali)."""
        return a != b and self.leq(a, b)

    def join_all(self, values: Iterable[Element]) -> Element:
        out = self.bottom
        for v in values:
            out = self._join(out, v)
        return out

    def meet_all(self, values: Iterable[Element]) -> Element:
        out = self.top
        for v in values:
            out = self._meet(out, v)
        return out

    # --- identità per descrittore ---------------------------------------
    def key(self) -> bytes:
        return orjson.dumps(self.descriptor(), option=orjson.OPT_SORT_KEYS)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Scale) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"<Scale {self.name}>"


# ============================================================
# SCALE PREDEFINITE
# ============================================================

class BoolScale(Scale):
    kind = "bool"
    finite = True

    def __init__(self) -> None:
        self.bottom = False
        self.top = True

    def contains(self, a: Element) -> bool:
        return isinstance(a, bool)

    def _join(self, a, b):
        return a or b

    def _meet(self, a, b):
        return a and b

    def _neg(self, a):
        return not a

    def _leq(self, a, b):
        return (not a) or b

    def _enumerate(self):
        return (False, True)

    @property
    def is_chain(self) -> bool:
        return True

    def descriptor(self):
        return {"kind": "bool"}

    def parse(self, raw, key="valore"):
        if isinstance(raw, bool):
            return raw
        if raw in (0, 1, "0", "1"):
            return bool(int(raw))
        if isinstance(raw, str) and raw.lower() in ("true", "false"):
            return raw.lower() == "true"
        raise SVError("element-not-in-carrier", f"{key}: {raw!r} non è un booleano")

    def label(self, a):
        return "1" if a else "0"


class ChainScale(Scale):
    """Catena {0,1,…,k} con ¬n = k−n (multinsiemi limitati)."""

    kind = "chain"
    finite = True

    def __init__(self, k: int) -> None:
        if isinstance(k, bool) or not isinstance(k, int) or k < 1:
            raise SVError("out-of-range", f"k={k!r}: la catena richiede k intero ≥ 1")
        self.k = k
        self.bottom = 0
        self.top = k

    @property
    def name(self) -> str:
        return f"chain({self.k})"

    def contains(self, a):
        return isinstance(a, int) and not isinstance(a, bool) and 0 <= a <= self.k

    def _join(self, a, b):
        return max(a, b)

    def _meet(self, a, b):
        return min(a, b)

    def _neg(self, a):
        return self.k - a

    def _leq(self, a, b):
        return a <= b

    def _enumerate(self):
        return tuple(range(self.k + 1))

    @property
    def is_chain(self) -> bool:
        return True

    def descriptor(self):
        return {"kind": "chain", "k": self.k}

    def parse(self, raw, key="valore"):
        if isinstance(raw, str) and raw.strip().isdigit():
            raw = int(raw.strip())
        if isinstance(raw, int) and not isinstance(raw, bool) and 0 <= raw <= self.k:
            return raw
        raise SVError("element-not-in-carrier", f"{key}: {raw!r} fuori da 0..{self.k}")


class UnitScale(Scale):
    """[0,1] razionale esatto, max/min, ¬t = 1−t. Non completo (sup non razionali)."""

    kind = "unit"

    def __init__(self) -> None:
        self.bottom = Fraction(0)
        self.top = Fraction(1)

    def contains(self, a):
        return isinstance(a, (Fraction, int)) and not isinstance(a, bool) and 0 <= a <= 1

    def _join(self, a, b):
        return max(a, b)

    def _meet(self, a, b):
        return min(a, b)

    def _neg(self, a):
        return 1 - Fraction(a)

    def _leq(self, a, b):
        return a <= b

    @property
    def is_chain(self) -> bool:
        return True

    @property
    def is_complete(self) -> bool:
        return False

    def random_element(self, rng):
        return _random_unit(rng)

    def descriptor(self):
        return {"kind": "unit"}

    def parse(self, raw, key="valore"):
        return parse_unit(raw, key)

    def dump(self, a):
        return format_rational(Fraction(a))


class IFSScale(Scale):
    """Δ = {(a,b) : a+b ≤ 1}, (a,b) ≤ (c,d) sse a ≤ c e b ≥ d, ¬(a,b) = (b,a)."""

    kind = "ifs"

    def __init__(self) -> None:
        self.bottom = (Fraction(0), Fraction(1))
        self.top = (Fraction(1), Fraction(0))

    def contains(self, a):
        if not (isinstance(a, tuple) and len(a) == 2):
            return False
        mu, nu = a
        return UNIT.contains(mu) and UNIT.contains(nu) and mu + nu <= 1

    def _join(self, a, b):
        return (max(a[0], b[0]), min(a[1], b[1]))

    def _meet(self, a, b):
        return (min(a[0], b[0]), max(a[1], b[1]))

    def _neg(self, a):
        return (a[1], a[0])

    def _leq(self, a, b):
        return a[0] <= b[0] and a[1] >= b[1]

    def random_element(self, rng):
        mu = _random_unit(rng)
        den = rng.randint(1, 12)
        nu = Fraction(rng.randint(0, int((1 - mu) * den)), den)
        return (mu, nu)

    def descriptor(self):
        return {"kind": "ifs"}

    def parse(self, raw, key="valore"):
        if not isinstance(raw, (list, tuple)) or len(raw) != 2:
            raise SVError("element-not-in-carrier", f"{key}: atteso [mu, nu], trovato {raw!r}")
        mu, nu = parse_unit(raw[0], f"{key}[0]"), parse_unit(raw[1], f"{key}[1]")
        if mu + nu > 1:
            raise SVError("constraint-violation", f"{key}: mu+nu = {format_rational(mu + nu)} > 1")
        return (mu, nu)

    def dump(self, a):
        return [format_rational(a[0]), format_rational(a[1])]

    def label(self, a):
        return f"({format_rational(a[0])},{format_rational(a[1])})"


# ============================================================
# RETICOLI FINITI (coppie di copertura)
# ============================================================

class FiniteLatticeSpec(BaseModel):
    elements: List[str]
    covers: List[Tuple[str, str]] = Field(default_factory=list)
    neg: Dict[str, str]
    bottom: str
    top: str


class FiniteScale(Scale):
    """
    Reticolo finito su nomi. Ordine = chiusura riflessivo-transitiva delle
    coperture; join/meet tabulati. Costruito solo da build_finite_scale.
    """

    finite = True

    def __init__(self, kind: str, spec: FiniteLatticeSpec, leq: List[List[bool]],
                 join: Dict[Tuple[str, str], str], meet: Dict[Tuple[str, str], str],
                 descriptor: Dict[str, Any]) -> None:
        self.kind = kind
        self.spec = spec
        self.names = tuple(spec.elements)
        self._index = {n: i for i, n in enumerate(self.names)}
        self._order = leq
        self._join_table = join
        self._meet_table = meet
        self._neg_table = dict(spec.neg)
        self._descriptor = descriptor
        self.bottom = spec.bottom
        self.top = spec.top

    @property
    def name(self) -> str:
        variant = self._descriptor.get("variant")
        return f"{self.kind}({variant})" if variant else self.kind

    def contains(self, a):
        return isinstance(a, str) and a in self._index

    def _join(self, a, b):
        return self._join_table[(a, b)]

    def _meet(self, a, b):
        return self._meet_table[(a, b)]

    def _neg(self, a):
        return self._neg_table[a]

    def _leq(self, a, b):
        return self._order[self._index[a]][self._index[b]]

    def _enumerate(self):
        return self.names

    def descriptor(self):
        return dict(self._descriptor)

    def parse(self, raw, key="valore"):
        if isinstance(raw, str) and raw in self._index:
            return raw
        raise SVError("element-not-in-carrier", f"{key}: {raw!r} non è un elemento di {self.name} {list(self.names)}")


def _order_closure(spec: FiniteLatticeSpec) -> List[List[bool]]:
    names = spec.elements
    if len(set(names)) != len(names):
        raise SVError("malformed-document", "elements: nomi duplicati")
    idx = {n: i for i, n in enumerate(names)}
    for lo, hi in spec.covers:
        for n in (lo, hi):
            if n not in idx:
                raise SVError("malformed-document", f"covers: elemento sconosciuto {n!r}")
    for n in (spec.bottom, spec.top):
        if n not in idx:
            raise SVError("malformed-document", f"bottom/top: elemento sconosciuto {n!r}")
    size = len(names)
    leq = [[i == j for j in range(size)] for i in range(size)]
    for lo, hi in spec.covers:
        leq[idx[lo]][idx[hi]] = True
    # Warshall
    for m in range(size):
        for i in range(size):
            if leq[i][m]:
                row_m = leq[m]
                row_i = leq[i]
                for j in range(size):
                    if row_m[j]:
                        row_i[j] = True
    for i, j in itertools.combinations(range(size), 2):
        if leq[i][j] and leq[j][i]:
            raise SVError("not-a-lattice", f"ciclo nelle coperture tra {names[i]!r} e {names[j]!r}: non è un ordine parziale")
    return leq


def _bound_table(names: Sequence[str], leq: List[List[bool]], upper: bool) -> Dict[Tuple[str, str], str]:
    size = len(names)
    table: Dict[Tuple[str, str], str] = {}
    for i in range(size):
        for j in range(size):
            if upper:
                cands = [m for m in range(size) if leq[i][m] and leq[j][m]]
                best = [m for m in cands if all(leq[m][o] for o in cands)]
            else:
                cands = [m for m in range(size) if leq[m][i] and leq[m][j]]
                best = [m for m in cands if all(leq[o][m] for o in cands)]
            if len(best) != 1:
                what = "sup" if upper else "inf"
                raise SVError("not-a-lattice", f"la coppia ({names[i]}, {names[j]}) non ha un {what} unico")
            table[(names[i], names[j])] = names[best[0]]
    return table


def build_finite_scale(spec: FiniteLatticeSpec, verify: bool = True, kind: str = "custom",
                       descriptor: Optional[Dict[str, Any]] = None) -> FiniteScale:
    """
    Costruisce una scala finita dalle coperture. Con verify=True controlla
    esaustivamente involuzione, De Morgan e antitonia (nell'ordine, così il
    primo difetto trovato dà il codice d'errore). verify=False serve solo per
    costruire fixture corrotte da dare a verify_scale_laws.
    """
    leq = _order_closure(spec)
    names = spec.elements
    idx = {n: i for i, n in enumerate(names)}
    b, t = idx[spec.bottom], idx[spec.top]
    for i, n in enumerate(names):
        if not (leq[b][i] and leq[i][t]):
            raise SVError("bounds-mismatch", f"{n!r} non sta tra bottom={spec.bottom!r} e top={spec.top!r}")
    join = _bound_table(names, leq, upper=True)
    meet = _bound_table(names, leq, upper=False)

    if set(spec.neg) != set(names) or not set(spec.neg.values()) <= set(names):
        raise SVError("bad-involution", "neg deve essere una mappa totale nome→nome sugli elementi")

    if descriptor is None:
        descriptor = {"kind": "custom", **spec.model_dump()}
        descriptor["covers"] = [list(c) for c in spec.covers]
    scale = FiniteScale(kind, spec, leq, join, meet, descriptor)
    if not verify:
        return scale

    neg = spec.neg
    for a in names:
        if neg[neg[a]] != a:
            raise SVError("bad-involution", f"¬¬{a} = {neg[neg[a]]} ≠ {a}")
    for a in names:
        for c in names:
            if neg[join[(a, c)]] != meet[(neg[a], neg[c])]:
                raise SVError("de-morgan-violation", f"¬({a}∨{c}) ≠ ¬{a}∧¬{c}")
            if neg[meet[(a, c)]] != join[(neg[a], neg[c])]:
                raise SVError("de-morgan-violation", f"¬({a}∧{c}) ≠ ¬{a}∨¬{c}")
    for a in names:
        for c in names:
            if leq[idx[a]][idx[c]] and not leq[idx[neg[c]]][idx[neg[a]]]:
                raise SVError("bad-involution", f"{a} ≤ {c} ma ¬{c} ≰ ¬{a}")
    return scale


ROUGH_ELEMENTS = ("(0,0)", "(0,1)", "(1,1)")


def rough_scale() -> FiniteScale:
    """Catena R = {(0,0) < (0,1) < (1,1)} con ¬(0,1) = (0,1)."""
    spec = FiniteLatticeSpec(
        elements=list(ROUGH_ELEMENTS),
        covers=[("(0,0)", "(0,1)"), ("(0,1)", "(1,1)")],
        neg={"(0,0)": "(1,1)", "(0,1)": "(0,1)", "(1,1)": "(0,0)"},
        bottom="(0,0)",
        top="(1,1)",
    )
    return build_finite_scale(spec, kind="rough", descriptor={"kind": "rough"})


def m3_scale(variant: Literal["swap", "fix"] = "swap") -> FiniteScale:
    """Diamante M3 = {0, p, q, 1}; 'swap': ¬p = q, 'fix': ¬p = p, ¬q = q. Entrambe valide."""
    if variant not in ("swap", "fix"):
        raise SVError("malformed-document", f"variant: {variant!r} (attesi 'swap' o 'fix')")
    neg = {"0": "1", "1": "0"}
    neg.update({"p": "q", "q": "p"} if variant == "swap" else {"p": "p", "q": "q"})
    spec = FiniteLatticeSpec(
        elements=["0", "p", "q", "1"],
        covers=[("0", "p"), ("0", "q"), ("p", "1"), ("q", "1")],
        neg=neg,
        bottom="0",
        top="1",
    )
    return build_finite_scale(spec, kind="m3", descriptor={"kind": "m3", "variant": variant})


# ============================================================
# COSTRUZIONI: PRODOTTO, INTERVALLI, FUNZIONI SU GRIGLIA
# ============================================================

class ProductScale(Scale):
    kind = "product"

    def __init__(self, left: Scale, right: Scale) -> None:
        self.left = left
        self.right = right
        self.finite = left.finite and right.finite
        self.bottom = (left.bottom, right.bottom)
        self.top = (left.top, right.top)

    @property
    def name(self) -> str:
        return f"{self.left.name}×{self.right.name}"

    @property
    def is_complete(self) -> bool:
        return self.left.is_complete and self.right.is_complete

    @property
    def is_chain(self) -> bool:
        # un prodotto di due scale con almeno due elementi non è mai totale
        return False

    def contains(self, a):
        return isinstance(a, tuple) and len(a) == 2 and self.left.contains(a[0]) and self.right.contains(a[1])

    def _join(self, a, b):
        return (self.left._join(a[0], b[0]), self.right._join(a[1], b[1]))

    def _meet(self, a, b):
        return (self.left._meet(a[0], b[0]), self.right._meet(a[1], b[1]))

    def _neg(self, a):
        return (self.left._neg(a[0]), self.right._neg(a[1]))

    def _leq(self, a, b):
        return self.left._leq(a[0], b[0]) and self.right._leq(a[1], b[1])

    def _enumerate(self):
        if not self.finite:
            return super()._enumerate()
        return tuple(itertools.product(self.left.elements(), self.right.elements()))

    def random_element(self, rng):
        return (self.left.random_element(rng), self.right.random_element(rng))

    def descriptor(self):
        return {"kind": "product", "left": self.left.descriptor(), "right": self.right.descriptor()}

    def parse(self, raw, key="valore"):
        if not isinstance(raw, (list, tuple)) or len(raw) != 2:
            raise SVError("element-not-in-carrier", f"{key}: atteso [sinistra, destra], trovato {raw!r}")
        return (self.left.parse(raw[0], f"{key}[0]"), self.right.parse(raw[1], f"{key}[1]"))

    def dump(self, a):
        return [self.left.dump(a[0]), self.right.dump(a[1])]

    def label(self, a):
        return f"({self.left.label(a[0])},{self.right.label(a[1])})"


class IntervalScale(Scale):
    """I(V) = {[l,u] : l ≤ u}, operazioni agli estremi, ¬[l,u] = [¬u, ¬l]."""

    kind = "interval"

    def __init__(self, base: Scale) -> None:
        self.base = base
        self.finite = base.finite
        self.bottom = (base.bottom, base.bottom)
        self.top = (base.top, base.top)

    @property
    def name(self) -> str:
        return f"I({self.base.name})"

    @property
    def is_complete(self) -> bool:
        return self.base.is_complete

    @property
    def is_chain(self) -> bool:
        return self.finite and super().is_chain

    def contains(self, a):
        return (isinstance(a, tuple) and len(a) == 2 and self.base.contains(a[0])
                and self.base.contains(a[1]) and self.base._leq(a[0], a[1]))

    def _join(self, a, b):
        return (self.base._join(a[0], b[0]), self.base._join(a[1], b[1]))

    def _meet(self, a, b):
        return (self.base._meet(a[0], b[0]), self.base._meet(a[1], b[1]))

    def _neg(self, a):
        return (self.base._neg(a[1]), self.base._neg(a[0]))

    def _leq(self, a, b):
        return self.base._leq(a[0], b[0]) and self.base._leq(a[1], b[1])

    def _enumerate(self):
        if not self.finite:
            return super()._enumerate()
        els = self.base.elements()
        return tuple((l, u) for l in els for u in els if self.base._leq(l, u))

    def random_element(self, rng):
        x, y = self.base.random_element(rng), self.base.random_element(rng)
        return (self.base._meet(x, y), self.base._join(x, y))

    def descriptor(self):
        return {"kind": "interval", "base": self.base.descriptor()}

    def parse(self, raw, key="valore"):
        if not isinstance(raw, (list, tuple)) or len(raw) != 2:
            raise SVError("element-not-in-carrier", f"{key}: atteso [l, u], trovato {raw!r}")
        lo, hi = self.base.parse(raw[0], f"{key}[0]"), self.base.parse(raw[1], f"{key}[1]")
        if not self.base._leq(lo, hi):
            raise SVError("interval-violation", f"{key}: l={self.base.label(lo)} > u={self.base.label(hi)}")
        return (lo, hi)

    def dump(self, a):
        return [self.base.dump(a[0]), self.base.dump(a[1])]

    def label(self, a):
        return f"[{self.base.label(a[0])},{self.base.label(a[1])}]"


class FunctionScale(Scale):
    """[0,1]^griglia: funzioni sui punti di una griglia finita, ordine e ¬ puntuali."""

    kind = "function"

    def __init__(self, grid: Sequence[Fraction]) -> None:
        grid = tuple(grid)
        if not grid:
            raise SVError("bad-grid", "la griglia è vuota")
        for u in grid:
            if not isinstance(u, (Fraction, int)) or isinstance(u, bool) or not 0 <= u <= 1:
                raise SVError("bad-grid", f"punto {u!r} fuori da [0,1]")
        if any(a >= b for a, b in zip(grid, grid[1:])):
            raise SVError("bad-grid", "la griglia deve essere strettamente crescente")
        self.grid = tuple(Fraction(u) for u in grid)
        self.bottom = tuple(Fraction(0) for _ in self.grid)
        self.top = tuple(Fraction(1) for _ in self.grid)

    @property
    def name(self) -> str:
        return f"[0,1]^{{{','.join(format_rational(u) for u in self.grid)}}}"

    @property
    def is_chain(self) -> bool:
        return len(self.grid) == 1

    @property
    def is_complete(self) -> bool:
        return False

    def contains(self, a):
        return isinstance(a, tuple) and len(a) == len(self.grid) and all(UNIT.contains(v) for v in a)

    def _join(self, a, b):
        return tuple(max(x, y) for x, y in zip(a, b))

    def _meet(self, a, b):
        return tuple(min(x, y) for x, y in zip(a, b))

    def _neg(self, a):
        return tuple(1 - Fraction(x) for x in a)

    def _leq(self, a, b):
        return all(x <= y for x, y in zip(a, b))

    def random_element(self, rng):
        return tuple(_random_unit(rng) for _ in self.grid)

    def descriptor(self):
        return {"kind": "function", "grid": [format_rational(u) for u in self.grid]}

    def parse(self, raw, key="valore"):
        if not isinstance(raw, (list, tuple)) or len(raw) != len(self.grid):
            raise SVError("element-not-in-carrier", f"{key}: attesi {len(self.grid)} valori sulla griglia")
        return tuple(parse_unit(v, f"{key}[{i}]") for i, v in enumerate(raw))

    def dump(self, a):
        return [format_rational(v) for v in a]

    def label(self, a):
        return "(" + ",".join(format_rational(v) for v in a) + ")"


def _random_unit(rng: random.Random) -> Fraction:
    roll = rng.random()
    if roll < 0.08:
        return Fraction(0)
    if roll < 0.16:
        return Fraction(1)
    den = rng.randint(1, 20)
    return Fraction(rng.randint(0, den), den)


BOOL = BoolScale()
UNIT = UnitScale()
IFS = IFSScale()


def chain_scale(k: int) -> ChainScale:
    return ChainScale(k)


def product_scale(left: Scale, right: Scale) -> ProductScale:
    return ProductScale(left, right)


def interval_scale(base: Scale) -> IntervalScale:
    return IntervalScale(base)


def function_scale(grid: Sequence[Any]) -> FunctionScale:
    return FunctionScale(tuple(parse_rational(u, "grid") if not isinstance(u, Fraction) else u for u in grid))


# ============================================================
# OPERAZIONI (forma funzionale)
# ============================================================

def join(S: Scale, a: Element, b: Element) -> Element:
    return S.join(a, b)


def meet(S: Scale, a: Element, b: Element) -> Element:
    return S.meet(a, b)


def neg(S: Scale, a: Element) -> Element:
    return S.neg(a)


def leq(S: Scale, a: Element, b: Element) -> bool:
    return S.leq(a, b)


# ============================================================
# OMOMORFISMI DI SCALA
# ============================================================

@dataclass(frozen=True)
class ScaleHom:
    source: Scale
    target: Scale
    name: str
    mapping: Callable[[Element], Element] = field(compare=False, repr=False)
    table: Optional[Tuple[Tuple[Element, Element], ...]] = None

    def __call__(self, a: Element) -> Element:
        return self.mapping(self.source.check(a))

    def descriptor(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"name": self.name, "source": self.source.descriptor(), "target": self.target.descriptor()}
        if self.table is not None:
            out["table"] = {self.source.label(a): self.target.dump(b) for a, b in self.table}
        return out

    @classmethod
    def from_table(cls, source: Scale, target: Scale, table: Dict[Element, Element], name: str = "table") -> "ScaleHom":
        if not source.finite:
            raise SVError("infinite-carrier-exhaustive", "un omomorfismo tabulato richiede una sorgente finita")
        missing = [source.label(a) for a in source.elements() if a not in table]
        if missing:
            raise SVError("non-total-map", f"table: mancano i valori per {missing}")
        for a, b in table.items():
            source.check(a, "table")
            target.check(b, f"table[{source.label(a)}]")
        frozen = dict(table)
        rows = tuple((a, frozen[a]) for a in source.elements())
        return cls(source, target, name, frozen.__getitem__, rows)


def identity_hom(S: Scale) -> ScaleHom:
    return ScaleHom(S, S, "identity", lambda a: a)


def bool_embedding(T: Scale) -> ScaleHom:
    """false ↦ 0, true ↦ 1 in qualsiasi scala T."""
    return ScaleHom(BOOL, T, "bool-embed", lambda a: T.top if a else T.bottom)


def chain_to_unit(k: int) -> ScaleHom:
    """n ↦ n/k da {0..k} a [0,1]."""
    C = chain_scale(k)
    return ScaleHom(C, UNIT, "chain-to-unit", lambda n: Fraction(n, k))


def diagonal_hom(V: Scale) -> ScaleHom:
    """v ↦ [v, v] da V a I(V)."""
    return ScaleHom(V, interval_scale(V), "diagonal", lambda v: (v, v))


# ============================================================
# VERIFICA DELLE LEGGI
# ============================================================

class Sampling(BaseModel):
    mode: Literal["exhaustive", "random"] = "exhaustive"
    n: int = Field(default=RANDOM_SAMPLES, ge=1)
    seed: int = 0

    @classmethod
    def exhaustive(cls) -> "Sampling":
        return cls(mode="exhaustive")

    @classmethod
    def random(cls, n: int, seed: int) -> "Sampling":
        return cls(mode="random", n=n, seed=seed)

    def describe(self) -> str:
        return "exhaustive" if self.mode == "exhaustive" else f"random(n={self.n}, seed={self.seed})"


class LawCheck(BaseModel):
    law: str
    passed: bool
    checked: int
    witness: Optional[List[Any]] = None


class LawReport(BaseModel):
    subject: str
    sampling: str
    passed: bool
    laws: List[LawCheck]

    def failures(self) -> List[LawCheck]:
        return [c for c in self.laws if not c.passed]


class _LawBook:
    """Raccoglie esito e primo testimone per ogni legge."""

    def __init__(self, names: Sequence[str], dump: Callable[[Element], Any]) -> None:
        self._dump = dump
        self._names = list(names)
        self._counts: Dict[str, int] = {n: 0 for n in names}
        self._witness: Dict[str, List[Any]] = {}

    def record(self, law: str, ok: bool, *witness: Element) -> None:
        self._counts[law] += 1
        if not ok and law not in self._witness:
            self._witness[law] = [self._dump(w) for w in witness]

    def ok(self, law: str) -> bool:
        return law not in self._witness

    def report(self, subject: str, sampling: Sampling) -> LawReport:
        laws = [
            LawCheck(law=n, passed=n not in self._witness, checked=self._counts[n], witness=self._witness.get(n))
            for n in self._names
        ]
        return LawReport(subject=subject, sampling=sampling.describe(), passed=not self._witness, laws=laws)


SCALE_LAWS = (
    "join-idempotent", "meet-idempotent", "join-commutative", "meet-commutative",
    "join-associative", "meet-associative", "absorption-join", "absorption-meet",
    "bounds", "order-consistency", "involution", "antitone",
    "de-morgan-join", "de-morgan-meet", "neg-bounds",
)


def _samples(S: Scale, sampling: Sampling, arity: int) -> Iterable[Tuple[Element, ...]]:
    if sampling.mode == "exhaustive":
        return itertools.product(S.elements(), repeat=arity)
    rng = random.Random(f"{sampling.seed}:{arity}")
    return (tuple(S.random_element(rng) for _ in range(arity)) for _ in range(sampling.n))


def verify_scale_laws(S: Scale, sampling: Optional[Sampling] = None) -> LawReport:
    """
    Leggi del reticolo di De Morgan limitato, ciascuna con il primo testimone
    di fallimento. La distributività non è verificata (M3 deve passare).
    """
    sampling = sampling or Sampling.exhaustive()
    if sampling.mode == "exhaustive" and not S.finite:
        raise SVError("infinite-carrier-exhaustive", f"verifica esaustiva impossibile su {S.name}")
    if sampling.mode == "exhaustive":
        log("SCALE", f"verifica esaustiva su {S.name}: {len(S.elements())} elementi", "DEBUG")

    book = _LawBook(SCALE_LAWS, S.dump)
    J, M, N, L = S._join, S._meet, S._neg, S._leq

    for (a,) in _samples(S, sampling, 1):
        book.record("join-idempotent", J(a, a) == a, a)
        book.record("meet-idempotent", M(a, a) == a, a)
        book.record("bounds", L(S.bottom, a) and L(a, S.top), a)
        book.record("involution", N(N(a)) == a, a)

    for a, b in _samples(S, sampling, 2):
        book.record("join-commutative", J(a, b) == J(b, a), a, b)
        book.record("meet-commutative", M(a, b) == M(b, a), a, b)
        book.record("absorption-join", J(a, M(a, b)) == a, a, b)
        book.record("absorption-meet", M(a, J(a, b)) == a, a, b)
        book.record("order-consistency", (M(a, b) == a) == (J(a, b) == b), a, b)
        book.record("antitone", (not L(a, b)) or L(N(b), N(a)), a, b)
        book.record("de-morgan-join", N(J(a, b)) == M(N(a), N(b)), a, b)
        book.record("de-morgan-meet", N(M(a, b)) == J(N(a), N(b)), a, b)

    for a, b, c in _samples(S, sampling, 3):
        book.record("join-associative", J(J(a, b), c) == J(a, J(b, c)), a, b, c)
        book.record("meet-associative", M(M(a, b), c) == M(a, M(b, c)), a, b, c)

    book.record("neg-bounds", N(S.bottom) == S.top and N(S.top) == S.bottom, S.bottom, S.top)
    return book.report(S.name, sampling)


HOM_LAWS = ("maps-into-target", "preserves-join", "preserves-meet", "preserves-bottom", "preserves-top", "preserves-neg")


def verify_scale_hom(h: ScaleHom, sampling: Optional[Sampling] = None) -> LawReport:
    """Immagini nel supporto di arrivo prima di tutto: le altre leggi operano su T."""
    sampling = sampling or Sampling.exhaustive()
    S, T = h.source, h.target
    if sampling.mode == "exhaustive" and not S.finite:
        raise SVError("infinite-carrier-exhaustive", f"verifica esaustiva impossibile su {S.name}")

    book = _LawBook(HOM_LAWS, S.dump)
    f = h.mapping
    subject = f"{h.name}: {S.name} → {T.name}"
    for (a,) in _samples(S, sampling, 1):
        book.record("maps-into-target", T.contains(f(a)), a)
    for a in (S.bottom, S.top):
        book.record("maps-into-target", T.contains(f(a)), a)
    if not book.ok("maps-into-target"):
        log("SCALE", f"{subject}: immagine fuori dal supporto, leggi non verificate", "WARN")
        return book.report(subject, sampling)

    book.record("preserves-bottom", f(S.bottom) == T.bottom, S.bottom)
    book.record("preserves-top", f(S.top) == T.top, S.top)
    for (a,) in _samples(S, sampling, 1):
        book.record("preserves-neg", f(S._neg(a)) == T._neg(f(a)), a)
    for a, b in _samples(S, sampling, 2):
        book.record("preserves-join", f(S._join(a, b)) == T._join(f(a), f(b)), a, b)
        book.record("preserves-meet", f(S._meet(a, b)) == T._meet(f(a), f(b)), a, b)
    return book.report(subject, sampling)

# -*- coding: utf-8 -*-
"""
decision.py
-----------
Decisione su scala prodotto [0,1] × {0..k}: (grado μ, numero di evidenze m).

- aggregate_min: regola conservativa B(u) = ⋀_e A(u,e) (meet nel prodotto)
- score / rank: r_λ(μ,m) = λμ + (1−λ)m/k in aritmetica razionale esatta
- break_even / lambda_sweep: i λ* in cui due profili si scambiano
- projection_rankings: classifiche sulle sole proiezioni (con i pareggi espliciti)

Pareggi sempre esposti come gruppi, mai rotti arbitrariamente.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Literal, Mapping, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field

from errors import SVError
from rationals import format_rational, parse_rational, parse_unit
from scale import UNIT, ProductScale, chain_scale, product_scale
from svset import ParamSet, SVSet, Universe, sv_from_function

LambdaLike = Any


# ============================================================
# TIPI
# ============================================================

@dataclass(frozen=True)
class EvidenceGrade:
    mu: Fraction
    m: int
    k: int

    def __post_init__(self) -> None:
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 1:
            raise SVError("out-of-range", f"k = {self.k!r}: serve un intero ≥ 1")
        try:
            mu = parse_unit(self.mu, "mu")
        except SVError as e:
            raise SVError("out-of-range", e.detail) from None
        if isinstance(self.m, bool) or not isinstance(self.m, int) or not 0 <= self.m <= self.k:
            raise SVError("out-of-range", f"m = {self.m!r} fuori da 0..{self.k}")
        object.__setattr__(self, "mu", mu)

    @classmethod
    def parse(cls, cell: str, k: int, key: str = "cella") -> "EvidenceGrade":
        """Cella CSV "mu;m", es. "0.90;8"."""
        parts = [p.strip() for p in str(cell).split(";")]
        if len(parts) != 2 or not parts[1].lstrip("-").isdigit():
            raise SVError("malformed-document", f"{key}: {cell!r} non è nella forma \"mu;m\"")
        return cls(parse_rational(parts[0], f"{key}.mu"), int(parts[1]), k)

    def as_element(self) -> Tuple[Fraction, int]:
        return (self.mu, self.m)

    def label(self) -> str:
        return f"({format_rational(self.mu)},{self.m})"


def grade_scale(k: int) -> ProductScale:
    return product_scale(UNIT, chain_scale(k))


@dataclass(frozen=True)
class DecisionTable:
    """Tabella alternative × criteri, internamente un SV-set su [0,1] × {0..k}."""

    sv: SVSet
    k: int

    def __post_init__(self) -> None:
        if self.sv.scale != grade_scale(self.k):
            raise SVError("wrong-scale", f"serve la scala [0,1]×chain({self.k}), trovata {self.sv.scale.name}")

    @classmethod
    def from_grades(cls, alternatives: Sequence[str], criteria: Sequence[str], k: int,
                    grades: Mapping[Tuple[str, str], EvidenceGrade]) -> "DecisionTable":
        if not criteria:
            raise SVError("empty-criteria", "nessun criterio: il meet vuoto darebbe il top")
        U = Universe(tuple(alternatives), name="alternatives")
        E = ParamSet(tuple(criteria), name="criteria")

        def cell(a: str, c: str) -> Tuple[Fraction, int]:
            g = grades.get((a, c))
            if g is None:
                raise SVError("non-total-map", f"manca la valutazione di {a!r} su {c!r}")
            if g.k != k:
                raise SVError("bound-mismatch", f"{a}|{c}: k = {g.k}, la tabella ha k = {k}")
            return g.as_element()

        return cls(sv_from_function(U, E, grade_scale(k), cell), k)

    @classmethod
    def from_svset(cls, A: SVSet) -> "DecisionTable":
        S = A.scale
        if not (isinstance(S, ProductScale) and S.left == UNIT and S.right.kind == "chain"):
            raise SVError("wrong-scale", f"serve una scala [0,1]×chain(k), trovata {S.name}")
        return cls(A, S.right.k)  # type: ignore[attr-defined]

    @property
    def alternatives(self) -> Universe:
        return self.sv.universe

    @property
    def criteria(self) -> ParamSet:
        return self.sv.params

    def grade(self, a: str, c: str) -> EvidenceGrade:
        mu, m = self.sv(a, c)
        return EvidenceGrade(mu, m, self.k)


# ============================================================
# REPORT
# ============================================================

class RankingResult(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    lam: str = Field(alias="lambda")
    scores: Dict[str, str]
    order: List[List[str]]

    def exact_scores(self) -> Dict[str, Fraction]:
        return {a: Fraction(s) for a, s in self.scores.items()}

    def chain(self) -> str:
        """"L4≻L2≻L3≻L1", pareggi come "P2=P3"."""
        return "≻".join("=".join(group) for group in self.order)


class BreakEvenReport(BaseModel):
    pair: Tuple[str, str]
    relation: Literal["crossing", "dominance", "always-tied"]
    lambda_star: Optional[str] = None
    below: Optional[str] = None
    above: Optional[str] = None
    winner: Optional[str] = None


class SweepInterval(BaseModel):
    lower: str
    upper: str
    sample: str
    order: List[List[str]]


class SweepTie(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    lam: str = Field(alias="lambda")
    order: List[List[str]]


class SweepReport(BaseModel):
    breakpoints: List[str]
    intervals: List[SweepInterval]
    ties: List[SweepTie]


class ProjectionGroup(BaseModel):
    value: str
    alternatives: List[str]


class ProjectionReport(BaseModel):
    grade_only: List[ProjectionGroup]
    evidence_only: List[ProjectionGroup]

    def ties(self, which: Literal["grade", "evidence"]) -> List[List[str]]:
        groups = self.grade_only if which == "grade" else self.evidence_only
        return [g.alternatives for g in groups if len(g.alternatives) > 1]


# ============================================================
# AGGREGAZIONE E PUNTEGGI
# ============================================================

def aggregate_min(T: DecisionTable) -> Dict[str, EvidenceGrade]:
    """B(u) = ⋀_e A(u,e), componente per componente."""
    if len(T.criteria) == 0:
        raise SVError("empty-criteria", "nessun criterio da aggregare")
    S = T.sv.scale
    out: Dict[str, EvidenceGrade] = {}
    for a, row in zip(T.alternatives, T.sv.values):
        mu, m = S.meet_all(row)
        out[a] = EvidenceGrade(mu, m, T.k)
    return out


def parse_lambda(raw: LambdaLike) -> Fraction:
    lam = parse_rational(raw, "lambda")
    if not 0 < lam < 1:
        raise SVError("lambda-out-of-range", f"λ = {format_rational(lam)}: serve 0 < λ < 1")
    return lam


def _r(g: EvidenceGrade, lam: Fraction) -> Fraction:
    return lam * g.mu + (1 - lam) * Fraction(g.m, g.k)


def score(B: Mapping[str, EvidenceGrade], lam: LambdaLike, k: int) -> Dict[str, Fraction]:
    """r_λ(μ,m) = λμ + (1−λ)·m/k."""
    lam = parse_lambda(lam)
    for a, g in B.items():
        if g.k != k:
            raise SVError("bound-mismatch", f"{a}: grado con k = {g.k}, atteso k = {k}")
    return {a: _r(g, lam) for a, g in B.items()}


def _groups(values: Mapping[str, Any], descending: bool = True) -> List[Tuple[Any, List[str]]]:
    ordered = sorted(values.items(), key=lambda kv: kv[1], reverse=descending)
    out: List[Tuple[Any, List[str]]] = []
    for v, items in itertools.groupby(ordered, key=lambda kv: kv[1]):
        out.append((v, sorted(a for a, _ in items)))
    return out


def _ranking(B: Mapping[str, EvidenceGrade], lam: Fraction, k: int) -> RankingResult:
    scores = score(B, lam, k)
    return RankingResult(
        lam=format_rational(lam),
        scores={a: format_rational(s) for a, s in scores.items()},
        order=[group for _, group in _groups(scores)],
    )


def rank(T: DecisionTable, lam: LambdaLike) -> RankingResult:
    return _ranking(aggregate_min(T), parse_lambda(lam), T.k)


# ============================================================
# BREAK-EVEN E SWEEP
# ============================================================

def break_even(g1: EvidenceGrade, g2: EvidenceGrade, names: Tuple[str, str] = ("u1", "u2")) -> BreakEvenReport:
    """
    Profili che differiscono in direzioni opposte si incrociano in
    λ* = (m2−m1) / (k(μ1−μ2) + (m2−m1)); sotto λ* vince chi ha più evidenze.
    """
    if g1.k != g2.k:
        raise SVError("bound-mismatch", f"k diversi: {g1.k} e {g2.k}")
    n1, n2 = names
    d_mu = g2.mu - g1.mu
    d_m = g2.m - g1.m
    if d_mu == 0 and d_m == 0:
        return BreakEvenReport(pair=names, relation="always-tied")
    if d_mu * d_m < 0:
        lam = Fraction(d_m) / (g1.k * (g1.mu - g2.mu) + d_m)
        more_evidence, more_grade = (n2, n1) if d_m > 0 else (n1, n2)
        return BreakEvenReport(pair=names, relation="crossing", lambda_star=format_rational(lam),
                               below=more_evidence, above=more_grade)
    winner = n2 if (d_mu > 0 or d_m > 0) else n1
    return BreakEvenReport(pair=names, relation="dominance", winner=winner)


def lambda_sweep(T: DecisionTable) -> SweepReport:
    """Classifica esatta su ogni intervallo aperto tra λ* consecutivi e struttura dei pareggi in ogni λ*."""
    B = aggregate_min(T)
    names = list(B)
    cuts = set()
    for a, b in itertools.combinations(names, 2):
        rep = break_even(B[a], B[b], (a, b))
        if rep.relation == "crossing":
            cuts.add(Fraction(rep.lambda_star))
    points = sorted(cuts)
    bounds = [Fraction(0)] + points + [Fraction(1)]

    intervals = []
    for lo, hi in zip(bounds, bounds[1:]):
        mid = (lo + hi) / 2
        intervals.append(SweepInterval(lower=format_rational(lo), upper=format_rational(hi),
                                       sample=format_rational(mid), order=_ranking(B, mid, T.k).order))
    ties = [SweepTie(lam=format_rational(p), order=_ranking(B, p, T.k).order) for p in points]
    return SweepReport(breakpoints=[format_rational(p) for p in points], intervals=intervals, ties=ties)


def sweep_order_at(report: SweepReport, lam: LambdaLike) -> List[List[str]]:
    """Ordine dello sweep valido in λ (intervallo che lo contiene, o pareggio se λ è un breakpoint)."""
    lam = parse_lambda(lam)
    for tie in report.ties:
        if Fraction(tie.lam) == lam:
            return tie.order
    for iv in report.intervals:
        if Fraction(iv.lower) < lam < Fraction(iv.upper):
            return iv.order
    raise SVError("lambda-out-of-range", f"λ = {format_rational(lam)} non cade in nessun intervallo")


# ============================================================
# PROIEZIONI
# ============================================================

def projection_rankings(T: DecisionTable) -> ProjectionReport:
    """Classifiche su π₁∘B (solo grado) e π₂∘B (solo evidenze)."""
    B = aggregate_min(T)
    grade = _groups({a: g.mu for a, g in B.items()})
    evidence = _groups({a: g.m for a, g in B.items()})
    return ProjectionReport(
        grade_only=[ProjectionGroup(value=format_rational(v), alternatives=g) for v, g in grade],
        evidence_only=[ProjectionGroup(value=str(v), alternatives=g) for v, g in evidence],
    )


def crossing_configuration(mu: Any, mu_prime: Any, m: int, m_prime: int, k: int) -> DecisionTable:
    """u1 = (μ,m), u2 = (μ,m′), u3 = (μ′,m) con μ < μ′ e m < m′, un solo criterio."""
    g1 = EvidenceGrade(mu, m, k)
    g2 = EvidenceGrade(mu, m_prime, k)
    g3 = EvidenceGrade(mu_prime, m, k)
    if not (g1.mu < g3.mu and g1.m < g2.m):
        raise SVError("out-of-range", "serve μ < μ′ e m < m′")
    grades = {("u1", "overall"): g1, ("u2", "overall"): g2, ("u3", "overall"): g3}
    return DecisionTable.from_grades(["u1", "u2", "u3"], ["overall"], k, grades)


__all__ = [
    "EvidenceGrade", "DecisionTable", "grade_scale",
    "RankingResult", "BreakEvenReport", "SweepReport", "SweepInterval", "SweepTie",
    "ProjectionReport", "ProjectionGroup",
    "aggregate_min", "parse_lambda", "score", "rank", "break_even", "lambda_sweep",
    "sweep_order_at", "projection_rankings", "crossing_configuration",
]

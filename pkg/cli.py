# -*- coding: utf-8 -*-
"""
cli.py
------
Comando unico `svset <gruppo> <verbo> ...`:

    svset scale   check | hom
    svset set     op | encode | decode | cut | slice | transport | pullback | pushforward
    svset topo    validate | generate | cut | continuity | counterexample | slice
    svset group   check | levels | equivalence | meet | pullback | subgroups
    svset decide  rank | sweep | breakeven | projections

Uscita: testo allineato (default) o JSON con --json (chiavi ordinate, campo
"schema"; stessi input ⇒ stessi byte). Exit 0 = ok, 1 = verifica fallita o
rifiuto con testimone, 2 = errore d'uso o di documento.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Sequence

import orjson
from pydantic import BaseModel

from config import APP_VERSION, CLOSURE_CAP, DEFAULT_SEED, RANDOM_SAMPLES, REPORT_SCHEMA, log
from decision import aggregate_min, break_even, lambda_sweep, projection_rankings, rank
from documents import (
    ENCODABLE_MODELS,
    decode_to_document,
    encode_from_document,
    generators_from_document,
    group_from_document,
    group_hom_from_document,
    load_decision_table,
    map_from_document,
    read_json,
    scale_from_descriptor,
    scale_hom_from_document,
    svset_from_document,
    topology_from_document,
)
from errors import SVError
from groups import (
    derived_properties_check,
    enumerate_subgroups,
    is_crisp_subgroup,
    is_sv_subgroup,
    level_equivalence_check,
    level_subgroup,
    meet_subgroups,
    pullback_subgroup,
)
from rationals import format_rational
from scale import Sampling, Scale, verify_scale_hom, verify_scale_laws
from svset import SVSet, Universe, pullback, pushforward, sv_complement, sv_intersection, sv_slice, sv_subset, sv_union, transport
from topology import (
    CrispTopology,
    check_crisp_continuity,
    check_sv_continuity,
    cut_topology,
    generate_sv_topology,
    m3_cut_counterexample,
    m3_cut_join_counterexample,
    slice_topology,
    strong_cut,
    validate_sv_topology,
    weak_cut,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2

# rifiuti "di verifica": l'input è leggibile ma non soddisfa la struttura richiesta
REFUSAL_CODES = frozenset({
    "not-a-chain", "not-a-lattice", "bad-involution", "de-morgan-violation", "bounds-mismatch",
    "not-a-group", "not-a-hom", "not-a-subgroup", "invalid-family",
})


@dataclass
class Outcome:
    payload: Any
    text: str
    passed: bool = True


# ============================================================
# RENDERING
# ============================================================

def render_table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells = [[str(c) for c in row] for row in rows]
    widths = [len(h) for h in headers]
    for row in cells:
        for i, c in enumerate(row):
            widths[i] = max(widths[i], len(c))
    line = "  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()
    sep = "  ".join("-" * w for w in widths)
    body = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join([line, sep] + body)


def _dump(obj: Any) -> Any:
    if isinstance(obj, BaseModel):
        return obj.model_dump(mode="json", by_alias=True)
    if isinstance(obj, list):
        return [_dump(o) for o in obj]
    if isinstance(obj, dict):
        return {k: _dump(v) for k, v in obj.items()}
    return obj


def _emit_json(command: str, body: Dict[str, Any]) -> None:
    doc = {"schema": REPORT_SCHEMA, "version": APP_VERSION, "command": command, **body}
    sys.stdout.write(orjson.dumps(doc, option=orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2).decode("utf-8") + "\n")


def _svset_text(A: SVSet) -> str:
    headers = [A.universe.name] + list(A.params.params)
    rows = [[x] + [A.scale.label(v) for v in row] for x, row in zip(A.universe, A.values)]
    return f"scala: {A.scale.name}\n" + render_table(headers, rows)


def _subset_text(universe: Universe, S: Any) -> str:
    members = set(S)
    return "{" + ", ".join(x for x in universe if x in members) + "}"


def _parse_element(S: Scale, raw: str, key: str = "alpha") -> Any:
    text = raw.strip()
    value: Any = text
    if text.startswith("["):
        value = read_json(text)
    return S.parse(value, key)


def _sampling(args: argparse.Namespace) -> Sampling:
    if args.random is None:
        return Sampling.exhaustive()
    seed = args.seed if args.seed is not None else DEFAULT_SEED
    if seed is None:
        raise SVError("usage", "i controlli casuali richiedono --seed (o SVSET_SEED)")
    return Sampling.random(args.random, int(seed))


def _law_text(report: Any) -> str:
    rows = [[c.law, "ok" if c.passed else "FAIL", c.checked, "" if c.witness is None else orjson.dumps(c.witness).decode()]
            for c in report.laws]
    head = f"{report.subject} [{report.sampling}]: {'tutte le leggi valgono' if report.passed else 'leggi violate'}"
    return head + "\n" + render_table(["legge", "esito", "casi", "testimone"], rows)


# ============================================================
# SCALE
# ============================================================

def cmd_scale_check(args: argparse.Namespace) -> Outcome:
    S = scale_from_descriptor(args.scale)
    report = verify_scale_laws(S, _sampling(args))
    return Outcome(report, _law_text(report), report.passed)


def cmd_scale_hom(args: argparse.Namespace) -> Outcome:
    h = scale_hom_from_document(args.hom)
    report = verify_scale_hom(h, _sampling(args))
    return Outcome(report, _law_text(report), report.passed)


# ============================================================
# SV-SET
# ============================================================

def cmd_set_op(args: argparse.Namespace) -> Outcome:
    A = svset_from_document(args.a)
    if args.op == "complement":
        R = sv_complement(A)
        return Outcome(R.to_document(), _svset_text(R))
    if not args.b:
        raise SVError("usage", f"--op {args.op} richiede --b")
    B = svset_from_document(args.b)
    if args.op == "subset":
        ok = sv_subset(A, B)
        return Outcome({"subset": ok}, f"A ⊆ B: {'sì' if ok else 'no'}")
    R = sv_union(A, B) if args.op == "union" else sv_intersection(A, B)
    return Outcome(R.to_document(), _svset_text(R))


def cmd_set_encode(args: argparse.Namespace) -> Outcome:
    A = encode_from_document(args.model, args.input)
    return Outcome(A.to_document(), _svset_text(A))


def cmd_set_decode(args: argparse.Namespace) -> Outcome:
    A = svset_from_document(args.a)
    doc = decode_to_document(args.model, A)
    return Outcome(doc, orjson.dumps(doc, option=orjson.OPT_SORT_KEYS).decode())


def cmd_set_cut(args: argparse.Namespace) -> Outcome:
    A = svset_from_document(args.a)
    alpha = _parse_element(A.scale, args.alpha)
    cut = weak_cut(A, alpha) if args.weak else strong_cut(A, alpha)
    members = [x for x in A.universe if x in cut]
    kind = "weak" if args.weak else "strong"
    return Outcome({"kind": kind, "alpha": A.scale.dump(alpha), "cut": members},
                   f"{kind} cut a α = {A.scale.label(alpha)}: {_subset_text(A.universe, cut)}")


def cmd_set_slice(args: argparse.Namespace) -> Outcome:
    R = sv_slice(svset_from_document(args.a), args.param)
    return Outcome(R.to_document(), _svset_text(R))


def cmd_set_transport(args: argparse.Namespace) -> Outcome:
    R = transport(scale_hom_from_document(args.hom), svset_from_document(args.a))
    return Outcome(R.to_document(), _svset_text(R))


def cmd_set_pullback(args: argparse.Namespace) -> Outcome:
    m = map_from_document(args.map)
    R = pullback(m.f, m.g, svset_from_document(args.a))
    return Outcome(R.to_document(), _svset_text(R))


def cmd_set_pushforward(args: argparse.Namespace) -> Outcome:
    m = map_from_document(args.map)
    targets = m.target or list(dict.fromkeys(m.f.values()))
    R = pushforward(m.f, svset_from_document(args.a), Universe(tuple(targets), name="V"))
    return Outcome(R.to_document(), _svset_text(R))


# ============================================================
# TOPOLOGIE
# ============================================================

def _validation_text(report: Any) -> str:
    rows = [[a.axiom, "ok" if a.passed else "FAIL", "" if a.witness is None else orjson.dumps(a.witness, option=orjson.OPT_SORT_KEYS).decode()]
            for a in report.axioms]
    head = f"{report.subject}: {'valida' if report.valid else 'NON valida'} ({report.size} aperti)"
    return head + "\n" + render_table(["assioma", "esito", "testimone"], rows)


def _crisp_text(T: CrispTopology) -> str:
    doc = T.to_document()
    return "\n".join(["{" + ", ".join(O) + "}" for O in doc["opens"]])


def cmd_topo_validate(args: argparse.Namespace) -> Outcome:
    report = validate_sv_topology(topology_from_document(args.file))
    return Outcome(report, _validation_text(report), report.valid)


def cmd_topo_generate(args: argparse.Namespace) -> Outcome:
    U, S, E, gens = generators_from_document(args.file)
    tau = generate_sv_topology(gens, universe=U, scale=S, params=E, cap=args.cap)
    report = validate_sv_topology(tau)
    text = f"{len(tau)} aperti su {S.name}\n" + "\n".join(
        " ".join(S.label(v) for row in A.values for v in row) for A in tau.opens)
    return Outcome({"topology": tau.to_document(), "validation": _dump(report)}, text, report.valid)


def cmd_topo_cut(args: argparse.Namespace) -> Outcome:
    tau = topology_from_document(args.file)
    alpha = _parse_element(tau.scale, args.alpha)
    T = cut_topology(tau, alpha)
    return Outcome(T.to_document(), f"τ^{{>{tau.scale.label(alpha)}}}: {len(T)} aperti\n" + _crisp_text(T))


def cmd_topo_slice(args: argparse.Namespace) -> Outcome:
    tau = slice_topology(topology_from_document(args.file), args.param)
    return Outcome(tau.to_document(), f"slice {args.param}: {len(tau)} aperti")


def cmd_topo_continuity(args: argparse.Namespace) -> Outcome:
    m = map_from_document(args.map)
    tau_U = topology_from_document(args.source)
    tau_V = topology_from_document(args.target)
    report = check_sv_continuity(m.f, tau_U, tau_V)
    payload: Dict[str, Any] = {"sv": _dump(report)}
    lines = [f"SV-continuità: {'sì' if report.continuous else 'no'} ({report.checked} aperti controllati)"]
    if not report.continuous:
        lines.append(f"aperto {orjson.dumps(report.failing_open, option=orjson.OPT_SORT_KEYS).decode()} ha pullback fuori da τ_U")
    passed = report.continuous
    if args.cuts and report.continuous:
        S = tau_U.scale
        if not (S.finite and S.is_chain):
            raise SVError("not-a-chain", f"--cuts richiede una catena finita, trovata {S.name}")
        cuts = {}
        for alpha in S.elements():
            if alpha == S.top:
                continue
            crisp = check_crisp_continuity(m.f, cut_topology(tau_U, alpha), cut_topology(tau_V, alpha))
            cuts[S.label(alpha)] = _dump(crisp)
            lines.append(f"  α = {S.label(alpha)}: continua tra i tagli: {'sì' if crisp.continuous else 'no'}")
            passed = passed and crisp.continuous
        payload["cuts"] = cuts
    return Outcome(payload, "\n".join(lines), passed)


def cmd_topo_counterexample(args: argparse.Namespace) -> Outcome:
    report = m3_cut_join_counterexample() if args.join else m3_cut_counterexample()
    symbol = "∪" if report.operation == "join" else "∩"
    lattice_op = "∨" if report.operation == "join" else "∧"
    text = "\n".join([
        f"scala {report.scale}, U = {{x}}, A(x) = {report.a_value}, B(x) = {report.b_value}, α = {report.alpha}",
        f"A^{{>α}} {symbol} B^{{>α}} = {{{', '.join(report.cuts_combined)}}}",
        f"(A{lattice_op}B)(x) = {report.combined_value}, (A{lattice_op}B)^{{>α}} = {{{', '.join(report.cut_of_combined)}}}",
        report.note,
    ])
    return Outcome(report, text)


# ============================================================
# GRUPPI
# ============================================================

def _subgroup_text(report: Any) -> str:
    if report.passed:
        return f"SV-sottogruppo di {report.group}: sì ({report.checked} condizioni)"
    where = f" (parametro {report.param})" if report.param else ""
    return f"SV-sottogruppo di {report.group}: no{where}, condizione {report.condition}, testimone {tuple(report.witness or ())}"


def cmd_group_check(args: argparse.Namespace) -> Outcome:
    G = group_from_document(args.group)
    A = svset_from_document(args.a)
    report = is_sv_subgroup(G, A)
    payload: Dict[str, Any] = {"subgroup": _dump(report)}
    text = _subgroup_text(report)
    passed = report.passed
    if args.derived and report.passed:
        derived = derived_properties_check(G, A)
        payload["derived"] = _dump(derived)
        text += "\n" + render_table(["proprietà", "esito"], [[c.property, "ok" if c.passed else "FAIL"] for c in derived.checks])
        passed = derived.passed
    return Outcome(payload, text, passed)


def cmd_group_levels(args: argparse.Namespace) -> Outcome:
    G = group_from_document(args.group)
    A = svset_from_document(args.a)
    if args.alpha is not None:
        alpha = _parse_element(A.scale, args.alpha)
        H = level_subgroup(G, A, alpha)
        ok = is_crisp_subgroup(G, H)
        level = [x for x in G.elements if x in H]
        return Outcome({"alpha": A.scale.dump(alpha), "level": level, "is_subgroup": ok},
                       f"A_{A.scale.label(alpha)} = {_subset_text(G.universe, H)}: {'sottogruppo' if ok else 'NON sottogruppo'}")
    report = level_equivalence_check(G, A)
    rows = [[orjson.dumps(lv.alpha).decode(), "{" + ", ".join(lv.level) + "}", "sì" if lv.is_subgroup else "no"] for lv in report.levels]
    return Outcome(report, render_table(["α", "A_α", "sottogruppo"], rows))


def cmd_group_equivalence(args: argparse.Namespace) -> Outcome:
    G = group_from_document(args.group)
    report = level_equivalence_check(G, svset_from_document(args.a))
    text = (f"SV-sottogruppo: {report.sv_subgroup}; livelli tutti sottogruppi: {report.levels_all_subgroups} "
            f"[{report.test_set}, {len(report.levels)} livelli] → {'concordano' if report.agree else 'DISCREPANZA'}")
    return Outcome(report, text, report.agree)


def cmd_group_meet(args: argparse.Namespace) -> Outcome:
    G = group_from_document(args.group)
    R = meet_subgroups(G, [svset_from_document(a) for a in args.a])
    return Outcome(R.to_document(), _svset_text(R))


def cmd_group_pullback(args: argparse.Namespace) -> Outcome:
    R = pullback_subgroup(group_hom_from_document(args.hom), svset_from_document(args.a))
    return Outcome(R.to_document(), _svset_text(R))


def cmd_group_subgroups(args: argparse.Namespace) -> Outcome:
    G = group_from_document(args.group)
    subs = [[x for x in G.elements if x in H] for H in enumerate_subgroups(G)]
    return Outcome({"group": G.name, "subgroups": subs},
                   f"{len(subs)} sottogruppi di {G.name}\n" + "\n".join("{" + ", ".join(H) + "}" for H in subs))


# ============================================================
# DECISIONE
# ============================================================

def _table(args: argparse.Namespace):
    return load_decision_table(args.table, args.k)


def cmd_decide_rank(args: argparse.Namespace) -> Outcome:
    T = _table(args)
    B = aggregate_min(T)
    result = rank(T, args.lam)
    rows = []
    for pos, group in enumerate(result.order, start=1):
        for a in group:
            rows.append([pos, a, B[a].label(), result.scores[a]])
    text = f"λ = {result.lam}\n" + render_table(["pos", "alternativa", "B", "r_λ"], rows) + f"\n{result.chain()}"
    aggregated = {a: {"mu": format_rational(g.mu), "m": g.m} for a, g in B.items()}
    return Outcome({"aggregate": aggregated, "ranking": _dump(result), "k": T.k}, text)


def cmd_decide_sweep(args: argparse.Namespace) -> Outcome:
    report = lambda_sweep(_table(args))
    rows = [[f"({iv.lower}, {iv.upper})", "≻".join("=".join(g) for g in iv.order)] for iv in report.intervals]
    rows += [[f"λ = {t.lam}", "≻".join("=".join(g) for g in t.order)] for t in report.ties]
    return Outcome(report, render_table(["λ", "classifica"], rows))


def cmd_decide_breakeven(args: argparse.Namespace) -> Outcome:
    T = _table(args)
    B = aggregate_min(T)
    pair = [p.strip() for p in args.pair.split(",")]
    if len(pair) != 2:
        raise SVError("usage", "--pair vuole due alternative separate da virgola, es. S3,S4")
    for a in pair:
        if a not in B:
            raise SVError("usage", f"--pair: alternativa sconosciuta {a!r}")
    report = break_even(B[pair[0]], B[pair[1]], (pair[0], pair[1]))
    if report.relation == "crossing":
        text = f"{pair[0]} vs {pair[1]}: λ* = {report.lambda_star}; λ < λ*: vince {report.below}, λ > λ*: vince {report.above}"
    elif report.relation == "dominance":
        text = f"{pair[0]} vs {pair[1]}: dominanza, vince {report.winner} per ogni λ"
    else:
        text = f"{pair[0]} vs {pair[1]}: sempre in pareggio"
    return Outcome(report, text)


def cmd_decide_projections(args: argparse.Namespace) -> Outcome:
    report = projection_rankings(_table(args))
    rows = [["grado", g.value, ", ".join(g.alternatives)] for g in report.grade_only]
    rows += [["evidenze", g.value, ", ".join(g.alternatives)] for g in report.evidence_only]
    return Outcome(report, render_table(["proiezione", "valore", "alternative"], rows))


# ============================================================
# PARSER
# ============================================================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="report JSON deterministico su stdout")
    common.add_argument("--seed", type=int, default=None, help="seme per i controlli casuali")

    parser = argparse.ArgumentParser(prog="svset", description="Insiemi a valori in scala: scale, SV-set, topologie, gruppi, decisione.")
    parser.add_argument("--version", action="version", version=f"svset {APP_VERSION}")
    groups = parser.add_subparsers(dest="area", required=True)

    def verb(area: argparse._SubParsersAction, name: str, handler: Callable[[argparse.Namespace], Outcome], help_: str) -> argparse.ArgumentParser:
        p = area.add_parser(name, parents=[common], help=help_)
        p.set_defaults(handler=handler)
        return p

    # scale
    area = groups.add_parser("scale", help="scale e omomorfismi").add_subparsers(dest="verb", required=True)
    for name, handler, src in (("check", cmd_scale_check, "--scale"), ("hom", cmd_scale_hom, "--hom")):
        p = verb(area, name, handler, "verifica delle leggi")
        p.add_argument(src, required=True, help="descrittore JSON inline o percorso")
        mode = p.add_mutually_exclusive_group()
        mode.add_argument("--exhaustive", action="store_true", help="tutte le tuple (solo carrier finiti, default)")
        mode.add_argument("--random", type=int, nargs="?", const=RANDOM_SAMPLES, default=None, metavar="N",
                          help=f"N tuple casuali (default {RANDOM_SAMPLES}); richiede --seed")

    # set
    area = groups.add_parser("set", help="SV-set").add_subparsers(dest="verb", required=True)
    p = verb(area, "op", cmd_set_op, "unione, intersezione, complemento, inclusione")
    p.add_argument("--op", required=True, choices=["union", "intersection", "complement", "subset"])
    p.add_argument("--a", required=True)
    p.add_argument("--b")
    p = verb(area, "encode", cmd_set_encode, "modello classico → SV-set")
    p.add_argument("--model", required=True, choices=ENCODABLE_MODELS)
    p.add_argument("--input", required=True)
    p = verb(area, "decode", cmd_set_decode, "SV-set → modello classico")
    p.add_argument("--model", required=True, choices=ENCODABLE_MODELS)
    p.add_argument("--a", required=True)
    p = verb(area, "cut", cmd_set_cut, "taglio forte (default) o debole")
    p.add_argument("--a", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--weak", action="store_true")
    p = verb(area, "slice", cmd_set_slice, "slice A_e")
    p.add_argument("--a", required=True)
    p.add_argument("--param", required=True)
    p = verb(area, "transport", cmd_set_transport, "h_*A lungo un omomorfismo di scala")
    p.add_argument("--hom", required=True)
    p.add_argument("--a", required=True)
    for name, handler in (("pullback", cmd_set_pullback), ("pushforward", cmd_set_pushforward)):
        p = verb(area, name, handler, f"{name} lungo f (documento {{\"f\": ..., \"g\": ..., \"target\": ...}})")
        p.add_argument("--map", required=True)
        p.add_argument("--a", required=True)

    # topo
    area = groups.add_parser("topo", help="SV-topologie").add_subparsers(dest="verb", required=True)
    p = verb(area, "validate", cmd_topo_validate, "verifica degli assiomi")
    p.add_argument("--file", required=True)
    p = verb(area, "generate", cmd_topo_generate, "chiusura da generatori")
    p.add_argument("--file", required=True)
    p.add_argument("--cap", type=int, default=CLOSURE_CAP)
    p = verb(area, "cut", cmd_topo_cut, "topologia dei tagli forti (solo catene)")
    p.add_argument("--file", required=True)
    p.add_argument("--alpha", required=True)
    p = verb(area, "slice", cmd_topo_slice, "slice di una famiglia parametrizzata")
    p.add_argument("--file", required=True)
    p.add_argument("--param", required=True)
    p = verb(area, "continuity", cmd_topo_continuity, "SV-continuità di f: U → V")
    p.add_argument("--map", required=True)
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--cuts", action="store_true", help="verifica anche la continuità tra i tagli a ogni α < 1")
    p = verb(area, "counterexample", cmd_topo_counterexample, "i tagli su M3 non preservano ∩")
    p.add_argument("--join", action="store_true", help="controesempio per ∪ (α = p) invece che per ∩")

    # group
    area = groups.add_parser("group", help="SV-sottogruppi").add_subparsers(dest="verb", required=True)
    p = verb(area, "check", cmd_group_check, "A(e) = 1 e A(xy⁻¹) ≥ A(x) ∧ A(y)")
    p.add_argument("--group", required=True, help="Zn, S3, D4 o documento JSON")
    p.add_argument("--a", required=True)
    p.add_argument("--derived", action="store_true", help="verifica anche le proprietà derivate")
    p = verb(area, "levels", cmd_group_levels, "livelli A_α")
    p.add_argument("--group", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--alpha")
    p = verb(area, "equivalence", cmd_group_equivalence, "SV-sottogruppo ⟺ livelli sottogruppi")
    p.add_argument("--group", required=True)
    p.add_argument("--a", required=True)
    p = verb(area, "meet", cmd_group_meet, "meet puntuale di SV-sottogruppi")
    p.add_argument("--group", required=True)
    p.add_argument("--a", required=True, action="append")
    p = verb(area, "pullback", cmd_group_pullback, "φ*A lungo un omomorfismo di gruppi")
    p.add_argument("--hom", required=True)
    p.add_argument("--a", required=True)
    p = verb(area, "subgroups", cmd_group_subgroups, "tutti i sottogruppi (forza bruta)")
    p.add_argument("--group", required=True)

    # decide
    area = groups.add_parser("decide", help="decisione su [0,1] × {0..k}").add_subparsers(dest="verb", required=True)
    for name, handler, help_ in (
        ("rank", cmd_decide_rank, "classifica con r_λ"),
        ("sweep", cmd_decide_sweep, "classifiche su tutti gli intervalli di λ"),
        ("breakeven", cmd_decide_breakeven, "λ* tra due alternative"),
        ("projections", cmd_decide_projections, "classifiche sulle sole proiezioni"),
    ):
        p = verb(area, name, handler, help_)
        p.add_argument("--table", required=True, help="CSV (celle \"mu;m\") o JSON")
        p.add_argument("--k", type=int, default=None, help="limite delle evidenze (obbligatorio per CSV)")
        if name == "rank":
            p.add_argument("--lambda", dest="lam", required=True, help="razionale in (0,1), es. 7/10 o 0.7")
        if name == "breakeven":
            p.add_argument("--pair", required=True)
    return parser


# ============================================================
# ENTRY POINT
# ============================================================

def _refuse(args: argparse.Namespace, command: str, e: SVError) -> int:
    code = EXIT_FAILED if e.code in REFUSAL_CODES else EXIT_ERROR
    log("CLI", f"{command}: {e.code}", "WARN" if code == EXIT_FAILED else "ERROR")
    print(f"errore [{e.code}]: {e.detail}", file=sys.stderr, flush=True)
    if args.json:
        _emit_json(command, {"passed": False, "error": e.code, "detail": e.detail})
    return code


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as e:
        return EXIT_ERROR if e.code not in (0, None) else EXIT_OK

    command = f"{args.area} {args.verb}"
    try:
        outcome = args.handler(args)
    except SVError as e:
        return _refuse(args, command, e)
    except (ValueError, TypeError, KeyError, AttributeError) as e:
        # mai un traceback: un documento che passa la validazione ma non la conversione resta un errore di documento
        log("CLI", f"{command}: {type(e).__name__}: {e}", "DEBUG")
        return _refuse(args, command, SVError("malformed-document", str(e)))

    if args.json:
        _emit_json(command, {"passed": outcome.passed, "result": _dump(outcome.payload)})
    else:
        print(outcome.text)
    return EXIT_OK if outcome.passed else EXIT_FAILED


def main() -> int:
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())

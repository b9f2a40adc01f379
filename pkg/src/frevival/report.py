"""JSON documents for tables, spectra, witnesses and full analyses.

All floats pass through :func:`num` (12 significant digits) and every list is
built in a fixed order, so identical inputs give byte-identical output.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from typing import Any

from . import SCHEMA, __version__
from .characters import CharacterTable, character_table, verify_table
from .groups import GroupSpec, GroupTable, build_group, center_elements, central_involutions, conjugacy_classes, exponent
from .oracle import (
    ACCEPT_TOL,
    check_revival_shape,
    transition_matrix_character,
    transition_matrix_numeric,
    verify_witness,
)
from .revival import PreconditionError, RevivalWitness, decide, divisor_certificate
from .spectrum import (
    CayleyGraph,
    CharacterSpectrum,
    ConnectionSet,
    is_connected,
    numeric_spectrum_crosscheck,
    spectrum_by_character,
    validate_connection_set,
)


class InputError(ValueError):
    """Anything wrong with a user-supplied document (exit code 2)."""


def num(x: float) -> float:
    if not math.isfinite(x):
        return x
    r = float(f"{x:.12g}")
    return 0.0 if r == 0 else r


SNAP = 1e-13


def cnum(z: complex) -> list[float]:
    """Complex value as [re, im]; rounding residue below SNAP is written as 0."""
    return [num(x) if abs(x) >= SNAP else 0.0 for x in (z.real, z.imag)]


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, allow_nan=True) + "\n"


# --------------------------------------------------------------------------
# parsing


def parse_group(doc: Any) -> GroupTable:
    try:
        return build_group(GroupSpec.from_json(doc))
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"group: {exc}") from exc


def parse_connection_set(G: GroupTable, doc: Any) -> ConnectionSet:
    """{"classes": [...representatives]} or {"elements": [...]}."""
    if isinstance(doc, list):
        doc = {"elements": doc}
    if not isinstance(doc, dict) or not ({"classes", "elements"} & doc.keys()):
        raise InputError("connection_set must have a 'classes' or an 'elements' list")
    classes = conjugacy_classes(G)
    try:
        if "classes" in doc:
            return validate_connection_set(G, classes, doc["classes"], representatives=True)
        return validate_connection_set(G, classes, doc["elements"])
    except ValueError as exc:
        reason = getattr(exc, "reason", "invalid element")
        raise InputError(f"connection_set ({reason}): {exc}") from exc


def load_problem(doc: Any, connection: Any = None) -> tuple[dict, GroupTable, ConnectionSet]:
    """A problem document holds 'group' and 'connection_set'; a bare group spec
    needs the connection set passed separately."""
    if not isinstance(doc, dict):
        raise InputError("input must be a JSON object")
    if "group" in doc:
        group_doc = doc["group"]
        conn_doc = connection if connection is not None else doc.get("connection_set")
    else:
        group_doc, conn_doc = doc, connection
    if conn_doc is None:
        raise InputError("no connection set given")
    G = parse_group(group_doc)
    S = parse_connection_set(G, conn_doc)
    return {"group": group_doc, "connection_set": conn_doc}, G, S


# --------------------------------------------------------------------------
# serialisation


def value_json(v) -> dict:
    return {"coeffs": list(v.coeffs), "m": v.m, "numeric": cnum(v.numeric())}


def table_json(t: CharacterTable) -> dict:
    G = t.group
    report = verify_table(t)
    return {
        "schema": SCHEMA,
        "order": G.order,
        "method": t.method,
        "m": t.m,
        "classes": [
            {"index": i, "representative": G.labels[c[0]], "size": len(c), "elements": [G.labels[x] for x in c]}
            for i, c in enumerate(t.classes.classes)
        ],
        "rows": [
            {
                "label": r.label,
                "degree": r.degree,
                "values": [dict(class_=i, **value_json(v)) for i, v in enumerate(r.values)],
            }
            for r in t.rows
        ],
        "verification": {
            "passed": report.passed,
            "first_orthogonality_max_dev": num(report.first_orthogonality_dev),
            "second_orthogonality_max_dev": num(report.second_orthogonality_dev),
            "sum_of_squares": report.sum_of_squares,
            "identity_column_ok": report.identity_column_ok,
            "failures": report.failures,
        },
    }


def _fix_class_key(doc):
    # "class" is a keyword, so values are built with class_ and renamed here
    if isinstance(doc, dict):
        return {("class" if k == "class_" else k): _fix_class_key(v) for k, v in doc.items()}
    if isinstance(doc, list):
        return [_fix_class_key(v) for v in doc]
    return doc


def spectrum_json(G: GroupTable, S: ConnectionSet, t: CharacterTable, spec: CharacterSpectrum, graph: CayleyGraph | None = None) -> dict:
    connected = is_connected(G, S)
    doc = {
        "schema": SCHEMA,
        "graph": {"order": G.order, "degree": len(S), "connected": connected, "quasi_abelian": True},
        "spectrum": [
            {
                "character": r.label,
                "degree": e.degree,
                "lambda_exact": e.exact,
                "lambda_numeric": num(e.numeric),
                "multiplicity": e.multiplicity,
            }
            for r, e in zip(t.rows, spec.entries)
        ],
        "integral": spec.integral,
    }
    if graph is not None:
        check = numeric_spectrum_crosscheck(graph, spec)
        doc["numeric_crosscheck"] = {"passed": check.passed, "max_deviation": num(check.max_deviation), "sweeps": check.sweeps}
    return doc


def witness_json(w: RevivalWitness, G: GroupTable, graph=None, table=None, spec=None, tol: float = ACCEPT_TOL) -> dict:
    doc = {
        "involution": G.labels[w.involution],
        "u": G.labels[w.u],
        "v": G.labels[w.v],
        "M": w.M,
        "k": w.k,
        "t": num(w.t),
        "t_over_pi": [2 * w.k, w.M],
        "alpha": cnum(w.alpha),
        "beta": cnum(w.beta),
        "two_alpha_exact": {"m": w.two_alpha.m, "coeffs": list(w.two_alpha.coeffs)},
        "two_beta_exact": {"m": w.two_beta.m, "coeffs": list(w.two_beta.coeffs)},
        "kind": w.kind,
        "minimal": w.minimal,
    }
    if w.special_case:
        doc["special_case"] = w.special_case
    certs = {}
    if G.order >= 3:
        c = divisor_certificate(w, G)
        certs["divisor"] = {
            "passed": c.passed,
            "M_at_least_two": c.M_at_least_two,
            "M_divides_order": c.M_divides_order,
            "root_of_unity": c.root_of_unity,
        }
    if graph is not None:
        certs["oracle"] = verdict_json(verify_witness(w, graph, table, spec, tol))
    doc["certificates"] = certs
    return doc


def verdict_json(v) -> dict:
    return {
        "passed": v.passed,
        "cross_deviation": num(v.cross_deviation),
        "alpha_deviation": num(v.alpha_deviation),
        "beta_deviation": num(v.beta_deviation),
        "shape_found": v.shape_found,
        "pairing_ok": v.pairing_ok,
        "failures": v.failures,
    }


def group_summary(G: GroupTable) -> dict:
    classes = conjugacy_classes(G)
    return {
        "order": G.order,
        "abelian": G.is_abelian,
        "exponent": exponent(G),
        "classes": len(classes),
        "center_size": len(center_elements(G)),
        "central_involutions": [G.labels[a] for a in central_involutions(G)],
        "identity": G.labels[G.identity],
    }


# --------------------------------------------------------------------------
# pipelines


def analyze(doc: Any, connection: Any = None, times=(), tol: float = ACCEPT_TOL, timings: bool = False) -> tuple[dict, int]:
    clock = {}
    t0 = time.perf_counter()
    inputs, G, S = load_problem(doc, connection)
    clock["parse"] = time.perf_counter() - t0
    t1 = time.perf_counter()
    table = character_table(G)
    clock["character_table"] = time.perf_counter() - t1
    t1 = time.perf_counter()
    spec = spectrum_by_character(S, table)
    graph = CayleyGraph.build(G, S)
    classes = conjugacy_classes(G)
    report = {
        "schema": SCHEMA,
        "version": __version__,
        "input": inputs,
        "group": group_summary(G),
        "connection_set": {
            "size": len(S),
            "elements": [G.labels[x] for x in S.elements],
            "classes_united": [G.labels[classes.representatives[c]] for c in S.class_ids],
            "quasi_abelian": True,
            "inverse_closed": True,
            "connected": is_connected(G, S),
        },
    }
    report.update({k: v for k, v in spectrum_json(G, S, table, spec, graph).items() if k != "schema"})
    clock["spectrum"] = time.perf_counter() - t1
    t1 = time.perf_counter()
    if not report["connection_set"]["connected"]:
        witnesses, reason = [], "graph not connected"
    else:
        decision = decide(G, S, table, spec)
        witnesses, reason = decision.witnesses, decision.reason
    report["witnesses"] = [witness_json(w, G, graph, table, spec, tol) for w in witnesses]
    report["reason"] = reason
    minimal = next((w for w in report["witnesses"] if w["minimal"]), None)
    report["minimal_witness"] = minimal
    report["oracle_passed"] = all(w["certificates"]["oracle"]["passed"] for w in report["witnesses"])
    clock["decide_verify"] = time.perf_counter() - t1
    if times:
        report["explorations"] = [explore_time(t, G, graph, table, spec, tol) for t in times]
    if timings:
        report["timings"] = {k: num(v) for k, v in clock.items()}
    return report, (0 if witnesses else 1)


def explore_time(t: float, G, graph, table, spec, tol: float = ACCEPT_TOL) -> dict:
    Hc = transition_matrix_character(t, table, spec, G)
    Hn = transition_matrix_numeric(t, graph)
    shape = check_revival_shape(Hc, tol)
    out = {
        "t": num(t),
        "cross_deviation": num(float(abs(Hc.entries - Hn.entries).max())),
        "unitarity_error": num(Hc.unitarity_error()),
        "revival_shape": None,
    }
    if shape is not None:
        out["revival_shape"] = {
            "alpha": cnum(shape.alpha),
            "beta": cnum(shape.beta),
            "partner_of_identity": G.labels[shape.pairing[G.identity]],
        }
    return out


@dataclass(frozen=True)
class StoredWitness:
    """A witness read back from JSON: just the claims the oracle checks."""

    involution: int
    t: float
    alpha: complex
    beta: complex


def verify_document(doc: Any, tol: float = ACCEPT_TOL) -> tuple[dict, int]:
    """Re-check witnesses stored in an analysis report (or a hand-written file)."""
    if not isinstance(doc, dict):
        raise InputError("verify input must be a JSON object")
    source = doc.get("input", doc)
    _, G, S = load_problem(source)
    raw = doc.get("witnesses")
    if raw is None and "witness" in doc:
        raw = [doc["witness"]]
    if not raw:
        raise InputError("no witnesses to verify")
    table = character_table(G)
    spec = spectrum_by_character(S, table)
    graph = CayleyGraph.build(G, S)
    results = []
    for w in raw:
        try:
            stored = StoredWitness(
                G.element(w["involution"]),
                float(w["t"]),
                complex(*w["alpha"]),
                complex(*w["beta"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed witness: {exc}") from exc
        verdict = verify_witness(stored, graph, table, spec, tol)
        results.append({"involution": G.labels[stored.involution], "t": num(stored.t), **verdict_json(verdict)})
    passed = all(r["passed"] for r in results)
    return {"schema": SCHEMA, "passed": passed, "tolerance": tol, "results": results}, (0 if passed else 1)


def chartable_document(doc: Any, method: str = "auto") -> dict:
    G = parse_group(doc.get("group", doc) if isinstance(doc, dict) else doc)
    return _fix_class_key(table_json(character_table(G, method)))


def spectrum_document(doc: Any, connection: Any = None) -> dict:
    _, G, S = load_problem(doc, connection)
    table = character_table(G)
    spec = spectrum_by_character(S, table)
    return spectrum_json(G, S, table, spec, CayleyGraph.build(G, S))


def scan_document(results, params: dict) -> dict:
    groups = []
    totals = {"graphs": 0, "fr": 0, "pst": 0, "none": 0}
    violations = []
    for r in results:
        c = r.counts
        for k in totals:
            totals[k] += c[k]
        v = r.all_violations()
        violations.extend(f"{r.name}: {x}" for x in v)
        groups.append(
            {
                "name": r.name,
                "family": r.family,
                "order": r.order,
                "classes": r.classes,
                "central_involutions": r.central_involutions,
                "exhaustive": r.exhaustive,
                "class_unions_considered": r.considered,
                "counts": c,
                "integral_graphs": sum(1 for g in r.graphs if g.integral),
                "witness_graphs_all_integral": all(g.integral for g in r.graphs if g.witnesses),
                "max_spectrum_deviation": num(max((g.spectrum_deviation for g in r.graphs), default=0.0)),
                "witnesses": [
                    {"set": g.mask, "size": g.size, "found": [list(w) for w in g.witnesses]}
                    for g in r.graphs if g.witnesses
                ],
                "violations": v,
            }
        )
    return {
        "schema": SCHEMA,
        "parameters": params,
        "totals": totals,
        "violations": violations,
        "passed": not violations,
        "groups": groups,
    }


__all__ = [
    "InputError",
    "PreconditionError",
    "analyze",
    "chartable_document",
    "dumps",
    "scan_document",
    "spectrum_document",
    "verify_document",
]

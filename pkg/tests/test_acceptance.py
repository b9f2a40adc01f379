"""Acceptance criteria, one test per criterion, each recording a pass/fail line."""

import cmath
import math
import time
from collections import Counter

import numpy as np

from frevival.catalog import enumerate_connection_sets, involution_character_violations
from frevival.characters import (
    abelian_character_table,
    character_table,
    dihedral_character_table,
    generic_character_table,
)
from frevival.cyclotomic import CyclotomicValue
from frevival.groups import conjugacy_classes, cyclic, dihedral, symmetric
from frevival.oracle import transition_matrix_character
from frevival.report import analyze
from frevival.revival import decide
from frevival.spectrum import spectrum_by_character

from conftest import Z6XD3, Z6XD3_S, Problem, sample
from test_characters import D3_TABLE, Z6_EXPONENTS, match_columns

SCAN_BUDGET = 300.0


def _violations(results, needle):
    return [v for r in results for v in r.all_violations() if needle in v]


def test_criterion_1_worked_example(criterion):
    start = time.perf_counter()
    report, code = analyze({"group": Z6XD3, "connection_set": {"elements": Z6XD3_S}})
    elapsed = time.perf_counter() - start
    minimal = [w for w in report["witnesses"] if w["minimal"]]
    w = minimal[0] if minimal else {}
    oracle = w.get("certificates", {}).get("oracle", {})
    checks = {
        "exit": code == 0,
        "one minimal": len(minimal) == 1,
        "a": w.get("involution") == "(3,e)",
        "M": w.get("M") == 3,
        "t": abs(w.get("t", 0) - 2 * math.pi / 3) < 1e-9,
        "alpha": abs(complex(*w.get("alpha", [9, 9])) - (-0.5)) <= 1e-9,
        "beta": abs(complex(*w.get("beta", [9, 9])) - 1j * math.sin(2 * math.pi / 3)) <= 1e-9,
        "oracle": bool(oracle.get("passed")),
        "deviation": max(oracle.get("cross_deviation", 1), oracle.get("alpha_deviation", 1), oracle.get("beta_deviation", 1)) < 1e-8,
        "runtime": elapsed < 2.0,
    }
    failed = [k for k, ok in checks.items() if not ok]
    assert criterion(1, "worked example", not failed, f"{elapsed:.2f}s" + (f", failed {failed}" if failed else ""))


def test_criterion_2_table_fidelity(criterion):
    z6 = abelian_character_table(cyclic(6))
    d3 = dihedral_character_table(dihedral(3))
    want_z6 = Counter(tuple(CyclotomicValue.root(6, e).canonical() for e in row) for row in Z6_EXPONENTS)
    got_z6 = Counter(tuple(v.canonical() for v in r.values) for r in z6.rows)
    want_d3 = Counter(tuple(CyclotomicValue.integer(x).canonical() for x in row) for row in D3_TABLE)
    got_d3 = Counter(tuple(v.canonical() for v in r.values) for r in d3.rows)
    d3_labels = [sorted(d3.group.labels[x] for x in c) for c in d3.classes.classes]

    s3 = generic_character_table(symmetric(3))
    perm = match_columns(s3, d3)
    order = np.argsort(perm)
    got_s3 = Counter(tuple(r.values[i].canonical() for i in order) for r in s3.rows)
    ok = got_z6 == want_z6 and got_d3 == want_d3 and got_s3 == want_d3
    ok = ok and d3_labels == [["e"], ["a", "a^2"], ["b", "ba", "ba^2"]]
    assert criterion(2, "character tables of Z6, D3 and generic S3", ok)


def test_criterion_3_symmetric_exclusion(criterion, catalog_scan):
    results, _ = catalog_scan
    by_name = {r.name: r for r in results}
    s3, s4 = by_name["S3"], by_name["S4"]
    # direct enumeration as well, independent of the scan bookkeeping
    direct = {}
    for G in (symmetric(3), symmetric(4)):
        table = character_table(G)
        sets, considered, _ = enumerate_connection_sets(G, conjugacy_classes(G), None)
        found = 0
        for _, S in sets:
            found += len(decide(G, S, table, spectrum_by_character(S, table)).witnesses)
        direct[G.order] = (considered, found)
    k2 = Problem(sample("k2.json"))
    d = decide(k2.G, k2.S, k2.table, k2.spec)
    family_ok = d.reason == "K2 special case" and len(d.witnesses) == 1
    for t in np.linspace(0.1, 3.0, 7):
        H = transition_matrix_character(t, k2.table, k2.spec).entries
        family_ok &= abs(H[0, 0] - math.cos(t)) < 1e-12 and abs(H[0, 1] - 1j * math.sin(t)) < 1e-12
    ok = (
        s3.considered == 3 and s4.considered == 15
        and s3.counts["none"] == s3.counts["graphs"] and s4.counts["none"] == s4.counts["graphs"]
        and direct == {6: (3, 0), 24: (15, 0)}
        and family_ok
    )
    assert criterion(3, "S3 and S4 admit no revival, K2 does", ok,
                     f"S3 {s3.considered} sets, S4 {s4.considered} sets")


def test_criterion_4_soundness(criterion, catalog_scan, catalog):
    results, elapsed = catalog_scan
    families = Counter(r.family for r in results)
    sampled = [r for r in results if not r.exhaustive]
    witnesses = sum(len(g.witnesses) for r in results for g in r.graphs)
    bad = _violations(results, "fails oracle")
    ok = (
        families == Counter({"abelian": 24, "dihedral": 4, "quaternion": 1, "symmetric": 2})
        and all(r.counts["graphs"] >= 50 for r in sampled)
        and witnesses > 0 and not bad and elapsed < SCAN_BUDGET
    )
    assert criterion(4, "every emitted witness passes the oracle", ok,
                     f"{witnesses} witnesses over {sum(r.counts['graphs'] for r in results)} graphs, "
                     f"{len(sampled)} sampled groups, scan {elapsed:.1f}s")


def test_criterion_5_completeness(criterion, catalog_scan):
    results, _ = catalog_scan
    missed = _violations(results, "missed revival") + _violations(results, "lattice time")
    assert criterion(5, "no revival missed at candidate times", not missed, f"{len(missed)} misses")


def test_criterion_6_necessity(criterion, catalog_scan):
    results, _ = catalog_scan
    problems = []
    for r in results:
        for g in r.graphs:
            if g.witnesses and not g.integral:
                problems.append(f"{r.name} S#{g.mask} non-integral")
            for _, M, k, _ in g.witnesses:
                if r.order == 2:
                    continue
                t = 2 * math.pi * k / M
                if M < 2 or r.order % M or abs(cmath.exp(1j * t) ** r.order - 1) >= 1e-9:
                    problems.append(f"{r.name} S#{g.mask} M={M}")
    problems += _violations(results, "non-integral") + _violations(results, "divisor")
    assert criterion(6, "integrality, M >= 2, M divides |G|", not problems, f"{len(problems)} problems")


def test_criterion_7_involution_characters(criterion, catalog_groups):
    problems = []
    for entry, G in catalog_groups:
        table = character_table(G)
        problems += [f"{entry.name}: {v}" for v in involution_character_violations(G, table)]
    assert criterion(7, "central involution test and degree split", not problems, f"{len(catalog_groups)} groups")


def test_criterion_8_spectrum(criterion, catalog_scan):
    results, _ = catalog_scan
    worst = max(g.spectrum_deviation for r in results for g in r.graphs)
    bad = _violations(results, "spectrum cross-check") + _violations(results, "trivial character")
    assert criterion(8, "character and Jacobi spectra agree", not bad and worst < 1e-7, f"max deviation {worst:.1e}")


def test_criterion_9_abelian_fast_path(criterion, catalog_scan):
    results, _ = catalog_scan
    abelian_graphs = sum(r.counts["graphs"] for r in results if r.family == "abelian")
    bad = _violations(results, "fast path")
    assert criterion(9, "abelian fast path matches the engine", not bad and abelian_graphs > 0,
                     f"{abelian_graphs} abelian graphs")

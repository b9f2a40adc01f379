#!/usr/bin/env python3
"""Walk through the Z6 x D3 example: classes, spectrum, gcd invariant and witnesses."""

import argparse
import json
import time

from frevival.characters import character_table, verify_table
from frevival.groups import conjugacy_classes
from frevival.oracle import transition_matrix_character, verify_witness
from frevival.report import load_problem
from frevival.revival import decide, divisor_certificate, split_characters
from frevival.spectrum import CayleyGraph, numeric_spectrum_crosscheck, spectrum_by_character


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("problem", nargs="?", default="samples/z6xd3.json")
    args = ap.parse_args()

    start = time.perf_counter()
    with open(args.problem) as fh:
        _, G, S = load_problem(json.load(fh))
    classes = conjugacy_classes(G)
    table = character_table(G)
    spec = spectrum_by_character(S, table)
    graph = CayleyGraph.build(G, S)

    print(f"|G| = {G.order}, {len(classes)} classes, |S| = {len(S)}")
    print("S =", " ".join(G.labels[x] for x in S.elements))
    print(f"table method {table.method}, orthogonality ok: {verify_table(table).passed}")
    check = numeric_spectrum_crosscheck(graph, spec)
    print(f"Jacobi agrees with the character spectrum to {check.max_deviation:.1e} ({check.sweeps} sweeps)")
    print()
    print(f"{'char':>16} {'deg':>4} {'lambda':>7}")
    for row, e in zip(table.rows, spec.entries):
        print(f"{row.label:>16} {e.degree:>4} {e.exact:>7}")

    decision = decide(G, S, table, spec)
    print()
    for a, M in decision.Ms.items():
        split = split_characters(table, a)
        print(f"a = {G.labels[a]}: {len(split.ghat0)} + {len(split.ghat1)} characters, M = {M}")
    for w in decision.witnesses:
        verdict = verify_witness(w, graph, table, spec)
        cert = divisor_certificate(w, G)
        flag = " (minimal)" if w.minimal else ""
        print(
            f"t = 2pi*{w.k}/{w.M}{flag}: alpha = {w.alpha:.6f}, beta = {w.beta:.6f}, "
            f"oracle {'ok' if verdict.passed else 'FAIL'} ({verdict.cross_deviation:.1e}), "
            f"divisor {'ok' if cert.passed else 'FAIL'}"
        )
    if decision.witnesses:
        w = next(w for w in decision.witnesses if w.minimal)
        H = transition_matrix_character(w.t, table, spec, G).entries
        row = H[G.identity]
        big = [(G.labels[j], complex(row[j])) for j in range(G.order) if abs(row[j]) > 1e-9]
        print("H(t) e_1 support:", ", ".join(f"{lab}: {z:.4f}" for lab, z in big))
    print(f"\nelapsed {time.perf_counter() - start:.2f} s")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Print |H(t)_{1,g}| along a grid of times to show where the walk concentrates."""

import argparse
import json
import math

import numpy as np

from frevival.characters import character_table
from frevival.oracle import transition_matrix_character
from frevival.report import load_problem
from frevival.spectrum import spectrum_by_character


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("problem")
    ap.add_argument("--steps", type=int, default=24, help="grid points on [0, 2pi]")
    args = ap.parse_args()

    with open(args.problem) as fh:
        _, G, S = load_problem(json.load(fh))
    table = character_table(G)
    spec = spectrum_by_character(S, table)
    for i in range(args.steps + 1):
        t = 2 * math.pi * i / args.steps
        row = np.abs(transition_matrix_character(t, table, spec, G).entries[G.identity])
        top = np.argsort(-row, kind="stable")[:2]
        mass = row[top] ** 2
        print(f"t/pi = {t / math.pi:6.3f}  " + "  ".join(f"{G.labels[j]}:{m:.3f}" for j, m in zip(top, mass)))


if __name__ == "__main__":
    main()

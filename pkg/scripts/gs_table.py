#!/usr/bin/env python3
"""Print the nearest-neighbour ground-state concurrence across the phase
diagram, together with the monogamy budget at lambda = 1.

Usage: python scripts/gs_table.py
"""

from xychain.groundstate import gs_concurrence, gs_tangle_budget
from xychain.model import ModelParams

POINTS = [
    (0.1, 0.5), (0.1, 1.0),
    (0.5, 0.5), (0.5, 1.0),
    (1.0, 0.5), (1.0, 0.9), (1.0, 1.0),
]


def main():
    print(f"{'gamma':>6} {'lambda':>7} {'C(1)':>9} branch")
    for gamma, lam in POINTS:
        value, branch = gs_concurrence(ModelParams(lam, gamma=gamma), 1)
        print(f"{gamma:6.2f} {lam:7.2f} {value:9.4f} {branch}")

    print()
    print(f"{'gamma':>6} {'tau_1':>9} {'sum C^2':>9} {'residual':>9}")
    for gamma in (0.1, 0.5, 1.0):
        tau1, total = gs_tangle_budget(ModelParams(1.0, gamma=gamma))
        print(f"{gamma:6.2f} {tau1:9.4f} {total:9.4f} {tau1 - total:9.4f}")


if __name__ == "__main__":
    main()

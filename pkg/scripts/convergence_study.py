"""Finite-difference error against the closed form under grid refinement, for every study curve.

    python scripts/convergence_study.py --coarse 128 --fine 4096
"""

import argparse

from micromorphic_shell import BoundaryData, ShellGeometry, from_dimensionless
from micromorphic_shell.presets import FIGURES
from micromorphic_shell.verification import observed_order


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--coarse", type=int, default=256)
    ap.add_argument("--fine", type=int, default=2048)
    args = ap.parse_args()

    for fig, preset in FIGURES.items():
        for v, g in preset.cases():
            p = from_dimensionless(g)
            order, errs = observed_order(p, ShellGeometry(g.beta, 1.0), BoundaryData(g.delta, 1.0), args.coarse, args.fine)
            cols = " ".join(f"{e:9.2e}" for e in errs.values())
            print(f"fig {fig} {preset.key:>8} = {v:<6g} order {order:5.2f} | {cols}")
    print("grid sizes:", ", ".join(str(n) for n in errs))


if __name__ == "__main__":
    main()

"""Write the datasets of every built-in study and print the peak deviation per curve.

    python scripts/reproduce_figures.py --out figures --samples 1001
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from micromorphic_shell.cli import main
from micromorphic_shell.datasets import read_csv
from micromorphic_shell.presets import FIGURES


def run(out: Path, samples: int) -> int:
    for fig, preset in FIGURES.items():
        target = out / f"figure_{fig}"
        code = main(["--mode", "figures", "--figure", str(fig), "--samples", str(samples), "-o", str(target)])
        if code:
            return code
        for v in preset.values:
            d = read_csv(target / f"{preset.key}_{v:g}.csv")["delta"]
            k = int(np.argmax(np.abs(d)))
            print(f"  {preset.key} = {v:<6g} max|delta| = {abs(d[k]):.4e} (sign {'+' if d[k] >= 0 else '-'})")
    return 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("figures"))
    ap.add_argument("--samples", type=int, default=1001)
    args = ap.parse_args()
    sys.exit(run(args.out, args.samples))

"""Write the six preset curves as CSV (plus matplotlib scripts) into one directory.

Usage: python3 scripts/reproduce_figures.py [outdir]
"""

import sys
from pathlib import Path

from twospin.cli import PRESETS, main


def reproduce(outdir="figures"):
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name in PRESETS:
        code = main(["--preset", name, "--reproducible", "--set", "emit_plot=true", "--out", str(out / f"{name}.csv")])
        if code:
            return code
        print(f"{name}: {out / (name + '.csv')}")
    return 0


if __name__ == "__main__":
    sys.exit(reproduce(*sys.argv[1:]))

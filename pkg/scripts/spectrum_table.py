"""Write plot-ready spectrum CSVs (eigenvalues, resolvent points, circle distance)."""

import argparse
import sys
from pathlib import Path

from oplab.disc_groups import GroupParams
from oplab.suite import emit_spectrum_csv, read_spectrum_csv

CASES = [((0.0, 1.0), 1 + 0j), ((1.0, 2.0), 0.5 + 3j), ((-1.0, -2.0), -1 + 0.5j)]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=50)
    ap.add_argument("--outdir", type=Path, default=Path("results"))
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    for (c, k), mu in CASES:
        path = args.outdir / f"spectrum_c{c:g}_k{k:g}_mu{mu.real:g}{mu.imag:+g}i.csv"
        emit_spectrum_csv(GroupParams(c, k), mu, args.n, path)
        worst = max(r["circle_dist"] for r in read_spectrum_csv(path))
        print(f"{path}: {args.n + 1} rows, max circle_dist {worst:.2e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

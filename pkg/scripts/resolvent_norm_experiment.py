"""Empirical resolvent norms against the two candidate closed forms 1/|Re mu| and 1/(2|Re mu|).

Also reports the empirical operator-norm ratios of the shift M_z and the
backward shift Q on the little Bloch space over a random corpus.
"""

import argparse
import csv
import sys

import numpy as np

from oplab.analytic import bloch_norm, mz_power, q_power, random_polynomial
from oplab.disc_groups import GroupParams, resolvent_norm_bounds


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=40)
    ap.add_argument("--degree", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    out = csv.writer(sys.stdout)
    out.writerow(["c", "k", "mu_re", "mu_im", "lower", "one_over_re", "half_over_re"])
    for c, k in [(0.0, 1.0), (1.0, 2.0), (-2.0, -2.0)]:
        p = GroupParams(c, k)
        for mu in (1 + 0j, 1 + 0.5j, 0.5 + 3j, -2 + 1j, 3 - 0.25j):
            lower, upper = resolvent_norm_bounds(p, mu, args.samples, seed=args.seed, degree=args.degree)
            out.writerow([c, k, mu.real, mu.imag, f"{lower:.6f}", f"{upper:.6f}", f"{upper / 2:.6f}"])

    rng = np.random.default_rng(args.seed)
    q_ratio = mz_ratio = 0.0
    for _ in range(args.samples * 5):
        f = random_polynomial(rng, int(rng.integers(1, args.degree + 1)))
        q_ratio = max(q_ratio, bloch_norm(q_power(f, 1)).value)
        mz_ratio = max(mz_ratio, bloch_norm(mz_power(f, 1)).value)
    print(f"# sup ||Qf||/||f|| over corpus: {q_ratio:.6f}")
    print(f"# sup ||z f||/||f|| over corpus: {mz_ratio:.6f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Distance between the resolvent and its truncations C_r, next to the analytic bound."""

import argparse
import sys

import numpy as np

from oplab.analytic import bloch_norm, q_power, random_polynomial
from oplab.disc_groups import BASE, resolvent_integral, truncated_resolvent_cr


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"{'m':>2} {'lambda':>10} {'r':>8} {'measured':>12} {'bound':>12} {'ratio':>7}")
    for m in (1, 2, 3):
        for lam in (1 + 0j, 1 + 0.4j, 2 - 1j):
            h = random_polynomial(rng, m + 6, first_nonzero=m)
            R = resolvent_integral(BASE, lam, h, m)
            qn = bloch_norm(q_power(h, m)).value
            sigma = m - lam.imag
            for r in (0.5, 0.9, 0.99, 0.999, 0.9999):
                d = bloch_norm(R - truncated_resolvent_cr(BASE, lam, h, m, r)).value
                b = (1 - r**sigma) / sigma * qn
                print(f"{m:>2} {lam!s:>10} {r:>8} {d:>12.4e} {b:>12.4e} {d / b:>7.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

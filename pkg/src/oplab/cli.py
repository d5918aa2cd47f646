"""Command-line entry point: ``oplab verify | spectrum | resolve | norms``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from oplab import analytic as an
from oplab import bergman as bg
from oplab import disc_groups as dg
from oplab.errors import ConfigurationError, OplabError
from oplab.suite import SuiteConfig, emit_report_json, emit_spectrum_csv, run_suite

EXIT_OK, EXIT_FAILED, EXIT_CONFIG = 0, 1, 2


def parse_mu(text: str) -> complex:
    """``"re,im"`` or any Python complex literal."""
    parts = text.split(",")
    try:
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise ConfigurationError(f"cannot parse mu {text!r}") from exc


def parse_coeffs(text: str) -> an.TaylorPolynomial:
    """Comma-separated complex literals, constant term first, e.g. ``"1,0,2+1j"``."""
    try:
        vals = [complex(tok.strip().replace(" ", "")) for tok in text.strip("[]").split(",") if tok.strip()]
    except ValueError as exc:
        raise ConfigurationError(f"cannot parse coefficients {text!r}") from exc
    if not vals:
        raise ConfigurationError("empty coefficient list")
    return an.TaylorPolynomial(vals)


def _params(args) -> dg.GroupParams:
    if args.k == 0:
        raise ConfigurationError("k must be nonzero")
    return dg.GroupParams(args.c, args.k)


def _cmd_verify(args) -> int:
    cfg = SuiteConfig.from_file(args.config) if args.config else SuiteConfig()
    if args.seed is not None:
        cfg.seed = args.seed
        cfg.validate()
    report = run_suite(cfg)
    if args.out:
        emit_report_json(report, args.out, include_timing=args.timings)
    s = report.summary
    print(f"checks: {s['total']}  passed: {s['passed']}  failed: {s['failed']}")
    for r in report.records:
        if not r.passed:
            print(f"FAIL {r.check_name} {r.inputs} measured={r.measured_value} bound={r.bound} ({r.reason})")
    return EXIT_OK if report.all_passed else EXIT_FAILED


def _cmd_spectrum(args) -> int:
    mu = parse_mu(args.mu)
    if mu.real == 0:
        raise ConfigurationError("Re(mu) must be nonzero")
    if args.n < 0:
        raise ConfigurationError("--n must be nonnegative")
    emit_spectrum_csv(_params(args), mu, args.n, args.out)
    return EXIT_OK


def _cmd_resolve(args) -> int:
    p, mu, f = _params(args), parse_mu(args.mu), parse_coeffs(args.coeffs)
    if args.method == "diagonal":
        out = dg.resolvent_diagonal(p, mu, f)
    else:
        out = dg.resolvent_split(p, mu, f)
    for c in out.coeffs:
        print(repr(complex(c)))
    return EXIT_OK


def _cmd_norms(args) -> int:
    f = parse_coeffs(args.coeffs)
    if args.alpha <= -1:
        raise ConfigurationError("--alpha must exceed -1")
    if args.p < 1:
        raise ConfigurationError("--p must be at least 1")
    pc = bg.PairingConfig.build(args.alpha, max_degree=max(12, f.degree))
    result = {
        "bloch_seminorm": an.bloch_seminorm(f).value,
        "bloch_norm": an.bloch_norm(f).value,
        "bergman_norm": bg.bergman_norm_p(f, args.p, pc),
        "alpha": args.alpha,
        "p": args.p,
    }
    print(json.dumps(result, sort_keys=True))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oplab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the seeded verification suite")
    v.add_argument("--config", help="JSON suite configuration (defaults used when omitted)")
    v.add_argument("--seed", type=int, help="override the config seed")
    v.add_argument("--out", help="write the JSON report here")
    v.add_argument("--timings", action="store_true", help="include runtime_ms (breaks byte-determinism)")
    v.set_defaults(func=_cmd_verify)

    def group_args(p):
        p.add_argument("--c", type=float, required=True)
        p.add_argument("--k", type=float, required=True)
        p.add_argument("--mu", required=True, help="re,im")

    s = sub.add_parser("spectrum", help="emit eigenvalue and resolvent-circle CSV")
    group_args(s)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=_cmd_spectrum)

    r = sub.add_parser("resolve", help="print resolvent coefficients")
    group_args(r)
    r.add_argument("--coeffs", required=True)
    r.add_argument("--method", choices=("diagonal", "integral"), default="diagonal")
    r.set_defaults(func=_cmd_resolve)

    n = sub.add_parser("norms", help="Bloch and weighted Bergman norms of a polynomial")
    n.add_argument("--coeffs", required=True)
    n.add_argument("--alpha", type=float, default=0.0)
    n.add_argument("--p", type=float, default=2.0)
    n.set_defaults(func=_cmd_norms)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OplabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())

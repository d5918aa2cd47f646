"""Run the seeded verification suite and write the JSON report plus a flat CSV of checks."""

import argparse
import csv
import sys
from pathlib import Path

from oplab.suite import SuiteConfig, emit_report_json, run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", type=Path, help="JSON suite config; defaults when omitted")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--outdir", type=Path, default=Path("results"))
    args = ap.parse_args()

    cfg = SuiteConfig.from_file(args.config) if args.config else SuiteConfig()
    if args.seed is not None:
        cfg.seed = args.seed
    report = run_suite(cfg)

    args.outdir.mkdir(parents=True, exist_ok=True)
    emit_report_json(report, args.outdir / "report.json")
    with open(args.outdir / "checks.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["check_name", "inputs", "measured_value", "bound", "pass", "runtime_ms"])
        for r in report.records:
            inputs = ";".join(f"{k}={v}" for k, v in r.inputs.items())
            w.writerow([r.check_name, inputs, r.measured_value, r.bound, r.passed, f"{r.runtime_ms:.1f}"])

    s = report.summary
    print(f"{s['passed']}/{s['total']} checks passed; report in {args.outdir}")
    return 0 if report.all_passed else 1


if __name__ == "__main__":
    sys.exit(main())

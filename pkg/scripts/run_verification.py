"""Run every registered check and write a JSON report.

    python scripts/run_verification.py --workers 4 --out report.json
"""
import argparse
import json
import sys
import time

from gafcheck.harness import FAIL, REGISTRY, RunOptions, run_checks, summary


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--seed", type=int, default=RunOptions.seed)
    ap.add_argument("--out", default="-", help="report path, '-' for stdout")
    args = ap.parse_args()

    options = RunOptions(seed=args.seed)
    t0 = time.perf_counter()
    results = run_checks(options, workers=args.workers)
    wall = time.perf_counter() - t0

    report = summary(results, options)
    report["results"] = [r.to_json() for r in results]
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.out == "-":
        print(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")

    slowest = sorted(results, key=lambda r: -r.elapsed)[:5]
    print(f"{len(results)} of {len(REGISTRY)} checks in {wall:.1f} s", file=sys.stderr)
    for r in slowest:
        print(f"  {r.elapsed:8.0f} ms  {r.check_id}", file=sys.stderr)
    return 1 if any(r.status == FAIL for r in results) else 0


if __name__ == "__main__":
    sys.exit(main())

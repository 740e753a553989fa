"""Run every verification suite and print one summary line per suite.

    python3 scripts/run_suites.py [--seed 0] [--out reports/]
"""

import argparse
import time
from pathlib import Path

from olctkit import suites
from olctkit.report import dumps


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", type=Path, help="directory for per-suite JSON reports")
    args = ap.parse_args()
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
    failed = 0
    for name in suites.SUITES:
        start = time.perf_counter()
        rep = suites.run_suite(name, seed=args.seed)
        elapsed = time.perf_counter() - start
        failed += not rep.passed
        print(f"{rep.summary():70s} {elapsed:6.2f}s")
        if args.out:
            (args.out / f"{name}.json").write_text(dumps(rep.to_dict()) + "\n")
    raise SystemExit(2 if failed else 0)


if __name__ == "__main__":
    main()

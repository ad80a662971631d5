"""Replay every scripted case and write one JSON report per case.

    python3 scripts/run_all_cases.py --n 5,6 --out reports/
"""

import argparse
import json
from pathlib import Path

from noether.cases import run_all


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", default="5,6")
    ap.add_argument("--out", default="reports")
    ap.add_argument("--jobs", type=int, default=None)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    reports = run_all([int(x) for x in args.n.split(",")], workers=args.jobs)
    for rep in reports:
        (out / f"{rep.case.replace('@', '_')}.json").write_text(json.dumps(rep.to_json(), indent=2, default=str))
        div = sum(s.status == "divergence" for s in rep.steps)
        print(f"{rep.case:10s} {rep.status:7s} {rep.verdict.status if rep.verdict else '-':12s} errata {div}")
    bad = [r.case for r in reports if not r.passed]
    print(f"{len(reports) - len(bad)}/{len(reports)} passed" + (f"; failed: {', '.join(bad)}" if bad else ""))
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())

"""Table of the three n = 2m subcases for odd m under a few fields."""

import argparse

from noether.cases import run_theorem18_subcase
from noether.rationality import FieldDescriptor


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-m", type=int, default=11)
    args = ap.parse_args()
    print(f"{'m':>3} {'sub':>3} {'field':14s} {'verdict':12s} status")
    for m in range(3, args.max_m + 1, 2):
        fields = {"zeta_2m": FieldDescriptor.cyclotomic(2 * m),
                  "zeta_2m, -1=sq": FieldDescriptor.cyclotomic(2 * m, minus_one=True)}
        for sub in (1, 2, 3):
            for label, f in fields.items():
                rep = run_theorem18_subcase(sub, m, f)
                v = rep.verdict.status if rep.verdict else "-"
                print(f"{m:>3} {sub:>3} {label:14s} {v:12s} {rep.status}")


if __name__ == "__main__":
    main()

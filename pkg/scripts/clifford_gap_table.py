"""Tabulate the case-analysis bound, the exact optimum and the stated bound over t.

Rows where the stated bound falls below the exact optimum are marked.
"""

import argparse
import csv
import sys
from fractions import Fraction

from tiltstab import bounds, clifford


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--variety", choices=["triple", "double"], default="double")
    parser.add_argument("--per-case", type=int, default=8)
    parser.add_argument("--brute", action="store_true", help="also run the brute-force search")
    args = parser.parse_args()
    out = csv.writer(sys.stdout)
    header = ["case", "t", "case_bound", "optimum", "stated", "stated_too_small"]
    out.writerow(header + (["bruteforce"] if args.brute else []))
    for case in clifford.clifford_cases(args.variety):
        for t in bounds.interior_points(case.lo, case.hi, args.per_case):
            got = clifford.clifford_bound(t, args.variety).bound
            opt = clifford.polygon_max(t, args.variety).value
            stated = max(Fraction(a) * t.p + Fraction(b) for a, b in case.printed)
            row = [case.index, t, got, opt, stated, stated < opt]
            if args.brute:
                row.append(clifford.clifford_bound_bruteforce(t, args.variety, grid_n=32))
            out.writerow([str(x) for x in row])


if __name__ == "__main__":
    main()

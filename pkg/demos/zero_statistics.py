"""S(t) bounce number and GUE pair correlation over a zero table.

Usage: python demos/zero_statistics.py tests/data/zeta_zeros_1_10000.csv
"""

import sys

from lzeros.analysis import bounce_number, pair_correlation, s_mean
from lzeros.cli import read_zero_table
from lzeros.numerics import PrecisionContext


def main(path):
    zeros = [float(r.y) for r in read_zero_table(path)]
    ctx = PrecisionContext(15)
    print(f"N = {len(zeros)}  bounce = {float(bounce_number(zeros, None, ctx)):.4f}"
          f"  mean S = {float(s_mean(zeros, None, ctx)):.3e}")
    rep = pair_correlation(zeros, 1, len(zeros))
    for a, emp, gue in rep.rows()[::4]:
        print(f"{a:5.2f}  {emp:7.4f}  {gue:7.4f}  {'#' * int(40 * emp)}")
    print(f"mean |empirical - GUE| = {rep.mean_abs_deviation:.4f}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/data/zeta_zeros_1_10000.csv")

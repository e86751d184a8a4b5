"""Labels with no on-line solution for the Davenport-Heilbronn function and the off-line zeros behind them."""

from lzeros.lfuncs import dh_spec
from lzeros.numerics import PrecisionContext, fixed_decimal
from lzeros.solver import find_offline_zero, gap_scan, offline_candidates


def main():
    spec, ctx = dh_spec(), PrecisionContext(30)
    gaps = gap_scan(spec, 1, 110)
    print("gaps:", gaps)
    for n, loc in offline_candidates(spec, gaps, ctx):
        rec = find_offline_zero(spec, 0.7, float(loc), 0.5, ctx)
        with ctx.working():
            print(f"after n={n}: x = {fixed_decimal(rec.x, 10)}  y = {fixed_decimal(rec.y, 10)}"
                  f"  phase/pi = {float(rec.phase_sum):.6f} (odd {rec.odd_integer})")


if __name__ == "__main__":
    main()

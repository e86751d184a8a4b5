"""Saddle-point approximation of zeta on the real axis and along the critical line."""

from lzeros.lfuncs import zeta
from lzeros.numerics import PrecisionContext
from lzeros.saddle import zeta_saddle


def main():
    ctx = PrecisionContext(30)
    for x in (3, 4, 6, 10, 20):
        with ctx.working():
            rel = abs(zeta_saddle(x, None, ctx) / zeta(x, ctx) - 1)
        print(f"z = {x:>2}  relative error {100 * float(rel):.4f}%")
    y, prev, dip = 10.0, None, False
    while y < 35:
        m = float(abs(zeta_saddle(complex(0.5, y), None, ctx)))
        if prev is not None and dip and m > prev:
            print(f"|saddle(1/2 + i y)| has a minimum near y = {y - 0.01:.2f}")
        dip = prev is not None and m < prev
        prev, y = m, y + 0.01


if __name__ == "__main__":
    main()

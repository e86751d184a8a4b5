"""Solve the first zeta zeros and a few Dirichlet and modular zeros to 40 decimals."""

from lzeros.lfuncs import dirichlet_spec, modular12_spec, zeta_spec
from lzeros.numerics import PrecisionContext, fixed_decimal
from lzeros.solver import SolverConfig, solve_zero


def main():
    cfg = SolverConfig.for_digits(40)
    out = PrecisionContext(60)
    for spec, labels in ((zeta_spec(), range(1, 6)), (dirichlet_spec((7, 3)), (-1, 0, 1, 2)),
                         (modular12_spec(), (1, 2, 3))):
        for n in labels:
            rec = solve_zero(spec, n, cfg)
            with out.working():
                print(f"{spec.name:<20} n={n:>3}  y = {fixed_decimal(rec.y, 40)}  |L| ~ 1e{rec.residual_exponent}")


if __name__ == "__main__":
    main()

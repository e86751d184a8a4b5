"""Prime counting reconstructed from the first 50 zeta zeros, sampled at half-integers."""

from lzeros.analysis import reconstruct_primes, sieve_pi
from lzeros.cli import zeta_zero_rows
from lzeros.numerics import PrecisionContext


def main():
    zeros = [r.y for r in zeta_zero_rows(1, 50, 20, 1)]
    grid = [x + 0.5 for x in range(2, 40)]
    rec = reconstruct_primes(grid, zeros, PrecisionContext(20))
    for x, p in zip(grid, rec.pi_values):
        print(f"x = {x:5.1f}  pi_zeros = {float(p):7.3f}  pi = {sieve_pi(x)}")


if __name__ == "__main__":
    main()

"""Special functions used by the zero equations.

Evaluation of log-gamma, Lambert W, incomplete gamma and the exponential
integral is delegated to Arb (through python-flint), which provides rigorous
Stirling, Halley and continued-fraction implementations.  This module adds the
domain checks, branch bookkeeping and the phase functions built from them.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from flint import acb, arb, fmpq, fmpz

from .errors import BranchDomainError, ConvergenceError, DomainError, PoleError
from .numerics import PrecisionContext, evaluate_accurately, mid, to_complex, to_real

DEFAULT_CTX = PrecisionContext()


# ---------------------------------------------------------------------------
# phase functions


@dataclass(frozen=True)
class ThetaKind:
    """Selects one of the smooth phase functions.

    variant is one of "riemann_siegel", "dirichlet", "modular",
    "davenport_heilbronn".  ``modulus``/``order_a`` apply to the Dirichlet
    variant and ``weight`` to the modular one.
    """

    variant: str
    modulus: int = 1
    order_a: int = 0
    weight: int = 12

    def __post_init__(self):
        if self.variant not in ("riemann_siegel", "dirichlet", "modular", "davenport_heilbronn"):
            raise ValueError(f"unknown theta variant {self.variant!r}")
        if self.variant == "dirichlet":
            if self.order_a not in (0, 1):
                raise ValueError("Dirichlet order a must be 0 or 1")
            if self.modulus < 1:
                raise ValueError("modulus must be positive")
        if self.variant == "modular" and (self.weight < 4 or self.weight % 2):
            raise ValueError("modular weight must be even and >= 4")

    @classmethod
    def riemann_siegel(cls) -> "ThetaKind":
        return cls("riemann_siegel")

    @classmethod
    def dirichlet(cls, k: int, a: int) -> "ThetaKind":
        return cls("dirichlet", modulus=int(k), order_a=int(a))

    @classmethod
    def modular(cls, weight: int = 12) -> "ThetaKind":
        return cls("modular", weight=int(weight))

    @classmethod
    def davenport_heilbronn(cls) -> "ThetaKind":
        return cls("davenport_heilbronn")

    def _gamma_shift_and_scale(self):
        """(c, s, L) with theta(y) = Im logGamma(c + i s y) - L y."""
        if self.variant == "riemann_siegel":
            return arb(1) / 4, arb(1) / 2, arb.pi().log() / 2
        if self.variant == "dirichlet":
            return (
                arb(1) / 4 + arb(self.order_a) / 2,
                arb(1) / 2,
                (arb.pi() / self.modulus).log() / 2,
            )
        if self.variant == "modular":
            return arb(self.weight) / 2, arb(1), (2 * arb.pi()).log()
        return arb(3) / 4, arb(1) / 2, (arb.pi() / 5).log() / 2


def _is_nonpositive_integer(z: acb) -> bool:
    if not z.imag.is_zero():
        return False
    x = z.real
    return bool(x <= 0) and x.is_integer()


def log_gamma(z, ctx: PrecisionContext = DEFAULT_CTX) -> acb:
    """Continuous log-gamma on the plane cut along the negative real axis."""
    with ctx.working():
        z = mid(to_complex(z))
        if _is_nonpositive_integer(z):
            raise PoleError(f"log Gamma has a pole at {z.real}")
        return ctx.finish(z.lgamma())


def theta_smooth(kind: ThetaKind, y, ctx: PrecisionContext = DEFAULT_CTX) -> arb:
    """Smooth phase function of the selected family at real y."""
    with ctx.working():
        y = mid(to_real(y))
        c, s, L = kind._gamma_shift_and_scale()
        val = acb(c, s * y).lgamma().imag - L * y
        return ctx.finish(val)


def theta_slope(kind: ThetaKind, y, ctx: PrecisionContext = DEFAULT_CTX) -> arb:
    """Derivative of theta_smooth with respect to y."""
    with ctx.working():
        y = mid(to_real(y))
        c, s, L = kind._gamma_shift_and_scale()
        val = s * acb(c, s * y).digamma().real - L
        return ctx.finish(val)


def theta_asymptotic(y, ctx: PrecisionContext = DEFAULT_CTX) -> arb:
    """Leading Stirling form (y/2) log(y/(2 pi e)) - pi/8 of the Riemann-Siegel theta."""
    with ctx.working():
        y = mid(to_real(y))
        return ctx.finish(y / 2 * (y / (2 * arb.pi() * arb.const_e())).log() - arb.pi() / 8)


# ---------------------------------------------------------------------------
# Lambert W


def lambert_w(k: int, z, ctx: PrecisionContext = DEFAULT_CTX) -> acb:
    """Branch k of the Lambert W function (branch cuts as in Corless et al.)."""
    k = int(k)
    with ctx.working():
        z = mid(to_complex(z))
        if z.real.is_zero() and z.imag.is_zero():
            if k == 0:
                return acb(0)
            raise BranchDomainError(f"W_{k}(0) is not finite")
        w = mid(z.lambertw(branch=k))
        if not w.is_finite():
            raise ConvergenceError(f"Lambert W iteration failed for branch {k}")
        # residual check relative to |z|; near the branch point the
        # conditioning is sqrt-like so allow the guard digits to absorb it
        res = abs(w * w.exp() - z)
        if res > abs(z) * arb(10) ** (-(ctx.precision_digits - 3)):
            raise ConvergenceError(f"Lambert W residual too large for branch {k}")
        return ctx.finish(w)


def lambert_w0_real(x, ctx: PrecisionContext = DEFAULT_CTX) -> arb:
    """Principal branch on the real axis, x >= -1/e."""
    with ctx.working():
        x = mid(to_real(x))
        if x < -arb.const_e() ** -1:
            raise BranchDomainError("W_0 is not real below -1/e")
        return ctx.finish(mid(acb(x).lambertw(branch=0)).real)


# ---------------------------------------------------------------------------
# incomplete gamma and exponential integrals


def upper_incomplete_gamma(s, r, ctx: PrecisionContext = DEFAULT_CTX) -> acb:
    """Gamma(s, r) = int_r^oo t^(s-1) e^(-t) dt for real r > 0."""
    with ctx.working():
        s = mid(to_complex(s))
        r = mid(to_real(r))
        if not r > 0:
            raise DomainError("incomplete gamma needs r > 0")
    val = evaluate_accurately(lambda c: acb(r).gamma_upper(s), ctx)
    if not val.is_finite():
        raise ConvergenceError("incomplete gamma evaluation failed")
    return ctx.finish(val)


def generalized_exp_integral(nu, r, ctx: PrecisionContext = DEFAULT_CTX) -> acb:
    """E_nu(r) = r^(nu-1) Gamma(1-nu, r)."""
    with ctx.working():
        nu = mid(to_complex(nu))
        r = mid(to_real(r))
        if not r > 0:
            raise DomainError("E_nu needs r > 0")
    val = evaluate_accurately(lambda c: acb(r) ** (nu - 1) * acb(r).gamma_upper(1 - nu), ctx)
    return ctx.finish(val)


def log_integral(x, ctx: PrecisionContext = DEFAULT_CTX) -> arb:
    """Principal-value logarithmic integral Li(x) = int_0^x dt/log t."""
    with ctx.working():
        x = mid(to_real(x))
        if not x > 0 or x == 1:
            raise DomainError("Li(x) needs x > 0 and x != 1")
        return ctx.finish(x.li())


def exp_integral_ei(z, ctx: PrecisionContext = DEFAULT_CTX) -> acb:
    """Exponential integral Ei(z) with the cut on the negative real axis."""
    with ctx.working():
        z = mid(to_complex(z))
        if z.real.is_zero() and z.imag.is_zero():
            raise DomainError("Ei has a logarithmic singularity at 0")
        return ctx.finish(z.ei())


# ---------------------------------------------------------------------------
# exact arithmetic helpers

_bernoulli_lock = threading.Lock()


@lru_cache(maxsize=None)
def _bernoulli_cached(n: int) -> Fraction:
    q = fmpq.bernoulli(n)
    return Fraction(int(q.p), int(q.q))


def bernoulli_number(n: int) -> Fraction:
    """Exact Bernoulli number B_n with B_1 = -1/2."""
    n = int(n)
    if n < 0:
        raise DomainError("Bernoulli numbers need n >= 0")
    with _bernoulli_lock:
        return _bernoulli_cached(n)


def factorize(n: int) -> list[tuple[int, int]]:
    if n < 1:
        raise DomainError("n must be >= 1")
    if n == 1:
        return []
    return [(int(p), int(e)) for p, e in fmpz(n).factor()]


def mobius(n: int) -> int:
    n = int(n)
    if n < 1:
        raise DomainError("mobius needs n >= 1")
    return int(fmpz(n).moebius_mu())


def euler_phi(n: int) -> int:
    n = int(n)
    if n < 1:
        raise DomainError("euler_phi needs n >= 1")
    return int(fmpz(n).euler_phi())


def prime_power_base(n: int) -> int | None:
    """p if n = p^m (m >= 1), else None."""
    f = factorize(int(n))
    if len(f) == 1:
        return f[0][0]
    return None


def von_mangoldt(n: int, ctx: PrecisionContext = DEFAULT_CTX) -> arb:
    """Lambda(n) = log p when n is a power of the prime p, else 0."""
    p = prime_power_base(n)
    with ctx.working():
        return ctx.finish(arb(p).log()) if p else arb(0)

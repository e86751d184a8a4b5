"""Statistics over located zeros and prime counting from zeros.

S(y) values, Gram points, the bounce number, pair correlation against the GUE
density, and explicit-formula reconstructions of psi, J and pi.  Zero lists
may be ZeroRecord objects or plain ordinates (arb, float, str).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from flint import acb, arb, ctx as _flint_ctx
from scipy.special import sici

from .errors import DomainError, InsufficientData, ResourceError
from .lfuncs import LFunctionSpec, evaluate, zeta_spec
from .numerics import PrecisionContext, mid, principal_arg, to_real
from .special import ThetaKind, lambert_w0_real, mobius, theta_slope, theta_smooth

DEFAULT_CTX = PrecisionContext()
DEFAULT_DELTA = "1e-6"
SIEVE_CAP = 10**8

_RS = ThetaKind.riemann_siegel()


def _ordinate(z) -> arb:
    y = getattr(z, "y", z)
    return mid(to_real(y))


def _label(z, default: int) -> int:
    n = getattr(z, "n", None)
    return default if n is None else int(n)


def _delta(delta) -> arb:
    d = mid(to_real(DEFAULT_DELTA if delta is None else delta))
    if not d > 0:
        raise DomainError("delta must be positive")
    return d


# ---------------------------------------------------------------------------
# S(y)


@dataclass(frozen=True)
class SPoint:
    y: arb
    s_value: arb
    delta_used: arb

    def __post_init__(self):
        if not self.delta_used > 0:
            raise ValueError("delta_used must be positive")


def s_of_y(y, delta=None, ctx: PrecisionContext = DEFAULT_CTX, spec: LFunctionSpec | None = None) -> arb:
    """(1/pi) times the principal arg of L(c + delta + i y); c is the critical abscissa."""
    spec = spec or zeta_spec()
    with ctx.working():
        y = mid(to_real(y))
        d = _delta(delta)
        c = arb(spec.critical_x.numerator) / spec.critical_x.denominator
        val = evaluate(spec, acb(c + d, y), ctx)
        return ctx.finish(principal_arg(val) / arb.pi())


def s_point(y, delta=None, ctx: PrecisionContext = DEFAULT_CTX, spec: LFunctionSpec | None = None) -> SPoint:
    with ctx.working():
        d = _delta(delta)
        return SPoint(mid(to_real(y)), s_of_y(y, d, ctx, spec), d)


def s_values(zeros: Iterable, delta=None, ctx: PrecisionContext = DEFAULT_CTX,
             spec: LFunctionSpec | None = None) -> list[arb]:
    with ctx.working():
        d = _delta(delta)
        return [s_of_y(_ordinate(z), d, ctx, spec) for z in zeros]


def bounce_number(zeros: Sequence, delta=None, ctx: PrecisionContext = DEFAULT_CTX,
                  spec: LFunctionSpec | None = None) -> arb:
    """Mean of |S(y_n)| over the given zeros."""
    if not zeros:
        raise InsufficientData("bounce number needs at least one zero")
    s = s_values(zeros, delta, ctx, spec)
    with ctx.working():
        return ctx.finish(sum((abs(v) for v in s), arb(0)) / len(s))


def s_mean(zeros: Sequence, delta=None, ctx: PrecisionContext = DEFAULT_CTX,
           spec: LFunctionSpec | None = None) -> arb:
    """Mean of S(y_n) over the given zeros."""
    if not zeros:
        raise InsufficientData("mean of S needs at least one zero")
    s = s_values(zeros, delta, ctx, spec)
    with ctx.working():
        return ctx.finish(sum(s, arb(0)) / len(s))


# ---------------------------------------------------------------------------
# Gram points


def gram_points(n: int, sign: str = "+", ctx: PrecisionContext = DEFAULT_CTX, refine: bool = True) -> arb:
    """Solution of theta(y) = (n - 1) pi for sign '+', (n - 1/2) pi for sign '-'.

    The Lambert-W closed form 2 pi a / W(a / e) with a = n - 7/8 (or n - 3/8)
    uses the leading Stirling phase and is off by about 1/(48 y).  With
    refine=True it seeds a Newton iteration on the exact Riemann-Siegel theta.
    """
    n = int(n)
    if n < 1:
        raise DomainError("Gram points are labelled from n = 1")
    if sign not in ("+", "-"):
        raise DomainError("sign must be '+' or '-'")
    with ctx.working():
        a = arb(n) - (arb(7) / 8 if sign == "+" else arb(3) / 8)
        y = 2 * arb.pi() * a / lambert_w0_real(a / arb.const_e(), ctx)
        if not refine:
            return ctx.finish(y)
        target = (arb(n - 1) if sign == "+" else arb(n) - arb(1) / 2) * arb.pi()
        tol = arb(10) ** (-(ctx.precision_digits + 2))
        for _ in range(100):
            step = (theta_smooth(_RS, y, ctx) - target) / theta_slope(_RS, y, ctx)
            y = mid(y - step)
            if abs(step) < tol * max(abs(y), arb(1)):
                break
        return ctx.finish(y)


# ---------------------------------------------------------------------------
# pair correlation


def gue_density_bin_mean(a: float, b: float) -> float:
    """Mean of 1 - sin^2(pi u)/(pi u)^2 over (a, b]."""
    if not b > a >= 0:
        raise DomainError("need 0 <= a < b")

    def primitive(u: float) -> float:
        if u == 0:
            return 0.0
        si, _ = sici(2 * math.pi * u)
        return u - (si / math.pi - math.sin(math.pi * u) ** 2 / (math.pi**2 * u))

    return (primitive(b) - primitive(a)) / (b - a)


def gue_density(u: float) -> float:
    if u == 0:
        return 0.0
    return 1.0 - (math.sin(math.pi * u) / (math.pi * u)) ** 2


@dataclass(frozen=True)
class GueReport:
    alpha_grid: list
    empirical: list
    theoretical: list
    M: int
    N: int
    alpha_step: float = 0.05

    def __post_init__(self):
        if not len(self.alpha_grid) == len(self.empirical) == len(self.theoretical):
            raise ValueError("report columns must have equal length")

    @property
    def mean_abs_deviation(self) -> float:
        return float(np.mean(np.abs(np.asarray(self.empirical) - np.asarray(self.theoretical))))

    def rows(self) -> list[tuple[float, float, float]]:
        return list(zip(self.alpha_grid, self.empirical, self.theoretical))


def normalized_positions(ordinates: Sequence[float]) -> np.ndarray:
    """Cumulative sums of delta_n = log(y_n / 2 pi)(y_{n+1} - y_n) / 2 pi, starting at 0."""
    y = np.asarray(ordinates, dtype=float)
    d = np.log(y[:-1] / (2 * np.pi)) * np.diff(y) / (2 * np.pi)
    return np.concatenate(([0.0], np.cumsum(d)))


def pair_correlation(zeros: Sequence, M: int | None = None, N: int | None = None,
                     alpha_step: float = 0.05, alpha_max: float = 3.0, min_span: int = 1000) -> GueReport:
    """Binned pair correlation of normalized zero distances against the GUE density.

    Counts pairs m < n with alpha < u_n - u_m <= alpha + alpha_step, normalized
    by (N - M) alpha_step, for zeros labelled M..N.
    """
    labelled = sorted((_label(z, i + 1), float(_ordinate(z))) for i, z in enumerate(zeros))
    M = labelled[0][0] if M is None else int(M)
    N = labelled[-1][0] if N is None else int(N)
    ys = [y for n, y in labelled if M <= n <= N]
    if N - M < min_span or len(ys) < 2:
        raise InsufficientData(f"pair correlation needs N - M >= {min_span}, got {N - M}")
    if len(ys) != N - M + 1:
        raise InsufficientData(f"zero list does not cover labels {M}..{N}")
    if np.any(np.diff(ys) <= 0):
        raise DomainError("ordinates must be strictly increasing")
    u = normalized_positions(ys)
    nb = int(round(alpha_max / alpha_step))
    edges = np.arange(nb + 1) * alpha_step
    idx = np.arange(len(u))
    cum = np.array([np.sum(np.searchsorted(u, u + e, side="right") - idx - 1) for e in edges], dtype=float)
    counts = np.diff(cum)
    empirical = counts / ((N - M) * alpha_step)
    theoretical = [gue_density_bin_mean(edges[i], edges[i + 1]) for i in range(nb)]
    return GueReport([float(e) for e in edges[:-1]], [float(v) for v in empirical], theoretical, M, N, alpha_step)


# ---------------------------------------------------------------------------
# explicit formulas


def _rho_list(zeros: Iterable, ctx: PrecisionContext) -> list[acb]:
    half = arb(1) / 2
    return [acb(half, _ordinate(z)) for z in zeros]


def psi_from_zeros(x, zeros: Sequence, ctx: PrecisionContext = DEFAULT_CTX) -> arb:
    """x - sum_rho x^rho / rho - log 2 pi - log(1 - x^-2) / 2 over conjugate pairs."""
    with ctx.working():
        x = mid(to_real(x))
        if not x > 1:
            raise DomainError("psi from zeros needs x > 1")
        lx = x.log()
        s = arb(0)
        for rho in _rho_list(zeros, ctx):
            s += 2 * ((rho * lx).exp() / rho).real
        val = x - s - (2 * arb.pi()).log() - (1 - 1 / (x * x)).log() / 2
        return ctx.finish(val)


def _j_tail(lx: arb) -> arb:
    """int_x^inf dt / (t (t^2 - 1) log t) as the series sum_{m>=1} E1(2 m log x)."""
    eps = arb(2) ** (-_flint_ctx.prec)
    s = arb(0)
    m = 1
    while True:
        t = -(-2 * m * lx).ei()
        s += t
        if abs(t) <= eps * abs(s):
            return s
        m += 1


def j_from_zeros(x, zeros: Sequence, ctx: PrecisionContext = DEFAULT_CTX) -> arb:
    """Riemann's J(x) = li(x) - sum_rho li(x^rho) + tail(x) - log 2 with li(x^rho) = Ei(rho log x)."""
    with ctx.working():
        x = mid(to_real(x))
        if not x > 1:
            raise DomainError("J from zeros needs x > 1")
        lx = x.log()
        s = arb(0)
        for rho in _rho_list(zeros, ctx):
            s += 2 * (rho * lx).ei().real
        val = x.li() - s + _j_tail(lx) - arb(2).log()
        return ctx.finish(mid(val))


def pi_from_zeros(x, zeros: Sequence, ctx: PrecisionContext = DEFAULT_CTX) -> arb:
    """pi(x) = sum_n mu(n) J(x^{1/n}) / n over the terms with x^{1/n} >= 2."""
    with ctx.working():
        x = mid(to_real(x))
        if not x >= 2:
            raise DomainError("pi from zeros needs x >= 2")
        zl = list(zeros)
        total = arb(0)
        n = 1
        while True:
            r = x ** (arb(1) / n)
            if r < 2:
                break
            mu = mobius(n)
            if mu:
                total += mu * j_from_zeros(r, zl, ctx) / n
            n += 1
        return ctx.finish(total)


# ---------------------------------------------------------------------------
# sieve oracles


def _check_cap(x) -> int:
    xf = math.floor(float(mid(to_real(x))))
    if xf > SIEVE_CAP:
        raise ResourceError(f"sieve limit is {SIEVE_CAP}")
    return xf


def primes_up_to(x) -> np.ndarray:
    m = _check_cap(x)
    if m < 2:
        return np.zeros(0, dtype=np.int64)
    is_p = np.ones(m + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, math.isqrt(m) + 1):
        if is_p[p]:
            is_p[p * p :: p] = False
    return np.nonzero(is_p)[0]


def sieve_pi(x) -> int:
    """Number of primes <= x."""
    return int(len(primes_up_to(x)))


def sieve_psi(x, ctx: PrecisionContext = DEFAULT_CTX) -> arb:
    """Chebyshev psi(x) = sum_{p^k <= x} log p."""
    m = _check_cap(x)
    with ctx.working():
        s = arb(0)
        for p in primes_up_to(m):
            p = int(p)
            k = 1
            while p ** (k + 1) <= m:
                k += 1
            s += k * arb(p).log()
        return ctx.finish(s)


def sieve_j(x) -> float:
    """Riemann's prime-power count J(x) = sum_{p^k <= x} 1/k (right-continuous)."""
    m = _check_cap(x)
    s = 0.0
    for p in primes_up_to(m):
        p = int(p)
        k = 1
        while p**k <= m:
            s += 1.0 / k
            k += 1
    return s


@dataclass(frozen=True)
class PrimeReconstruction:
    x_grid: list
    psi_values: list
    j_values: list
    pi_values: list
    zeros_used: int

    def __post_init__(self):
        if not len(self.x_grid) == len(self.psi_values) == len(self.j_values) == len(self.pi_values):
            raise ValueError("reconstruction columns must have equal length")

    def rows(self):
        return list(zip(self.x_grid, self.psi_values, self.j_values, self.pi_values))


def reconstruct_primes(x_grid: Iterable, zeros: Sequence, ctx: PrecisionContext = DEFAULT_CTX) -> PrimeReconstruction:
    """psi, J and pi from the given zeros on every grid point (x >= 2)."""
    zl = list(zeros)
    xs, ps, js, pis = [], [], [], []
    with ctx.working():
        for x in x_grid:
            x = mid(to_real(x))
            xs.append(x)
            ps.append(psi_from_zeros(x, zl, ctx))
            js.append(j_from_zeros(x, zl, ctx))
            pis.append(pi_from_zeros(x, zl, ctx))
    return PrimeReconstruction(xs, ps, js, pis, len(zl))

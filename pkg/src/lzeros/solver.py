"""Zeros as solutions of one transcendental equation per label n.

For every family the on-line zero y_n solves
    theta(y) + arg L(c + delta + i y) + phase_constant = (n - n0 - rhs_offset) pi
in the limit delta -> 0+.  ``solve_zero`` starts from a closed-form Lambert-W
seed, brackets and root-finds at a finite delta, then shrinks delta while
raising the working precision until |L(c + i y)| reaches the residual target.
"""

from __future__ import annotations

import logging
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Iterable

from flint import acb, arb

from .errors import (
    ConvergenceError,
    MultiRootWarning,
    NoSolution,
    OnZeroError,
    PrecisionExhausted,
    SeedDomainError,
)
from .lfuncs import LFunctionSpec, evaluate, phase_constant, phase_sum
from .numerics import PrecisionContext, agreeing_digits, from_decimal, mid, principal_arg, to_decimal, to_real
from .special import theta_slope, theta_smooth

log = logging.getLogger(__name__)

DEFAULT_CTX = PrecisionContext()


def _q(f: Fraction) -> arb:
    return arb(f.numerator) / f.denominator


# ---------------------------------------------------------------------------
# configuration and records


@dataclass(frozen=True)
class SolverConfig:
    """Refinement schedule.

    Stage m uses delta_m = delta0 / delta_divisor**m at
    initial_precision + m * precision_increment digits, raised when needed so
    that stage m can resolve y to about delta_m**2.
    """

    delta0: str = "1e-3"
    delta_divisor: int = 1000
    initial_precision: int = 15
    precision_increment: int = 20
    residual_exponent: int = 50
    max_iterations: int = 12
    bracket_halfwidth_factor: float = 0.6
    max_widenings: int = 3
    bisect_width: str = "1e-3"
    multiroot_check: bool = False

    def __post_init__(self):
        if not Fraction(self.delta0) > 0:
            raise ValueError("delta0 must be positive")
        if int(self.delta_divisor) < 2:
            raise ValueError("delta_divisor must be >= 2")
        if self.initial_precision < 15:
            raise ValueError("initial_precision must be >= 15")
        if self.precision_increment < 0 or self.max_iterations < 1:
            raise ValueError("precision_increment >= 0 and max_iterations >= 1 required")
        if self.residual_exponent < 1:
            raise ValueError("residual_exponent must be positive")
        if not self.bracket_halfwidth_factor > 0:
            raise ValueError("bracket_halfwidth_factor must be positive")

    @property
    def residual_target(self) -> arb:
        return arb(10) ** (-self.residual_exponent)

    @property
    def delta0_log10(self) -> float:
        return math.log10(float(Fraction(self.delta0)))

    @classmethod
    def for_digits(cls, digits: int, **overrides) -> "SolverConfig":
        """Schedule that reaches `digits` decimals in about five delta stages."""
        D = int(digits)
        step = max(3, math.ceil(((D + 3) / 2 - 3) / 4))
        base = dict(
            delta_divisor=10**step,
            residual_exponent=D,
            precision_increment=2 * step,
            max_iterations=12,
        )
        base.update(overrides)
        return cls(**base)


@dataclass(frozen=True)
class ZeroRecord:
    """A located zero x + i y with its quality indicators."""

    n: int | None
    x: arb
    y: arb
    residual: arb
    verified_digits: int
    iterations: int
    residual_shifted: arb | None = None
    delta_final: arb | None = None
    precision_digits: int = 0
    seed: arb | None = None
    phase_sum: arb | None = None
    odd_integer: int | None = None
    phase_defect: arb | None = None

    @property
    def residual_exponent(self) -> int:
        r = mid(self.residual)
        if r.is_zero():
            return -10 * max(self.precision_digits, 1)
        return int(math.floor(float(mid(r.log() / arb(10).log()))))


@dataclass(frozen=True)
class EquationTarget:
    spec: LFunctionSpec
    n: int
    rhs: arb


def equation_target(spec: LFunctionSpec, n: int, ctx: PrecisionContext = DEFAULT_CTX) -> EquationTarget:
    """Right-hand side (n - n0 - rhs_offset) pi of the family equation."""
    with ctx.working():
        rhs = (arb(int(n) - spec.n0) - _q(spec.rhs_offset)) * arb.pi()
        return EquationTarget(spec, int(n), ctx.finish(rhs))


# ---------------------------------------------------------------------------
# seeds


def _lambert_ratio(num: arb, w_arg: arb) -> arb:
    """num / W0(w_arg), raising SeedDomainError below the branch point."""
    if w_arg < -(arb.const_e() ** -1):
        raise SeedDomainError("Lambert W argument below -1/e; no closed-form seed for this label")
    w = acb(w_arg).lambertw(branch=0).real
    if w.is_zero():
        raise SeedDomainError("Lambert W vanishes; seed undefined")
    return num / w


def lambert_seed(spec: LFunctionSpec, n: int, ctx: PrecisionContext = DEFAULT_CTX) -> arb:
    """Closed-form approximation of y_n from the principal Lambert W branch.

    The working precision is raised by the size of n so that very large labels
    keep ctx.precision_digits significant digits.
    """
    n = int(n)
    extra = len(str(abs(n))) + 5
    c = ctx.raised(extra)
    with c.working():
        pi, e = arb.pi(), arb.const_e()
        if spec.family == "zeta":
            A = arb(n) - arb(11) / 8
            y = _lambert_ratio(2 * pi * A, A / e)
        elif spec.family == "dh":
            A = arb(n) - arb(5) / 8
            y = _lambert_ratio(2 * pi * A, 5 * A / e)
        elif spec.family == "modular12":
            k = spec.weight
            A = arb(n) - arb(k + (-1) ** (k // 2)) / 4
            y = _lambert_ratio(A * pi, A / (2 * e))
        else:
            chi = spec.character
            k, a = chi.modulus, chi.order_a
            m = n - spec.n0
            sigma = 1 if m > 0 else -1
            argG = -2 * phase_constant(spec, c)
            A = sigma * (arb(m) + argG / (2 * pi)) + arb(1 - 4 * sigma - 2 * a * (sigma + 1)) / 8
            y = _lambert_ratio(2 * pi * sigma * A, k * A / e)
        return c.finish(y)


def smooth_seed(spec: LFunctionSpec, n: int, ctx: PrecisionContext = DEFAULT_CTX) -> arb:
    """Solve the equation with the arg L term dropped, by bracketing on y.

    Used where the closed form is undefined (e.g. the first modular zero).
    """
    target = equation_target(spec, n, ctx).rhs
    pc = phase_constant(spec, ctx)
    kind = spec.theta_kind
    positive = (int(n) - spec.n0) > 0 or spec.family != "dirichlet"
    sgn = 1 if positive else -1

    def g(y):
        with ctx.working():
            return theta_smooth(kind, y, ctx) + pc - target

    with ctx.working():
        lo = arb(0)
        hi = arb(sgn)
        # walk outward until g changes sign on the increasing part
        for _ in range(200):
            ghi = g(hi)
            if (ghi > 0) if positive else (ghi < 0):
                break
            lo, hi = hi, hi * 2
        else:
            raise ConvergenceError("smooth seed search did not bracket a root")
        for _ in range(200):
            m = (lo + hi) / 2
            gm = g(m)
            if ((gm > 0) if positive else (gm < 0)):
                hi = m
            else:
                lo = m
            if abs(hi - lo) < arb(10) ** (-ctx.precision_digits):
                break
        return ctx.finish((lo + hi) / 2)


def seed(spec: LFunctionSpec, n: int, ctx: PrecisionContext = DEFAULT_CTX) -> arb:
    """Lambert seed, or the smooth-equation root when the closed form is undefined."""
    try:
        return lambert_seed(spec, n, ctx)
    except SeedDomainError:
        return smooth_seed(spec, n, ctx)


# ---------------------------------------------------------------------------
# the equation


class _Lhs:
    """LHS(y) - rhs(n) at fixed spec, n, delta and precision."""

    def __init__(self, spec: LFunctionSpec, n: int, delta, ctx: PrecisionContext, reduce: bool = False):
        self.spec, self.n, self.ctx, self.reduce = spec, n, ctx, reduce
        with ctx.working():
            self.delta = mid(to_real(delta))
            self.x = _q(spec.critical_x) + self.delta
            self.const = phase_constant(spec, ctx) - equation_target(spec, n, ctx).rhs
        self.evals = 0

    def __call__(self, y: arb) -> arb:
        ctx = self.ctx
        self.evals += 1
        L = evaluate(self.spec, _point(self.x, y, ctx), ctx)
        with ctx.working():
            v = theta_smooth(self.spec.theta_kind, y, ctx) + principal_arg(L) + self.const
            if self.reduce:
                # near one zero the true value stays inside (-pi, pi); this undoes principal-branch wraps
                two_pi = 2 * arb.pi()
                v -= two_pi * (v / two_pi + arb(1) / 2).floor()
                if v > arb.pi():
                    v -= two_pi
            return v


def _point(x: arb, y: arb, ctx: PrecisionContext) -> acb:
    with ctx.working():
        return acb(x, y)


def equation_lhs(spec: LFunctionSpec, n: int, y, delta, ctx: PrecisionContext = DEFAULT_CTX) -> arb:
    """theta(y) + arg L(c + delta + i y) + phase constant - (n - n0 - offset) pi."""
    with ctx.working():
        d = mid(to_real(delta))
        if not d > 0:
            raise ValueError("delta must be positive")
        y = mid(to_real(y))
    with ctx.working():
        return ctx.finish(_Lhs(spec, n, d, ctx)(y))


def equation_lhs_asymptotic(n: int, y, delta, ctx: PrecisionContext = DEFAULT_CTX) -> arb:
    """Zeta only: (y/2pi) log(y/2pi e) + arg zeta(1/2 + delta + i y)/pi - (n - 11/8)."""
    with ctx.working():
        y = mid(to_real(y))
        d = mid(to_real(delta))
        pi = arb.pi()
        z = acb(arb(1) / 2 + d, y).zeta()
        val = y / (2 * pi) * (y / (2 * pi * arb.const_e())).log() + principal_arg(z) / pi - (arb(n) - arb(11) / 8)
        return ctx.finish(val)


# ---------------------------------------------------------------------------
# root finding


def _root_in_bracket(f: Callable, lo: arb, flo: arb, hi: arb, fhi: arb, switch: arb, tol: arb, max_evals: int = 600):
    """Bisection down to `switch`, then Brent-Dekker, on flo < 0 < fhi.

    Returns (root, lo, hi, flo, fhi) with the final bracket.
    """
    evals = 0
    while hi - lo > switch and evals < max_evals:
        m = (lo + hi) / 2
        fm = f(m)
        evals += 1
        if fm.is_zero():
            return m, m, m, fm, fm
        if fm < 0:
            lo, flo = m, fm
        else:
            hi, fhi = m, fm
    root, evals2 = _brent(f, lo, flo, hi, fhi, tol, max_evals - evals)
    return root
def _brent(f: Callable, a: arb, fa: arb, b: arb, fb: arb, tol: arb, max_evals: int):
    """Brent-Dekker root finder on a sign-changing bracket.

    Returns ((root, lo, hi, flo, fhi), evaluations).
    """
    if abs(fa) < abs(fb):
        a, b, fa, fb = b, a, fb, fa
    c, fc = a, fa
    d = e = b - a
    evals = 0
    while evals < max_evals:
        if (fb > 0) == (fc > 0):
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        m = (c - b) / 2
        if abs(m) <= tol / 2 or fb.is_zero():
            break
        if abs(e) >= tol / 2 and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p, q = 2 * m * s, 1 - s
            else:
                qq, r = fa / fc, fb / fc
                p = s * (2 * m * qq * (qq - r) - (b - a) * (r - 1))
                q = (qq - 1) * (r - 1) * (s - 1)
            if p > 0:
                q = -q
            else:
                p = -p
            if 2 * p < min(3 * m * q - abs(tol * q / 2), abs(e * q)):
                e, d = d, p / q
            else:
                d = e = m
        else:
            d = e = m
        a, fa = b, fb
        if abs(d) > tol / 2:
            b = mid(b + d)
        else:
            b = mid(b + (tol / 2 if m > 0 else -tol / 2))
        fb = f(b)
        evals += 1
    lo, hi = (b, c) if b < c else (c, b)
    flo, fhi = (fb, fc) if b < c else (fc, fb)
    return (b, lo, hi, flo, fhi), evals


def _flint_digits() -> int:
    from flint import ctx as fctx

    return fctx.dps


def _bracket_halfwidth(spec: LFunctionSpec, n: int, y0: arb, config: SolverConfig, ctx: PrecisionContext) -> arb:
    """factor * (seed_{n+1} - seed_{n-1})/2, or the local mean spacing pi/theta' if a seed is undefined."""
    try:
        s_up = lambert_seed(spec, n + 1, ctx)
        s_dn = lambert_seed(spec, n - 1, ctx)
        with ctx.working():
            spacing = (s_up - s_dn) / 2
            if spacing > 0:
                return spacing * arb(config.bracket_halfwidth_factor)
    except SeedDomainError:
        pass
    with ctx.working():
        slope = theta_slope(spec.theta_kind, y0, ctx)
        spacing = arb.pi() / slope if slope > arb("0.05") else arb(2)
        return abs(spacing) * arb(config.bracket_halfwidth_factor)


def _scan_for_jump(f: Callable, lo: arb, hi: arb, points: int = 48):
    """Largest jump of f on a grid, narrowed by bisection.

    Returns (signed jump in units of pi, location, (a, fa, b, fb)) or (0, None, None).
    """
    ys = [lo + (hi - lo) * arb(i) / points for i in range(points + 1)]
    vals = [f(y) for y in ys]
    best, where = arb(0), None
    for i in range(points):
        d = abs(vals[i + 1] - vals[i])
        if d > best:
            best, where = d, i
    if where is None:
        return arb(0), None, None
    a, b, fa, fb = ys[where], ys[where + 1], vals[where], vals[where + 1]
    for _ in range(40):
        m = (a + b) / 2
        fm = f(m)
        if abs(fm - fa) > abs(fb - fm):
            b, fb = m, fm
        else:
            a, fa = m, fm
    return (fb - fa) / arb.pi(), (a + b) / 2, (a, fa, b, fb)


def _root_beside_wrap(f: Callable, lo, flo, hi, fhi):
    """Bracket for a root hidden next to a downward branch wrap in [lo, hi], or None.

    When arg L'(rho) lies near +-pi the principal arg wraps by 2 pi within a few
    delta of the zero, so a genuine sign change can sit right beside a jump.
    """
    jump, _, ends = _scan_for_jump(f, lo, hi)
    if ends is None or not jump <= arb("-1.5"):
        return None
    a, fa, b, fb = ends
    if flo < 0 and fa > 0:
        return lo, flo, a, fa
    if fb < 0 and fhi > 0:
        return b, fb, hi, fhi
    return None


def _jump_or_root(f: Callable, lo, flo, hi, fhi, switch, delta):
    """Bisect to `switch`; classify the sign change as a genuine root or a branch jump.

    Returns (lo, flo, hi, fhi, jump_in_units_of_pi or None).
    """
    pi = arb.pi()
    _, lo, hi, flo, fhi = _root_in_bracket(f, lo, flo, hi, fhi, switch, switch)
    if fhi - flo <= pi / 2:
        return lo, flo, hi, fhi, None
    # a genuine root varies over a scale delta; a branch change survives refinement
    narrow = delta / 1000
    _, lo, hi, flo, fhi = _root_in_bracket(f, lo, flo, hi, fhi, narrow, narrow)
    jump = (fhi - flo) / pi
    if jump >= arb("1.5"):
        return lo, flo, hi, fhi, jump
    return lo, flo, hi, fhi, None


def _stage0(spec: LFunctionSpec, n: int, config: SolverConfig, ctx: PrecisionContext, y_seed: arb | None = None):
    """Bracket around the seed and root-find at delta0.  Returns (y, lhs, y_seed)."""
    with ctx.working():
        delta = arb(config.delta0)
    f = _Lhs(spec, n, delta, ctx)
    if y_seed is None:
        y_seed = seed(spec, n, ctx)
    w0 = _bracket_halfwidth(spec, n, y_seed, config, ctx)
    with ctx.working():
        limit = w0 * 2 ** config.max_widenings
        lo, hi = y_seed - w0, y_seed + w0
        flo, fhi = f(lo), f(hi)
        w_lo = w_hi = w0
        for _ in range(config.max_widenings):
            if flo < 0 and fhi > 0:
                break
            if not flo < 0:
                w_lo = min(w_lo * 2, limit)
                lo = y_seed - w_lo
                flo = f(lo)
            if not fhi > 0:
                w_hi = min(w_hi * 2, limit)
                hi = y_seed + w_hi
                fhi = f(hi)
        if not (flo < 0 and fhi > 0):
            jump, where, _ = _scan_for_jump(f, lo, hi)
            beside = _root_beside_wrap(f, lo, flo, hi, fhi) if jump <= arb("-1.5") else None
            if beside is None:
                found = _reduced_fallback(spec, n, delta, ctx, y_seed, w0, f, config)
                if found is not None:
                    return found
                if abs(jump) >= arb("1.5"):
                    raise NoSolution(
                        f"no solution for n={n}: LHS jumps by {float(abs(jump)):.3f} pi near y={float(where):.6f}",
                        n=n,
                        jump=abs(jump),
                        location=where,
                    )
                raise ConvergenceError(f"no sign change around the seed for n={n} (bracketing miss)")
            lo, flo, hi, fhi = beside
        if config.multiroot_check:
            _multiroot_check(f, lo, hi, n)
        switch = arb(config.bisect_width)
        lo0, flo0, hi0, fhi0 = lo, flo, hi, fhi
        lo, flo, hi, fhi, jump = _jump_or_root(f, lo, flo, hi, fhi, switch, delta)
        if jump is not None:
            beside = _root_beside_wrap(f, lo0, flo0, lo, flo) or _root_beside_wrap(f, hi, fhi, hi0, fhi0)
            if beside is not None:
                lo, flo, hi, fhi, jump = _jump_or_root(f, *beside, switch, delta)
        if jump is not None:
            found = _reduced_fallback(spec, n, delta, ctx, y_seed, w0, f, config)
            if found is not None:
                return found
            where = (lo + hi) / 2
            raise NoSolution(
                f"no solution for n={n}: LHS jumps by {float(jump):.3f} pi near y={float(where):.6f}",
                n=n,
                jump=jump,
                location=where,
            )
        tol = delta**2 / 100
        y, lo, hi, flo, fhi = _root_in_bracket(f, lo, flo, hi, fhi, switch, tol)
        return mid(y), f.evals, y_seed


def _reduced_fallback(spec: LFunctionSpec, n: int, delta: arb, ctx: PrecisionContext, y_seed: arb,
                      w0: arb, f: _Lhs, config: SolverConfig):
    """Root of the principal equation hidden between two branch wraps, or None.

    A bad Gram point lifts the principal LHS by 2 pi over a plateau that can end
    just before the zero.  The LHS reduced mod 2 pi has no such plateaus; its
    upward crossings nearest the seed are tried, and one is accepted only where
    the unreduced LHS vanishes too.
    """
    g = _Lhs(spec, n, delta, ctx, reduce=True)
    switch = arb(config.bisect_width)
    with ctx.working():
        span = 4 * w0
        points = 64
        ys = [y_seed - span + 2 * span * arb(i) / points for i in range(points + 1)]
        vals = [g(y) for y in ys]
        cands = [i for i in range(points) if vals[i] < 0 and vals[i + 1] > 0]
        cands.sort(key=lambda i: abs((ys[i] + ys[i + 1]) / 2 - y_seed))
        for i in cands:
            lo, flo, hi, fhi, jump = _jump_or_root(g, ys[i], vals[i], ys[i + 1], vals[i + 1], switch, delta)
            if jump is not None:
                continue
            y, lo, hi, flo, fhi = _root_in_bracket(g, lo, flo, hi, fhi, switch, delta**2 / 100)
            if abs(f(mid(y))) < arb.pi() / 2:
                log.debug("n=%d solved between branch wraps at y=%s", n, mid(y))
                return mid(y), f.evals + g.evals, y_seed
    if n < 1 or not y_seed > 0:
        return None
    bracket = _count_bracket(spec, n, y_seed, w0, delta, ctx)
    if bracket is None:
        return None
    lo, hi = bracket
    with ctx.working():
        flo, fhi = g(lo), g(hi)
        if not (flo < 0 and fhi > 0):
            return None
        y, lo, hi, flo, fhi = _root_in_bracket(g, lo, flo, hi, fhi, switch, delta**2 / 100)
        if abs(f(mid(y))) < arb.pi() / 2:
            log.debug("n=%d solved inside a counting bracket at y=%s", n, mid(y))
            return mid(y), f.evals + g.evals, y_seed
    return None


def _count_bracket(spec: LFunctionSpec, n: int, y_seed: arb, w0: arb, delta: arb, ctx: PrecisionContext):
    """Interval holding zero n and no other, from the argument-principle count.

    Close pairs defeat any fixed sampling grid; the integer count does not.
    Endpoints stay 20 delta clear of the zero so the reduced LHS has settled
    to its plateau values there.
    """
    def count(t):
        try:
            return count_zeros(spec, t, "strip", ctx)
        except OnZeroError:
            return count(t + delta)

    with ctx.working():
        step = 2 * w0
        lo = y_seed - step
        hi = y_seed + step
        for _ in range(60):
            if lo > delta and count(lo) < n:
                break
            lo = max(lo - step, delta)
        else:
            return None
        for _ in range(60):
            if count(hi) >= n:
                break
            hi += step
        else:
            return None
        while hi - lo > 20 * delta:
            m = (lo + hi) / 2
            if count(m) < n:
                lo = m
            else:
                hi = m
        a, b = lo - 20 * delta, hi + 20 * delta
        if not a > 0 or count(a) != n - 1 or count(b) != n:
            return None
        return mid(a), mid(b)


def _multiroot_check(f: Callable, lo: arb, hi: arb, n: int, points: int = 16):
    ys = [lo + (hi - lo) * arb(i) / points for i in range(points + 1)]
    vals = [f(y) for y in ys]
    changes = sum(1 for a, b in zip(vals, vals[1:]) if (a < 0) != (b < 0))
    if changes > 1:
        warnings.warn(f"{changes} sign changes in the bracket for n={n}", MultiRootWarning, stacklevel=3)


def _stage_precision(config: SolverConfig, m: int, delta_exp: float, y: arb) -> int:
    """Digits for stage m: the schedule value, floored by what delta_m needs."""
    need = min(2 * delta_exp, config.residual_exponent + 5)
    mag = max(0.0, math.log10(abs(float(y)) + 1))
    return int(max(config.initial_precision + m * config.precision_increment, math.ceil(need + mag + 5)))


def _residual(spec: LFunctionSpec, x: arb, y: arb, ctx: PrecisionContext) -> arb:
    L = evaluate(spec, _point(x, y, ctx), ctx)
    with ctx.working():
        return mid(abs(L))


def solve_zero(
    spec: LFunctionSpec,
    n: int,
    config: SolverConfig | None = None,
    ctx_policy: PrecisionContext | None = None,
) -> ZeroRecord:
    """Locate the on-line zero with label n.

    Raises NoSolution when the equation has no solution for n (the left-hand
    side jumps across the target by a branch change) and PrecisionExhausted
    when the schedule ends before the residual target is met.
    """
    config = config or SolverConfig()
    guard = (ctx_policy or DEFAULT_CTX).guard_digits
    n = int(n)
    c_x = _q(spec.critical_x)

    ctx0 = PrecisionContext(config.initial_precision, guard)
    y, evals, y_seed = _stage0(spec, n, config, ctx0)
    log.debug("n=%d stage 0 y=%s (%d evaluations)", n, y, evals)
    history = [y]
    e0 = -config.delta0_log10
    step = math.log10(config.delta_divisor)
    target_exp = config.residual_exponent
    final_delta = None

    for m in range(1, config.max_iterations + 1):
        if final_delta is None:
            delta_exp = e0 + m * step
        else:
            delta_exp = final_delta
        digits = _stage_precision(config, m, delta_exp, y)
        ctx = PrecisionContext(digits, guard)
        with ctx.working():
            delta = arb(10) ** (-arb(delta_exp)) if delta_exp != int(delta_exp) else arb(10) ** (-int(delta_exp))
            delta = mid(delta)
            f = _Lhs(spec, n, delta, ctx, reduce=True)
            # previous iterate is off by about delta_{m-1}**2; floats would underflow here
            h = 4 * arb(10) ** (-arb(min(2 * (delta_exp - step), delta_exp)))
            limit = _bracket_halfwidth(spec, n, y, config, ctx0)
            y_c = mid(y)
            while True:
                lo, hi = y_c - h, y_c + h
                flo, fhi = f(lo), f(hi)
                if flo < 0 and fhi > 0:
                    break
                if h > limit or h.is_zero():
                    raise ConvergenceError(f"lost the root of n={n} while shrinking delta")
                h = h * 10
            tol = arb(10) ** (-int(min(2 * delta_exp + 1, target_exp + 8, digits - 3)))
            y_new, lo, hi, flo, fhi = _root_in_bracket(f, lo, flo, hi, fhi, delta, tol)
            y_new = mid(y_new)
        evals += f.evals
        history.append(y_new)
        y = y_new
        res = _residual(spec, c_x, y, ctx)
        with ctx.working():
            tgt = arb(10) ** (-target_exp)
            if res <= tgt:
                shifted = _residual(spec, c_x + delta, y, ctx)
                if shifted <= tgt:
                    verified = agreeing_digits(history[-1], history[-2]) if len(history) > 1 else 0
                    return ZeroRecord(
                        n=n,
                        x=c_x,
                        y=ctx.finish(y),
                        residual=res,
                        verified_digits=min(verified, digits),
                        iterations=m + 1,
                        residual_shifted=shifted,
                        delta_final=delta,
                        precision_digits=digits,
                        seed=y_seed,
                    )
                # root is good; finish with one stage at a delta small enough for the shifted residual
                slope = shifted / delta
                lg = float(mid(slope.log() / arb(10).log())) if slope > 0 else 0.0
                final_delta = max(delta_exp + 1, target_exp + max(lg, 0.0) + 2)
    raise PrecisionExhausted(f"n={n}: residual target 1e-{target_exp} not reached in {config.max_iterations} stages")


def calibrate_n0(spec: LFunctionSpec, T0="0.1", ctx: PrecisionContext = DEFAULT_CTX) -> int:
    """Label shift making N0(T0) = 0 just above the real axis, so the first positive zero is n = 1."""
    raw = counting_line(spec.with_n0(0), T0, ctx)
    with ctx.working():
        return -int(round(float(raw)))


def solve_many(spec: LFunctionSpec, ns: Iterable[int], config: SolverConfig | None = None, workers: int = 1,
               ctx_policy: PrecisionContext | None = None, on_error: str = "raise") -> list:
    """solve_zero over many labels, optionally in worker processes; results in label order.

    With on_error="keep" failures are returned as the exception instance.
    """
    ns = list(ns)
    config = config or SolverConfig()
    guard = (ctx_policy or DEFAULT_CTX).guard_digits
    jobs = [(spec, n, config, guard, on_error) for n in ns]
    if workers <= 1:
        out = [_solve_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            out = list(pool.map(_solve_job, jobs, chunksize=max(1, len(jobs) // (8 * workers))))
    return [_thaw(o) for o in out]


def _solve_job(job):
    spec, n, config, guard, on_error = job
    try:
        rec = solve_zero(spec, n, config, PrecisionContext(config.initial_precision, guard))
    except (NoSolution, ConvergenceError) as exc:
        if on_error == "raise":
            raise
        extra = {}
        if isinstance(exc, NoSolution):
            extra = {k: None if v is None else to_decimal(v, 20) for k, v in (("jump", exc.jump), ("location", exc.location))}
        return ("error", type(exc).__name__, str(exc), n, extra)
    return ("ok", _freeze(rec))


def _freeze(rec: ZeroRecord) -> dict:
    """Picklable form of a record (decimal strings at full precision)."""
    d = {}
    for k, v in rec.__dict__.items():
        d[k] = ("arb", to_decimal(v, rec.precision_digits + 10)) if isinstance(v, arb) else v
    return d


def _thaw(obj):
    if obj[0] == "error":
        _, name, msg, n, extra = obj
        cls = {"NoSolution": NoSolution, "PrecisionExhausted": PrecisionExhausted}.get(name, ConvergenceError)
        if cls is not NoSolution:
            return cls(msg)
        with PrecisionContext(20).working():
            vals = {k: None if v is None else from_decimal(v) for k, v in extra.items()}
        return NoSolution(msg, n=n, **vals)
    d = obj[1]
    ctx = PrecisionContext(max(15, d["precision_digits"] + 10))
    with ctx.working():
        vals = {k: (from_decimal(v[1]) if isinstance(v, tuple) and v and v[0] == "arb" else v) for k, v in d.items()}
    return ZeroRecord(**vals)


# ---------------------------------------------------------------------------
# counting


def counting_line(spec: LFunctionSpec, T, ctx: PrecisionContext = DEFAULT_CTX, lower: bool = False) -> arb:
    """N0(T) from the equation itself: theta(T)/pi + arg L(c + iT)/pi + constants.

    With lower=True counts the zeros with -T < y < 0 (Dirichlet and DH labels n <= 0).
    """
    with ctx.working():
        T = mid(to_real(T))
        if not T > 0:
            raise ValueError("T must be positive")
        c = _q(spec.critical_x)
        yy = -T if lower else T
        z = acb(c, yy)
    L = evaluate(spec, z, ctx)
    with ctx.working():
        if abs(L) < arb(10) ** (-(ctx.precision_digits - 5)):
            raise OnZeroError(f"T = {T} is the ordinate of a zero")
        pi = arb.pi()
        pc = phase_constant(spec, ctx)
        th = theta_smooth(spec.theta_kind, T, ctx)
        off = _q(spec.rhs_offset)
        if not lower:
            val = (th + principal_arg(L) + pc) / pi + off - arb(1) / 2 + spec.n0
        else:
            val = (th - principal_arg(L) - pc) / pi - off + arb(1) / 2 - spec.n0
        return ctx.finish(val)


def _strip_abscissa(spec: LFunctionSpec) -> arb:
    """Abscissa right of the strip where Re L > 0, so arg L is principal there."""
    return _q(spec.critical_x) + (arb(5) / 2 if spec.family != "zeta" else arb(3) / 2)


def _track_arg(spec: LFunctionSpec, z0: acb, z1: acb, ctx: PrecisionContext, pieces: int = 8, max_depth: int = 24) -> arb:
    """Continuous change of arg L along the segment z0 -> z1."""
    with ctx.working():
        pts = [z0 + (z1 - z0) * arb(i) / pieces for i in range(pieces + 1)]
    vals = [evaluate(spec, p, ctx) for p in pts]
    total = arb(0)
    for i in range(pieces):
        total += _track_piece(spec, pts[i], vals[i], pts[i + 1], vals[i + 1], ctx, max_depth)
    return total


def _track_piece(spec, za, La, zb, Lb, ctx, depth):
    with ctx.working():
        if La.is_zero() or Lb.is_zero():
            raise OnZeroError("counting path passes through a zero")
        d = principal_arg(Lb / La)
        if abs(d) <= arb("0.5") or depth == 0:
            return d
        zm = (za + zb) / 2
    Lm = evaluate(spec, zm, ctx)
    return _track_piece(spec, za, La, zm, Lm, ctx, depth - 1) + _track_piece(spec, zm, Lm, zb, Lb, ctx, depth - 1)


def counting_strip(spec: LFunctionSpec, T, ctx: PrecisionContext = DEFAULT_CTX, lower: bool = False) -> arb:
    """N(T) from the argument principle: continuous arg L along the edge of the strip."""
    with ctx.working():
        T = mid(to_real(T))
        if not T > 0:
            raise ValueError("T must be positive")
        c = _q(spec.critical_x)
        s0 = _strip_abscissa(spec)
        yy = -T if lower else T
        top_c, top_s = acb(c, yy), acb(s0, yy)
    Lc = evaluate(spec, top_c, ctx)
    with ctx.working():
        if abs(Lc) < arb(10) ** (-(ctx.precision_digits - 5)):
            raise OnZeroError(f"T = {T} is the ordinate of a zero")
    pi = arb.pi()
    th = theta_smooth(spec.theta_kind, T, ctx)
    L_s = evaluate(spec, top_s, ctx)
    if spec.family == "zeta":
        # arg zeta(2) = 0 and zeta stays in the right half-plane on Re z = 2
        with ctx.working():
            arg_top = principal_arg(L_s) + _track_arg(spec, top_s, top_c, ctx)
            return ctx.finish(th / pi + 1 + arg_top / pi)
    with ctx.working():
        base = acb(c)
        base_s = acb(s0)
    L_base_s = evaluate(spec, base_s, ctx)
    L_base = evaluate(spec, base, ctx)
    with ctx.working():
        change = _track_arg(spec, base, base_s, ctx)
        change += principal_arg(L_s) - principal_arg(L_base_s)
        change += _track_arg(spec, top_s, top_c, ctx)
        sign = -1 if lower else 1
        return ctx.finish(th / pi + sign * change / pi)


def count_zeros(spec: LFunctionSpec, T, method: str = "line", ctx: PrecisionContext = DEFAULT_CTX) -> int:
    """Integer zero count below T from counting_line or counting_strip."""
    fn = counting_line if method == "line" else counting_strip
    return int(round(float(fn(spec, T, ctx))))


# ---------------------------------------------------------------------------
# gaps and off-line zeros


def gap_scan(spec: LFunctionSpec, n_lo: int, n_hi: int, config: SolverConfig | None = None,
             ctx: PrecisionContext | None = None) -> list:
    """Labels in [n_lo, n_hi] for which the equation has no solution."""
    if n_lo > n_hi:
        raise ValueError("n_lo must not exceed n_hi")
    config = config or SolverConfig()
    ctx = ctx or PrecisionContext(config.initial_precision)
    gaps = []
    for n in range(int(n_lo), int(n_hi) + 1):
        try:
            _stage0(spec, n, config, ctx)
        except NoSolution:
            gaps.append(n)
    return gaps


def find_offline_zero(
    spec: LFunctionSpec,
    x0,
    y0,
    radius=0.1,
    ctx: PrecisionContext = DEFAULT_CTX,
    residual_target=None,
    max_iterations: int = 100,
    phase_delta="1e-6",
) -> ZeroRecord:
    """Complex secant search for a zero of L near x0 + i y0.

    The record carries (theta + theta')/pi, evaluated with both points shifted
    by phase_delta to the right, its nearest odd integer and the defect.
    """
    with ctx.working():
        z0 = acb(mid(to_real(x0)), mid(to_real(y0)))
        start = z0
        rad = mid(to_real(radius))
        target = arb(10) ** (-(ctx.precision_digits - 5)) if residual_target is None else mid(to_real(residual_target))
        z1 = z0 + acb(arb("1e-4"), arb("1e-4"))
    f0 = evaluate(spec, z0, ctx)
    f1 = evaluate(spec, z1, ctx)
    it = 0
    for it in range(1, max_iterations + 1):
        with ctx.working():
            denom = f1 - f0
            if denom.is_zero():
                break
            z2 = mid(z1 - f1 * (z1 - z0) / denom)
            if abs(z2 - start) > rad:
                raise ConvergenceError("secant search left the search radius")
        f2 = evaluate(spec, z2, ctx)
        z0, f0, z1, f1 = z1, f1, z2, f2
        with ctx.working():
            if abs(f1) <= target:
                break
    with ctx.working():
        res = mid(abs(f1))
        if not res <= target:
            raise ConvergenceError(f"no zero within radius (|L| = {float(res):.3e})")
        x, y = mid(z1.real), mid(z1.imag)
    ps = phase_sum(spec, x, y, phase_delta, ctx)
    with ctx.working():
        v = ps / arb.pi()
        odd = 2 * int(round((float(v) - 1) / 2)) + 1
        defect = mid(abs(v - odd))
        return ZeroRecord(
            n=None,
            x=ctx.finish(x),
            y=ctx.finish(y),
            residual=res,
            verified_digits=0,
            iterations=it,
            precision_digits=ctx.precision_digits,
            phase_sum=ctx.finish(v),
            odd_integer=odd,
            phase_defect=defect,
        )


def offline_candidates(spec: LFunctionSpec, gaps: list, ctx: PrecisionContext = DEFAULT_CTX,
                       config: SolverConfig | None = None) -> list:
    """Starting points for off-line searches: one per gap pair, at the jump location."""
    config = config or SolverConfig()
    ctx0 = PrecisionContext(config.initial_precision)
    out = []
    seen = set()
    for n in gaps:
        if n - 1 in seen:
            continue
        seen.add(n)
        try:
            _stage0(spec, n, config, ctx0)
        except NoSolution as exc:
            out.append((n, exc.location))
    return out

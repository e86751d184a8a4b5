"""Evaluators for zeta, Hurwitz zeta, Dirichlet L, the weight-12 modular L and
the Davenport-Heilbronn function, with the polar form of the completed functions.

Zeta and Hurwitz zeta come from Arb's Euler-Maclaurin implementation.  The
other functions are assembled here from those and from incomplete gamma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache

from flint import acb, arb

from .characters import DirichletCharacter, RamanujanCoefficients, build_character, gauss_sum, ramanujan_tau
from .errors import ConvergenceError, DomainError, PoleError, ZeroModulusError
from .numerics import PrecisionContext, evaluate_accurately, mid, principal_arg, to_complex, to_real
from .special import ThetaKind

DEFAULT_CTX = PrecisionContext()

FAMILIES = ("zeta", "dirichlet", "modular12", "dh")


@dataclass(frozen=True)
class LFunctionSpec:
    """One L-function together with the constants of its zero equation.

    The on-line zero equation reads
        theta_kind(y) + arg L(critical_x + delta + i y) + phase_constant
            = (n - n0 - rhs_offset) * pi.
    """

    family: str
    character: DirichletCharacter | None = None
    critical_x: Fraction = Fraction(1, 2)
    theta_kind: ThetaKind = field(default_factory=ThetaKind.riemann_siegel)
    rhs_offset: Fraction = Fraction(1, 2)
    n0: int = 0
    weight: int = 12

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if (self.critical_x == 6) != (self.family == "modular12"):
            raise ValueError("critical_x must be 6 exactly for the modular family")
        if self.family == "dirichlet" and self.character is None:
            raise ValueError("Dirichlet family needs a character")

    @property
    def name(self) -> str:
        if self.family == "dirichlet":
            return f"dirichlet(k={self.character.modulus},j={self.character.index})"
        return self.family

    @property
    def reflection(self) -> Fraction:
        """x -> reflection - x maps the strip onto itself."""
        return Fraction(self.weight) if self.family == "modular12" else Fraction(1)

    @property
    def coeffs(self) -> RamanujanCoefficients | None:
        return ramanujan_tau(200) if self.family == "modular12" else None

    def with_n0(self, n0: int) -> "LFunctionSpec":
        return replace(self, n0=int(n0))


def zeta_spec() -> LFunctionSpec:
    return LFunctionSpec("zeta", None, Fraction(1, 2), ThetaKind.riemann_siegel(), Fraction(1, 2), 1)


def dirichlet_spec(chi: DirichletCharacter | tuple, n0: int | None = 0) -> LFunctionSpec:
    """Spec for L(z, chi).  Pass n0=None to calibrate the label shift automatically."""
    if isinstance(chi, tuple):
        chi = build_character(*chi)
    a = chi.order_a
    spec = LFunctionSpec(
        "dirichlet", chi, Fraction(1, 2), ThetaKind.dirichlet(chi.modulus, a), Fraction(1, 2) + Fraction(a, 4), 0
    )
    if n0 is None:
        from .solver import calibrate_n0

        return spec.with_n0(calibrate_n0(spec))
    return spec.with_n0(n0)


def modular12_spec() -> LFunctionSpec:
    k = 12
    off = Fraction(1 + (-1) ** (k // 2), 4)
    return LFunctionSpec("modular12", None, Fraction(6), ThetaKind.modular(k), off, 0, k)


def dh_spec() -> LFunctionSpec:
    return LFunctionSpec("dh", None, Fraction(1, 2), ThetaKind.davenport_heilbronn(), Fraction(1, 2), 0)


def spec_for(family: str, k: int | None = None, j: int | None = None) -> LFunctionSpec:
    family = family.lower().replace("-", "").replace("_", "")
    if family == "zeta":
        return zeta_spec()
    if family == "dirichlet":
        if k is None or j is None:
            raise ValueError("dirichlet family needs k and j")
        chi = build_character(k, j)
        pinned = chi.modulus == 1 or (chi.modulus, chi.index) in {(7, 2), (7, 3), (5, 2), (3, 2)}
        return dirichlet_spec(chi, 0 if pinned and chi.modulus > 1 else None)
    if family in ("modular12", "modular", "ramanujan"):
        return modular12_spec()
    if family in ("dh", "davenportheilbronn"):
        return dh_spec()
    raise ValueError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# basic evaluators


def _is_one(z: acb) -> bool:
    return z.imag.is_zero() and z.real == 1


def zeta(z, ctx: PrecisionContext = DEFAULT_CTX) -> acb:
    """Riemann zeta function."""
    with ctx.working():
        z = mid(to_complex(z))
        if _is_one(z):
            raise PoleError("zeta has a pole at z = 1")
    return ctx.finish(evaluate_accurately(lambda c: z.zeta(), ctx, floor=1))


def hurwitz_zeta(z, q, ctx: PrecisionContext = DEFAULT_CTX) -> acb:
    """Hurwitz zeta sum_{n>=0} (n + q)^-z for 0 < q <= 1."""
    with ctx.working():
        z = mid(to_complex(z))
        q = mid(to_real(q))
        if not (q > 0 and q <= 1):
            raise ValueError("Hurwitz parameter must satisfy 0 < q <= 1")
        if _is_one(z):
            raise PoleError("Hurwitz zeta has a pole at z = 1")
    return ctx.finish(evaluate_accurately(lambda c: z.zeta(acb(q)), ctx, floor=1))


def _character_sum(z: acb, k: int, weights: dict) -> acb:
    """k^-z sum_m w_m zeta_H(z, m/k) at the current precision."""
    total = acb(0)
    for m, w in weights.items():
        total += w * z.zeta(acb(arb(m) / k))
    return acb(k) ** (-z) * total


def dirichlet_l(z, chi: DirichletCharacter, ctx: PrecisionContext = DEFAULT_CTX) -> acb:
    """L(z, chi) = k^-z sum_{m=1}^{k} chi(m) zeta_H(z, m/k)."""
    with ctx.working():
        z = mid(to_complex(z))
        if chi.modulus == 1:
            if _is_one(z):
                raise PoleError("L(z, chi_1) = zeta(z) has a pole at z = 1")
            return zeta(z, ctx)
        if chi.is_principal and _is_one(z):
            raise PoleError("principal L-function has a pole at z = 1")

    def value(c):
        weights = {m: chi.value(m, c) for m in range(1, chi.modulus) if chi.exponent(m) is not None}
        return _character_sum(z, chi.modulus, weights)

    return ctx.finish(evaluate_accurately(value, ctx, floor=1))


def kappa(ctx: PrecisionContext = DEFAULT_CTX) -> arb:
    """(sqrt(10 - 2 sqrt 5) - 2)/(sqrt 5 - 1)."""
    with ctx.working():
        s5 = arb(5).sqrt()
        return ctx.finish(((10 - 2 * s5).sqrt() - 2) / (s5 - 1))


@lru_cache(maxsize=1)
def _dh_characters():
    chi = build_character(5, 2)
    return chi, chi.conjugate()


def davenport_heilbronn(z, ctx: PrecisionContext = DEFAULT_CTX) -> acb:
    """D(z) = (1 - i kappa)/2 L(z, chi_{5,2}) + (1 + i kappa)/2 L(z, conj chi_{5,2})."""
    chi, chib = _dh_characters()
    with ctx.working():
        z = mid(to_complex(z))

    def value(c):
        kap = kappa(c.raised(5))
        c1 = (1 - acb(0, 1) * kap) / 2
        c2 = (1 + acb(0, 1) * kap) / 2
        weights = {m: c1 * chi.value(m, c) + c2 * chib.value(m, c) for m in range(1, 5)}
        return _character_sum(z, 5, weights)

    return ctx.finish(evaluate_accurately(value, ctx, floor=1))


# ---------------------------------------------------------------------------
# modular L-function of the discriminant


def _modular_terms_needed(digits: int) -> int:
    """Smallest N with N^5.5 exp(-2 pi N) below 10^-digits."""
    target = digits * math.log(10)
    n = 1
    while 2 * math.pi * n - 5.5 * math.log(n) < target + 5:
        n += 1
    return n + 1


def modular_completed(z, coeffs: RamanujanCoefficients | None = None, ctx: PrecisionContext = DEFAULT_CTX) -> acb:
    """Lambda(z) = (2 pi)^-z Gamma(z) L_Delta(z) from the incomplete-gamma split."""
    return _modular(z, coeffs, ctx)[0]


def modular_l(z, coeffs: RamanujanCoefficients | None = None, ctx: PrecisionContext = DEFAULT_CTX) -> acb:
    """L_Delta(z) = sum tau(n) n^-z continued to the whole plane."""
    return _modular(z, coeffs, ctx)[1]


def _modular(z, coeffs, ctx):
    k = 12
    with ctx.working():
        z = mid(to_complex(z))
    y = abs(float(z.imag.mid()))
    # Lambda decays like exp(-pi |y| / 2) while the split terms stay O(1)
    extra = int(math.ceil(math.pi * y / 2 / math.log(10))) + 10
    for attempt in range(4):
        digits = ctx.working_digits + extra
        N = _modular_terms_needed(digits)
        table = coeffs if coeffs is not None else ramanujan_tau(max(N, 50))
        if N > len(table):
            raise ConvergenceError(f"modular L needs {N} coefficients, table has {len(table)}")
        with ctx.working(extra):
            two_pi = 2 * arb.pi()
            zc = k - z
            lam = acb(0)
            for n in range(1, N + 1):
                t = table[n]
                if t == 0:
                    continue
                r = two_pi * n
                ar = acb(r)
                lam += t * (ar ** (-z) * ar.gamma_upper(z) + ar ** (-zc) * ar.gamma_upper(zc))
            L = two_pi ** z * lam * z.rgamma()
            # absolute accuracy check on L (Lambda may be tiny near a zero)
            tol = arb(10) ** (-ctx.precision_digits - 2)
            scale = max(arb(1), abs(L.mid()))
            if L.real.rad() + L.imag.rad() < tol * scale:
                return ctx.finish(lam), ctx.finish(L)
        extra = 2 * extra + 10
    raise ConvergenceError("modular L did not reach the requested accuracy")


# ---------------------------------------------------------------------------
# generic dispatch


def evaluate(spec: LFunctionSpec, z, ctx: PrecisionContext = DEFAULT_CTX) -> acb:
    """Value of the L-function selected by spec at z."""
    if spec.family == "zeta":
        return zeta(z, ctx)
    if spec.family == "dirichlet":
        return dirichlet_l(z, spec.character, ctx)
    if spec.family == "modular12":
        return modular_l(z, None, ctx)
    return davenport_heilbronn(z, ctx)


def _gamma_factor_log(spec: LFunctionSpec, z: acb) -> acb:
    """log of the factor turning L into the completed function (at current precision)."""
    pi = arb.pi()
    if spec.family == "zeta":
        return (z / 2).lgamma() - z / 2 * pi.log()
    if spec.family == "dirichlet":
        k, a = spec.character.modulus, spec.character.order_a
        return ((z + a) / 2).lgamma() + (z + a) / 2 * (arb(k) / pi).log()
    if spec.family == "modular12":
        return z.lgamma() - z * (2 * pi).log()
    return ((1 + z) / 2).lgamma() - z / 2 * (pi / 5).log()


def completed(spec: LFunctionSpec, z, ctx: PrecisionContext = DEFAULT_CTX) -> acb:
    """Completed function xi (zeta, DH), xi(z, chi) (Dirichlet) or Lambda (modular)."""
    with ctx.working():
        z = mid(to_complex(z))
    if spec.family == "modular12":
        return modular_completed(z, None, ctx)
    L = evaluate(spec, z, ctx.raised(5))
    with ctx.working(5):
        val = _gamma_factor_log(spec, z).exp() * L
        if spec.family == "dirichlet":
            chi = spec.character
            G = gauss_sum(chi, ctx.raised(5))
            a = chi.order_a
            phase = acb(0, 1) ** (arb(a) / 2) * arb(chi.modulus) ** (arb(1) / 4) / G.sqrt()
            val = phase * val
        return ctx.finish(val)


def functional_equation_residual(spec: LFunctionSpec, z, ctx: PrecisionContext = DEFAULT_CTX) -> arb:
    """Relative defect of the reflection symmetry of the completed function at z."""
    with ctx.working():
        z = mid(to_complex(z))
        refl = arb(spec.reflection.numerator) / spec.reflection.denominator
    left = completed(spec, z, ctx)
    if spec.family == "dirichlet":
        # xi(z, chi) = conj(xi(1 - conj z, chi))
        with ctx.working():
            zr = acb(refl - z.real, z.imag)
        right = completed(spec, zr, ctx).conjugate()
    else:
        with ctx.working():
            zr = refl - z
        right = completed(spec, zr, ctx)
    with ctx.working():
        scale = max(abs(left), abs(right))
        return ctx.finish(abs(left - right) / scale)


# ---------------------------------------------------------------------------
# polar form


@dataclass(frozen=True)
class PolarDecomposition:
    modulus_A: arb
    theta: arb
    theta_prime: arb


def phase_constant(spec: LFunctionSpec, ctx: PrecisionContext = DEFAULT_CTX) -> arb:
    """Constant added to the equation phase: -(1/2) arg G(chi) for Dirichlet, 0 otherwise."""
    if spec.family != "dirichlet" or spec.character.modulus == 1:
        with ctx.working():
            return arb(0)
    G = gauss_sum(spec.character, ctx)
    with ctx.working():
        return ctx.finish(-principal_arg(G) / 2)


def _theta_at(spec: LFunctionSpec, x: arb, y: arb, ctx: PrecisionContext) -> tuple[arb, arb]:
    """(theta, A) at x + i y."""
    with ctx.working():
        z = acb(x, y)
    L = evaluate(spec, z, ctx)
    with ctx.working():
        if L.is_zero() or abs(L) < arb(10) ** (-ctx.working_digits):
            raise ZeroModulusError(f"|L| underflows at {z}")
        logfac = _gamma_factor_log(spec, z)
        theta = logfac.imag + principal_arg(L)
        A = logfac.real.exp() * abs(L)
        if spec.family == "dirichlet" and spec.character.modulus > 1:
            a = spec.character.order_a
            theta += phase_constant(spec, ctx) + arb.pi() * a / 4
            A *= arb(spec.character.modulus) ** (arb(1) / 4) / abs(gauss_sum(spec.character, ctx)).sqrt()
        return ctx.finish(theta), ctx.finish(A)


def polar(spec: LFunctionSpec, x, y, ctx: PrecisionContext = DEFAULT_CTX) -> PolarDecomposition:
    """A = |completed function|, its phase theta and the reflected phase theta'."""
    with ctx.working():
        x = mid(to_real(x))
        y = mid(to_real(y))
        refl = arb(spec.reflection.numerator) / spec.reflection.denominator
        xr = refl - x
    theta, A = _theta_at(spec, x, y, ctx)
    theta_p, _ = _theta_at(spec, xr, y, ctx)
    return PolarDecomposition(A, theta, theta_p)


def trivial_zero_phase(x, eps=None, ctx: PrecisionContext = DEFAULT_CTX) -> arb:
    """(1/pi)[Im logGamma(z/2) + Arg zeta(z)] + 2k at z = x - i eps on the negative axis.

    Arg zeta + 2 pi k is held at its value on (-2, 0), where zeta < 0 and the
    principal Arg from below is pi.  The result is a staircase with unit jumps
    at the trivial zeros -2, -4, ...
    """
    with ctx.working():
        x = mid(to_real(x))
        if not x < 0:
            raise DomainError("the trivial-zero phase is defined for x < 0")
        eps = arb("1e-6") if eps is None else mid(to_real(eps))
        z = acb(x, -eps)
        ref = principal_arg(acb(-1, -eps).zeta())
        val = ((z / 2).lgamma().imag + ref) / arb.pi()
        return ctx.finish(val)


def phase_sum(spec: LFunctionSpec, x, y, delta=None, ctx: PrecisionContext = DEFAULT_CTX) -> arb:
    """theta(x + delta, y) + theta(reflection - x + delta, y), both approached from the same side.

    At an exact zero the two-sided value is ill-defined (the arg of the
    L-value jumps by pi across the zero); shifting both points by the same
    small positive delta reproduces the one-sided limit.
    """
    with ctx.working():
        x = mid(to_real(x))
        y = mid(to_real(y))
        delta = arb("1e-6") if delta is None else mid(to_real(delta))
        refl = arb(spec.reflection.numerator) / spec.reflection.denominator
        x1, x2 = x + delta, refl - x + delta
    t1, _ = _theta_at(spec, x1, y, ctx)
    t2, _ = _theta_at(spec, x2, y, ctx)
    with ctx.working():
        return ctx.finish(t1 + t2)

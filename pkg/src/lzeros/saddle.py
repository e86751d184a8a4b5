"""Saddle-point approximation of zeta from the Bose-type integral.

The integrand u^{z-1} / (e^{u + mu} - 1) has saddle points
    s_k = z - 1 + w_k,   w_k = W_k((1 - z) e^{1 - z - mu}),
one per Lambert-W branch.  Summing exp(f(s_k)) / sqrt(f''(s_k)) over the
branches with Re s_k > 0 and dividing by Stirling's Gamma(z) gives the
per-branch terms exp[(z-1) log(1 + w_k/(z-1)) - w_k - mu - log(w_k + 1)/2].
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass
from typing import Iterable

from flint import acb, arb

from .errors import BranchWindowWarning, ConvergenceError, DomainError, LZerosError, PoleError
from .numerics import PrecisionContext, mid, to_complex, to_real
from .special import lambert_w

log = logging.getLogger(__name__)

DEFAULT_CTX = PrecisionContext()
DEFAULT_MU = "1e-30"
TIE_EPS = "1e-20"
EXTRA_BRANCHES = 2

_positive_branch_logged = False


@dataclass(frozen=True)
class SaddleTerm:
    k: int
    s_k: acb | None
    w_k: acb | None
    term_value: acb | None
    admissible: bool
    tie: bool = False
    error: str | None = None


def _mu(mu) -> arb:
    m = mid(to_real(DEFAULT_MU if mu is None else mu))
    if m < 0:
        raise DomainError("mu must be >= 0")
    return m


def _term(z: acb, w: acb, mu: arb) -> acb:
    zm1 = z - 1
    return (zm1 * (1 + w / zm1).log() - w - mu - (w + 1).log() / 2).exp()


def saddle_points(z, mu=None, k_range: Iterable[int] | None = None,
                  ctx: PrecisionContext = DEFAULT_CTX) -> list[SaddleTerm]:
    """One SaddleTerm per branch in k_range (default: the zeta_saddle window).

    Saddles with |Re s_k| below 1e-20 sit on the integration endpoint; they are
    flagged as ties and never admissible.
    """
    with ctx.working():
        z = mid(to_complex(z))
        if z.imag.is_zero() and z.real == 1:
            raise PoleError("the saddle construction is singular at z = 1")
        m = _mu(mu)
        if k_range is None:
            k_range = branch_window(z)
        arg = (1 - z) * (1 - z - m).exp()
        eps = mid(to_real(TIE_EPS))
        out = []
        for k in k_range:
            try:
                w = lambert_w(k, arg, ctx)
            except LZerosError as exc:
                out.append(SaddleTerm(int(k), None, None, None, False, error=str(exc)))
                continue
            s = mid(z - 1 + w)
            tie = bool(abs(s.real) < eps)
            adm = bool(s.real > 0) and not tie
            val = ctx.finish(_term(z, w, m)) if adm else None
            out.append(SaddleTerm(int(k), ctx.finish(s), w, val, adm, tie))
        return out


def branch_window(z) -> range:
    """Branches -ceil(|y| / 2 pi) - 2 .. 0."""
    y = abs(float(mid(to_complex(z)).imag))
    return range(-math.ceil(y / (2 * math.pi)) - EXTRA_BRANCHES, 1)


def admissible_branches(z, mu=None, ctx: PrecisionContext = DEFAULT_CTX) -> list[int]:
    return [t.k for t in saddle_points(z, mu, None, ctx) if t.admissible]


def zeta_saddle(z, mu=None, ctx: PrecisionContext = DEFAULT_CTX) -> acb:
    """Sum of the admissible saddle terms over the default branch window."""
    with ctx.working():
        z = mid(to_complex(z))
        if z.imag < 0:
            return ctx.finish(zeta_saddle(z.conjugate(), mu, ctx).conjugate())
        window = branch_window(z)
        terms = saddle_points(z, mu, window, ctx)
        adm = [t for t in terms if t.admissible]
        if any(t.k == window.start for t in adm):
            warnings.warn(f"admissible saddle at the window edge k = {window.start} for z = {z}",
                          BranchWindowWarning, stacklevel=2)
        _check_positive_branches(z, mu, ctx)
        if not adm:
            raise ConvergenceError(f"no admissible saddle point at z = {z}")
        total = acb(0)
        for t in adm:
            total += t.term_value
        return ctx.finish(total)


def _check_positive_branches(z: acb, mu, ctx: PrecisionContext) -> None:
    global _positive_branch_logged
    pos = [t.k for t in saddle_points(z, mu, range(1, 1 + EXTRA_BRANCHES), ctx) if t.admissible]
    if pos:
        level = logging.DEBUG if _positive_branch_logged else logging.WARNING
        _positive_branch_logged = True
        log.log(level, "branches %s have Re s_k > 0 at z = %s and are not summed", pos, z)


def saddle_residual(z, term: SaddleTerm, mu=None, ctx: PrecisionContext = DEFAULT_CTX) -> arb:
    """|(z - 1)/s - e^{s + mu}/(e^{s + mu} - 1)| at the saddle s of `term`."""
    with ctx.working():
        z = mid(to_complex(z))
        m = _mu(mu)
        s = term.s_k
        e = (s + m).exp()
        return ctx.finish(abs((z - 1) / s - e / (e - 1)))

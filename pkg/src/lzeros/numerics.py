"""Arbitrary-precision arithmetic contract.

Numbers are ``flint.arb`` (real) and ``flint.acb`` (complex) values.  Every
public evaluator drops the ball radius before returning, so callers only see
plain binary floating-point midpoints; correctness is judged by residuals and
by digit agreement when the precision is raised.

Precision is global state inside python-flint.  ``PrecisionContext.working()``
sets it for the duration of a block and restores it afterwards, which makes the
evaluators safe for process-level parallelism but not for threads.
"""

from __future__ import annotations

import math
import re
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from flint import acb, arb, ctx as _flint_ctx, fmpq

from .errors import DomainError

BigReal = arb
BigComplex = acb
RealLike = Union[arb, int, float, str, Fraction]
ComplexLike = Union[acb, arb, int, float, str, Fraction, complex]

LOG2_10 = math.log2(10)
_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(rf"({_NUM})([+-](?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)[ji]")
_IMAG_RE = re.compile(rf"({_NUM}|[+-]?)[ji]")


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision in decimal digits plus internal guard digits."""

    precision_digits: int = 30
    guard_digits: int = 10

    def __post_init__(self):
        if int(self.precision_digits) != self.precision_digits or self.precision_digits < 15:
            raise ValueError("precision_digits must be an integer >= 15")
        if int(self.guard_digits) != self.guard_digits or self.guard_digits < 0:
            raise ValueError("guard_digits must be a non-negative integer")

    @property
    def working_digits(self) -> int:
        return self.precision_digits + self.guard_digits

    @property
    def tolerance(self) -> arb:
        """10^-precision_digits as an exact-ish arb."""
        with self.working():
            return arb(10) ** (-self.precision_digits)

    def with_digits(self, digits: int) -> "PrecisionContext":
        return PrecisionContext(max(15, int(digits)), self.guard_digits)

    def raised(self, extra: int) -> "PrecisionContext":
        return PrecisionContext(self.precision_digits + int(extra), self.guard_digits)

    @contextmanager
    def working(self, extra: int = 0) -> Iterator[None]:
        """Run the block at precision_digits + guard_digits (+ extra)."""
        with _flint_ctx.workdps(self.working_digits + int(extra)):
            yield

    def finish(self, x):
        """Round a result to precision_digits and drop the error radius."""
        x = mid(x)
        with _flint_ctx.workdps(self.precision_digits):
            return mid(+x)


def evaluate_accurately(fn, ctx: "PrecisionContext", floor: int = 0, attempts: int = 6):
    """fn(c) at rising precision until its ball radius is below 10^-(precision_digits+2) * max(|value|, floor).

    fn receives the raised PrecisionContext and runs inside its working
    precision.  floor=0 asks for relative accuracy; floor=1 accepts absolute
    accuracy for values below one (L-values near a zero).  Arb reports
    cancellation in the radius, so extra precision is spent only where digits
    were actually lost.
    """
    extra = 0
    for _ in range(attempts):
        c = ctx.raised(extra)
        with c.working():
            val = fn(c)
            if not val.is_finite():
                return val
            scale = max(abs(val).mid(), arb(floor))
            if val.rad() <= scale * arb(10) ** (-(ctx.precision_digits + 2)):
                return val
        extra = 2 * extra + ctx.guard_digits + 10
    return val


def mid(x):
    """Midpoint of a ball (radius discarded)."""
    if isinstance(x, (arb, acb)):
        return x.mid()
    return x


def to_real(x: RealLike) -> arb:
    """Convert to arb at the current flint precision."""
    if isinstance(x, arb):
        return x
    if isinstance(x, acb):
        if not x.imag.is_zero():
            raise TypeError("complex value where a real one is required")
        return x.real
    if isinstance(x, bool):
        return arb(int(x))
    if isinstance(x, int):
        return arb(x)
    if isinstance(x, Fraction):
        return arb(fmpq(x.numerator, x.denominator))
    if isinstance(x, float):
        return arb(x)
    if isinstance(x, str):
        return arb(x.strip())
    if hasattr(x, "_mpf_") or type(x).__name__ == "mpf":
        return arb(str(x))
    raise TypeError(f"cannot convert {type(x).__name__} to a real number")


def to_complex(z: ComplexLike) -> acb:
    """Convert to acb at the current flint precision."""
    if isinstance(z, acb):
        return z
    if isinstance(z, complex):
        return acb(z.real, z.imag)
    if isinstance(z, (tuple, list)) and len(z) == 2:
        return acb(to_real(z[0]), to_real(z[1]))
    if isinstance(z, str) and z.strip()[-1:] in ("j", "i"):
        t = z.replace(" ", "")
        m = _IMAG_RE.fullmatch(t)
        if m:
            re_s, im_s = "0", m.group(1)
        else:
            m = _COMPLEX_RE.fullmatch(t)
            if not m:
                raise ValueError(f"invalid complex literal {z!r}")
            re_s, im_s = m.group(1), m.group(2)
        im_s = im_s + "1" if im_s in ("+", "-", "") else im_s
        return acb(to_real(re_s), to_real(im_s))
    if hasattr(z, "_mpc_") or type(z).__name__ == "mpc":
        return acb(to_real(z.real), to_real(z.imag))
    return acb(to_real(z))


def real_part(z) -> arb:
    return z.real if isinstance(z, acb) else to_real(z)


def pi() -> arb:
    return arb.pi()


def principal_arg(z: ComplexLike) -> arb:
    """Principal argument in (-pi, pi]; the cut is closed on top."""
    z = mid(to_complex(z))
    if z.real.is_zero() and z.imag.is_zero():
        raise DomainError("argument of zero is undefined")
    return mid(arb.atan2(z.imag, z.real))


def polar_decompose(z: ComplexLike) -> tuple[arb, arb]:
    """Return (|z|, principal_arg(z))."""
    z = mid(to_complex(z))
    if z.real.is_zero() and z.imag.is_zero():
        raise DomainError("polar form of zero is undefined")
    return mid(abs(z)), principal_arg(z)


def serialization_digits(digits: int | None = None) -> int:
    """Decimal digits that reproduce the current binary precision exactly."""
    if digits is not None:
        return int(digits)
    return int(math.ceil(_flint_ctx.prec / LOG2_10)) + 2


def to_decimal(x: RealLike, digits: int | None = None) -> str:
    """Decimal string of x with `digits` significant digits and explicit exponent.

    The default digit count round-trips the binary value at the current
    precision through ``from_decimal``.
    """
    x = mid(to_real(x))
    if x.is_zero():
        return "0e+0"
    n = serialization_digits(digits)
    s = x.str(n, radius=False, more=True)
    if "e" not in s:
        mant, exp = s, 0
    else:
        mant, e = s.split("e")
        exp = int(e)
    sign = ""
    if mant.startswith("-"):
        sign, mant = "-", mant[1:]
    if "." in mant:
        ip, fp = mant.split(".")
    else:
        ip, fp = mant, ""
    digits_str = (ip + fp).lstrip("0")
    lead = len(ip.lstrip("0")) if ip.strip("0") else -(len(fp) - len(fp.lstrip("0")))
    exp10 = exp + lead - 1
    digits_str = digits_str.rstrip("0") or "0"
    body = digits_str[0] + ("." + digits_str[1:] if len(digits_str) > 1 else "")
    return f"{sign}{body}e{exp10:+d}"


def from_decimal(s: str) -> arb:
    """Parse a decimal string at the current flint precision."""
    return mid(arb(s.strip()))


def fixed_decimal(x: RealLike, decimals: int) -> str:
    """Fixed-point decimal string truncated (not rounded) to `decimals` places."""
    x = mid(to_real(x))
    neg = x < 0
    ax = -x if neg else x
    fl = mid(ax * arb(10) ** decimals).floor().unique_fmpz()
    if fl is None:
        raise DomainError("insufficient precision to format value")
    n = int(fl)
    ip, fp = divmod(n, 10**decimals)
    out = f"{ip}.{fp:0{decimals}d}" if decimals > 0 else f"{ip}"
    return ("-" if neg and n != 0 else "") + out


def to_float(x) -> float:
    x = mid(x)
    if isinstance(x, acb):
        raise TypeError("use to_complex_float for complex values")
    return float(x)


def to_complex_float(z) -> complex:
    z = mid(to_complex(z))
    return complex(float(z.real), float(z.imag))


def agreeing_digits(a: RealLike, b: RealLike) -> int:
    """Number of leading significant decimal digits on which a and b agree."""
    a, b = mid(to_real(a)), mid(to_real(b))
    if a == b:
        return serialization_digits()
    diff = abs(a - b)
    scale = max(abs(a), abs(b))
    if scale.is_zero():
        return 0
    ratio = float(mid((diff / scale).log() / arb(10).log()))
    return max(0, int(math.floor(-ratio)))


def agreeing_decimals(a: RealLike, b: RealLike) -> int:
    """Number of decimal places (after the point) on which a and b agree."""
    a, b = mid(to_real(a)), mid(to_real(b))
    if a == b:
        return serialization_digits()
    diff = abs(a - b)
    return max(0, int(math.floor(-float(mid(diff.log() / arb(10).log())))))


def log10_abs(x) -> float:
    """log10 |x| as a float (-inf for 0)."""
    x = mid(x)
    a = abs(x) if isinstance(x, acb) else abs(to_real(x))
    a = mid(a)
    if a.is_zero():
        return float("-inf")
    return float(mid(a.log() / arb(10).log()))

import math

import mpmath
import pytest
from flint import acb, arb
from hypothesis import given, settings
from hypothesis import strategies as st

from lzeros.errors import DomainError
from lzeros.numerics import (
    PrecisionContext,
    agreeing_decimals,
    agreeing_digits,
    fixed_decimal,
    from_decimal,
    polar_decompose,
    principal_arg,
    to_complex,
    to_decimal,
)

from conftest import to_mp

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)


def test_principal_arg_examples():
    with PrecisionContext(30).working():
        assert principal_arg(1).is_zero()
        assert abs(principal_arg(-1) - arb.pi()) < arb(10) ** -35
        assert abs(principal_arg(acb(1, 1)) - arb.pi() / 4) < arb(10) ** -35


def test_branch_cut_closed_on_top():
    with PrecisionContext(30).working():
        assert principal_arg(acb(-2, 0)) > 0
        assert principal_arg(acb(-2, "-1e-40")) < 0


def test_polar_decompose_examples():
    with PrecisionContext(30).working():
        r, t = polar_decompose(acb(0, 1))
        assert abs(r - 1) < arb(10) ** -35 and abs(t - arb.pi() / 2) < arb(10) ** -35
        r, t = polar_decompose(-2)
        assert abs(r - 2) < arb(10) ** -35 and abs(t - arb.pi()) < arb(10) ** -35
        r, t = polar_decompose(acb(3, 4))
        assert abs(r - 5) < arb(10) ** -35 and abs(t - arb.atan2(arb(4), arb(3))) < arb(10) ** -35


def test_zero_has_no_argument():
    with pytest.raises(DomainError):
        principal_arg(0)
    with pytest.raises(DomainError):
        polar_decompose(acb(0, 0))


@settings(max_examples=200, deadline=None)
@given(finite, finite)
def test_polar_round_trip(x, y):
    if x == 0 and y == 0:
        return
    ctx = PrecisionContext(40)
    with ctx.working():
        z = acb(x, y)
        r, t = polar_decompose(z)
        back = (r.log() + acb(0, 1) * t).exp()
        assert abs(back - z) <= abs(z) * arb(10) ** (-ctx.precision_digits + 2)


def _round_trip_error(z: tuple[str, str], digits: int) -> arb:
    ctx = PrecisionContext(digits, guard_digits=0)
    with ctx.working():
        zz = to_complex(z)
        r, t = polar_decompose(zz)
        back = ctx.finish((r.log() + acb(0, 1) * t).exp())
    with PrecisionContext(200).working():
        return abs(back - to_complex(z)) / abs(to_complex(z))


@pytest.mark.parametrize("z", [("0.3", "1.7"), ("-12.5", "0.001"), ("1e5", "-3"), ("-0.7", "-0.7")])
def test_more_digits_means_smaller_error(z):
    for d in (20, 40):
        lo, hi = _round_trip_error(z, d), _round_trip_error(z, d + 20)
        with PrecisionContext(200).working():
            assert hi <= max(lo * arb(10) ** -18, arb(10) ** (-(d + 20) + 2))


def test_precision_context_validation():
    with pytest.raises(ValueError):
        PrecisionContext(14)
    with pytest.raises(ValueError):
        PrecisionContext(30, -1)
    ctx = PrecisionContext(30, 10)
    assert ctx.working_digits == 40
    assert ctx.raised(5).precision_digits == 35
    assert ctx.with_digits(3).precision_digits == 15


def test_finish_rounds_to_precision_digits():
    ctx = PrecisionContext(20)
    with PrecisionContext(100).working():
        x = ctx.finish(arb.pi())
        assert agreeing_digits(x, arb.pi()) in range(19, 23)


@settings(max_examples=100, deadline=None)
@given(st.floats(allow_nan=False, allow_infinity=False).filter(lambda v: v != 0))
def test_decimal_round_trip(v):
    with PrecisionContext(50).working():
        x = arb(v) / 7
        assert from_decimal(to_decimal(x)) == x.mid()


def test_fixed_decimal_truncates():
    with PrecisionContext(30).working():
        assert fixed_decimal(arb("2.71828"), 3) == "2.718"
        assert fixed_decimal(arb("-1.99999"), 2) == "-1.99"
        assert fixed_decimal(arb("0.0004"), 2) == "0.00"
    with PrecisionContext(30).working(), mpmath.workdps(40):
        assert fixed_decimal(arb.pi(), 20) == mpmath.nstr(+mpmath.pi, 40)[:22]


@pytest.mark.parametrize(
    "text, expected",
    [("0.5+15j", (0.5, 15)), ("3j", (0, 3)), ("-j", (0, -1)), ("1+j", (1, 1)),
     ("2-1e-3i", (2, -0.001)), ("7", (7, 0)), ("-1.5e2-4.25j", (-150, -4.25))],
)
def test_to_complex_strings(text, expected):
    with PrecisionContext(30).working():
        z = to_complex(text)
        assert complex(float(z.real), float(z.imag)) == complex(*expected)


def test_to_complex_rejects_garbage():
    with pytest.raises(ValueError):
        to_complex("1+2+3j")


def test_to_complex_accepts_pairs_and_mpmath():
    with PrecisionContext(30).working():
        assert to_complex(("1", "2")) == acb(1, 2)
        z = to_complex(mpmath.mpc(0.5, -2))
        assert z == acb(0.5, -2)


def test_agreement_counters():
    with PrecisionContext(40).working():
        a = arb("14.134725141734693790")
        b = arb("14.134725141734693791")
        assert agreeing_decimals(a, b) == 18
        assert agreeing_digits(a, b) == 19
        assert to_mp(a, 30) == mpmath.mpf("14.134725141734693790")


def test_math_consistency():
    with PrecisionContext(30).working():
        assert math.isclose(float(principal_arg(acb(-1, -1))), -3 * math.pi / 4)

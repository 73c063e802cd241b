from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulersums.errors import DomainError, PrecisionError
from eulersums.hp_numeric import (
    PrecisionContext,
    ctx_new,
    hp_abs_log10,
    hp_arith,
    hp_from_rational,
    hp_ln,
    hp_parse,
    hp_serialize,
)


def _e_from_factorials(ctx) -> Decimal:
    total, term, k = Decimal(1), Decimal(1), 1
    with localcontext(ctx.decimal):
        while term > ctx.eps(-5):
            term /= k
            total += term
            k += 1
    return total


@pytest.mark.parametrize(("target", "working"), [(10, 20), (30, 40), (40, 50), (100, 125), (101, 127)])
def test_guard_digit_rule(target, working):
    assert ctx_new(target).working_digits == working


@pytest.mark.parametrize("target", [0, 5, 9])
def test_tiny_targets_are_rejected(target):
    with pytest.raises(PrecisionError):
        ctx_new(target)


def test_guard_digits_below_minimum_are_rejected():
    with pytest.raises(PrecisionError):
        PrecisionContext(30, 3)


def test_exact_small_operations(ctx30):
    assert hp_arith(Decimal("1.0"), Decimal("2.0"), "add", ctx30) == 3
    x = hp_from_rational(Fraction(1, 7), ctx30)
    assert hp_arith(x, Decimal("1.0"), "mul", ctx30) == x
    assert hp_arith(Decimal("2.0"), 10, "pow_int", ctx30) == 1024
    assert hp_arith(Decimal(7), Decimal(2), "sub", ctx30) == 5


def test_arith_domain_errors(ctx30):
    with pytest.raises(DomainError):
        hp_arith(Decimal(1), Decimal(0), "div", ctx30)
    with pytest.raises(DomainError):
        hp_arith(Decimal(0), -1, "pow_int", ctx30)
    with pytest.raises(DomainError):
        hp_arith(Decimal(2), Decimal("0.5"), "pow_int", ctx30)


def test_huge_exponent_reports_precision_error(ctx30):
    with pytest.raises(PrecisionError):
        hp_arith(Decimal(10), 10**10, "pow_int", ctx30)


def test_ln_of_one_is_exactly_zero(ctx30):
    assert hp_ln(1, ctx30) == 0


def test_ln_of_e_is_one(ctx30):
    e = _e_from_factorials(ctx30)
    assert abs(hp_ln(e, ctx30) - 1) < ctx30.eps(2)


def test_ln_functional_equation(ctx30):
    with localcontext(ctx30.decimal):
        assert abs(hp_ln(4, ctx30) - 2 * hp_ln(2, ctx30)) < ctx30.eps(2)


@pytest.mark.parametrize("x", ["0.001", "0.5", "3", "10", "12345.678", "1e40", "7e-30"])
def test_ln_against_mpmath(ctx40, x):
    mpmath.mp.dps = 60
    want = Decimal(mpmath.nstr(mpmath.log(mpmath.mpf(x)), 58, strip_zeros=False))
    assert abs(hp_ln(Decimal(x), ctx40) - want) <= ctx40.eps(2) * max(1, abs(want))


@pytest.mark.parametrize("x", [0, -1])
def test_ln_rejects_nonpositive(ctx30, x):
    with pytest.raises(DomainError):
        hp_ln(x, ctx30)


def test_from_rational_matches_long_division(ctx30):
    digits = ctx30.working_digits
    assert hp_from_rational(Fraction(1, 3), ctx30) == Decimal("0." + "3" * digits)
    assert hp_from_rational(Fraction(0), ctx30) == 0
    # 137/60 by integer long division, last digit rounded half-even
    scaled, rem = divmod(137 * 10 ** (digits - 1), 60)
    if 2 * rem >= 60:
        scaled += 1
    assert hp_from_rational(Fraction(137, 60), ctx30) == Decimal(f"{scaled}e-{digits - 1}")


def test_serialization_round_trip():
    for text in ["0", "-1.5", "2.50", "1e-40", "-3.25e+12"]:
        assert hp_parse(hp_serialize(hp_parse(text))) == hp_parse(text)
    assert hp_serialize(Decimal("1E-7")) == "1e-7"


@pytest.mark.parametrize("bad", ["", "abc", "1.2.3", "0x10", "1e", "inf", "nan", "--1"])
def test_parse_rejects_other_formats(bad):
    with pytest.raises(DomainError):
        hp_parse(bad)


def test_parse_rounds_to_context(ctx30):
    long = "1." + "1" * 80
    assert len(hp_parse(long, ctx30).as_tuple().digits) == ctx30.working_digits


def test_abs_log10():
    assert hp_abs_log10(Decimal("0.001")) == -3
    assert hp_abs_log10(Decimal("-100")) == 2
    assert hp_abs_log10(Decimal(0)) == float("-inf")


@settings(max_examples=200, deadline=None)
@given(st.fractions(max_denominator=10**6), st.fractions(max_denominator=10**6))
def test_rational_conversion_is_correctly_rounded(p, q):
    ctx = ctx_new(20)
    got = hp_from_rational(p + q, ctx)
    exact = Fraction(got) - (p + q)
    ulp = Fraction(10) ** (Decimal(got).adjusted() - ctx.working_digits + 1) if got else Fraction(0)
    assert abs(exact) <= ulp / 2 or (p + q) == 0


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=1, max_value=10**12), st.integers(min_value=1, max_value=10**12))
def test_ln_of_product_is_sum(a, b):
    ctx = ctx_new(25)
    lhs = hp_ln(a * b, ctx)
    with localcontext(ctx.decimal):
        rhs = hp_ln(a, ctx) + hp_ln(b, ctx)
    assert abs(lhs - rhs) <= ctx.eps(3) * max(1, abs(lhs))


@settings(max_examples=300, deadline=None)
@given(st.fractions(max_denominator=10**9), st.fractions(max_denominator=10**9))
def test_add_and_mul_commute_bit_identically(p, q):
    ctx = ctx_new(20)
    a, b = hp_from_rational(p, ctx), hp_from_rational(q, ctx)
    assert str(hp_arith(a, b, "add", ctx)) == str(hp_arith(b, a, "add", ctx))
    assert str(hp_arith(a, b, "mul", ctx)) == str(hp_arith(b, a, "mul", ctx))


@settings(max_examples=500, deadline=None)
@given(st.fractions(max_denominator=10**12))
def test_serialization_round_trip_of_converted_rationals(q):
    ctx = ctx_new(30)
    x = hp_from_rational(q, ctx)
    assert hp_parse(hp_serialize(x)) == x
    assert hp_serialize(hp_parse(hp_serialize(x))) == hp_serialize(x)

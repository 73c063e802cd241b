"""Decimal-digit arbitrary precision arithmetic.

High-precision reals are plain :class:`decimal.Decimal` values. A
:class:`PrecisionContext` fixes how many significant digits every operation
keeps, and hands out a matching :class:`decimal.Context`. Exact quantities are
carried as :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from decimal import (
    ROUND_HALF_EVEN,
    Context,
    Decimal,
    DivisionByZero,
    InvalidOperation,
    Overflow,
    localcontext,
)
from fractions import Fraction
from typing import Literal

from .errors import DomainError, PrecisionError

__all__ = [
    "HPReal",
    "Rational",
    "PrecisionContext",
    "ctx_new",
    "hp_arith",
    "hp_ln",
    "hp_from_rational",
    "hp_serialize",
    "hp_parse",
    "hp_abs_log10",
]

HPReal = Decimal
Rational = Fraction

MIN_TARGET_DIGITS = 10
MIN_GUARD_DIGITS = 10
EXPONENT_LIMIT = 10**9


@dataclass(frozen=True)
class PrecisionContext:
    """Requested digits plus guard digits; ``working_digits`` is their sum."""

    target_digits: int
    guard_digits: int

    def __post_init__(self) -> None:
        if self.target_digits < MIN_TARGET_DIGITS:
            raise PrecisionError(
                f"target_digits must be at least {MIN_TARGET_DIGITS}, got {self.target_digits}"
            )
        if self.guard_digits < MIN_GUARD_DIGITS:
            raise PrecisionError(
                f"guard_digits must be at least {MIN_GUARD_DIGITS}, got {self.guard_digits}"
            )

    @property
    def working_digits(self) -> int:
        return self.target_digits + self.guard_digits

    @property
    def decimal(self) -> Context:
        """A fresh :class:`decimal.Context` at working precision."""
        return Context(
            prec=self.working_digits,
            rounding=ROUND_HALF_EVEN,
            Emax=EXPONENT_LIMIT,
            Emin=-EXPONENT_LIMIT,
            traps=[InvalidOperation, DivisionByZero, Overflow],
        )

    def eps(self, slack: int = 0) -> Decimal:
        """``10**(-working_digits + slack)``."""
        return Decimal(1).scaleb(-self.working_digits + slack)


def ctx_new(target_digits: int) -> PrecisionContext:
    """Build a context with ``max(10, ceil(target/4))`` guard digits."""
    if target_digits < MIN_TARGET_DIGITS:
        raise PrecisionError(
            f"target_digits must be at least {MIN_TARGET_DIGITS}, got {target_digits}"
        )
    guard = max(MIN_GUARD_DIGITS, math.ceil(target_digits / 4))
    return PrecisionContext(target_digits, guard)


Op = Literal["add", "sub", "mul", "div", "pow_int"]


def hp_arith(a: Decimal, b: Decimal | int, op: Op, ctx: PrecisionContext) -> Decimal:
    """Apply one correctly rounded arithmetic operation at working precision.

    For ``pow_int`` the second operand must be an integer exponent.
    """
    dctx = ctx.decimal
    try:
        if op == "add":
            return dctx.add(a, b)
        if op == "sub":
            return dctx.subtract(a, b)
        if op == "mul":
            return dctx.multiply(a, b)
        if op == "div":
            if b == 0:
                raise DomainError("division by zero")
            return dctx.divide(a, b)
        if op == "pow_int":
            exponent = int(b)
            if exponent != b:
                raise DomainError(f"pow_int needs an integer exponent, got {b}")
            if exponent < 0 and a == 0:
                raise DomainError("zero raised to a negative power")
            return dctx.power(a, exponent)
    except Overflow as exc:
        raise PrecisionError("decimal exponent overflow") from exc
    raise ValueError(f"unknown operation {op!r}")


def hp_from_rational(q: Fraction | int, ctx: PrecisionContext) -> Decimal:
    """Correctly rounded conversion of an exact rational."""
    q = Fraction(q)
    return ctx.decimal.divide(Decimal(q.numerator), Decimal(q.denominator))


# ---------------------------------------------------------------------------
# logarithm
# ---------------------------------------------------------------------------

def _atanh_series(z: Decimal, tiny: Decimal) -> Decimal:
    """``atanh(z)`` for small ``|z|`` by its odd power series."""
    z2 = z * z
    term = z
    total = z
    k = 1
    while True:
        term *= z2
        k += 2
        contrib = term / k
        total += contrib
        if abs(contrib) < tiny:
            return total


def _ln2(ctx: PrecisionContext) -> Decimal:
    # ln 2 = 2 atanh(1/3)
    with localcontext(ctx.decimal):
        return 2 * _atanh_series(Decimal(1) / 3, ctx.eps(-2))


def hp_ln(x: Decimal | int, ctx: PrecisionContext) -> Decimal:
    """Natural logarithm by binary argument reduction and an atanh series.

    ``x = m * 2**e`` with ``m`` in ``[1/sqrt 2, sqrt 2)`` gives
    ``ln x = e ln 2 + 2 atanh((m - 1)/(m + 1))``.
    """
    x = Decimal(x)
    if x <= 0:
        raise DomainError(f"logarithm of a non-positive number: {x}")
    if x == 1:
        return Decimal(0)
    inner = PrecisionContext(ctx.target_digits, ctx.guard_digits + 5)
    with localcontext(inner.decimal):
        # strip the decimal exponent first: ln 10 = 3 ln 2 + 2 atanh(1/9)
        k10 = x.adjusted()
        m = (+x).scaleb(-k10)
        e = 0
        two = Decimal(2)
        upper = Decimal("1.4142135623730950488")
        lower = Decimal("0.70710678118654752440")
        while m >= upper:
            m /= two
            e += 1
        while m < lower:
            m *= two
            e -= 1
        ln2 = _ln2(inner)
        tiny = inner.eps(-2)
        result = 2 * _atanh_series((m - 1) / (m + 1), tiny) + e * ln2
        if k10:
            ln10 = 3 * ln2 + 2 * _atanh_series(Decimal(1) / 9, tiny)
            result += k10 * ln10
    return ctx.decimal.plus(result)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

_NUMBER = re.compile(r"[+-]?\d+(\.\d*)?([eE][+-]?\d+)?")


def hp_serialize(x: Decimal) -> str:
    """Decimal string with an optional lower-case ``e`` exponent."""
    if not x.is_finite():
        raise DomainError(f"cannot serialize non-finite value {x}")
    return str(x).replace("E", "e")


def hp_parse(text: str, ctx: PrecisionContext | None = None) -> Decimal:
    """Parse the serialization format; rounds to ``ctx`` when one is given."""
    text = text.strip()
    if not _NUMBER.fullmatch(text):
        raise DomainError(f"not a decimal number: {text!r}")
    value = Decimal(text)
    return ctx.decimal.plus(value) if ctx is not None else value


def hp_abs_log10(x: Decimal) -> float:
    """``log10 |x|`` as a float; ``-inf`` for zero. Used for digit counting."""
    if x == 0:
        return float("-inf")
    x = abs(x)
    return float(x.log10(Context(prec=20)))

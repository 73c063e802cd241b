"""High-precision constants used on the right-hand side of identities.

Values are cached per ``(key, working_digits)``. Each one is computed at a
slightly higher internal precision and then rounded to the caller's context.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Callable

from .errors import DomainError
from .finite_seq import SignedComposition, bernoulli
from .hp_numeric import PrecisionContext, hp_ln
from .series_engine.accel import accelerate_alternating, cvz_terms_for

__all__ = [
    "ConstantKey",
    "KINDS",
    "constant",
    "const_zeta",
    "const_eta",
    "const_ln2",
    "const_li_half",
    "const_gamma",
    "const_mzv_h1",
    "const_amzv_2bar",
    "const_W",
    "const_V",
    "clear_cache",
]

KINDS = ("Zeta", "Eta", "Ln2", "Gamma", "LiHalf", "MzvH1", "Amzv2Bar", "W", "V")

_ARITY = {"Zeta": 1, "Eta": 1, "Ln2": 0, "Gamma": 0, "LiHalf": 1, "MzvH1": 2, "Amzv2Bar": 1, "W": 2, "V": 2}
_LOWER = {
    "Zeta": (2,),
    "Eta": (1,),
    "LiHalf": (1,),
    "MzvH1": (1, 1),
    "Amzv2Bar": (1,),
    "W": (1, 0),
    "V": (1, 0),
}


@dataclass(frozen=True)
class ConstantKey:
    """A named constant with its integer parameters, e.g. ``ConstantKey("Zeta", (3,))``."""

    kind: str
    params: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in _ARITY:
            raise DomainError(f"unknown constant kind {self.kind!r}")
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))
        if len(self.params) != _ARITY[self.kind]:
            raise DomainError(f"{self.kind} takes {_ARITY[self.kind]} parameter(s), got {self.params}")
        for value, low in zip(self.params, _LOWER.get(self.kind, ())):
            if value < low:
                raise DomainError(f"{self.kind}{self.params}: parameter {value} below {low}")


_cache: dict[tuple[ConstantKey, int], Decimal] = {}
_lock = threading.Lock()


def clear_cache() -> None:
    with _lock:
        _cache.clear()


def constant(key: ConstantKey, ctx: PrecisionContext) -> Decimal:
    """Read-through cached value of ``key`` at the context's working precision."""
    slot = (key, ctx.working_digits)
    with _lock:
        hit = _cache.get(slot)
    if hit is not None:
        return hit
    inner = PrecisionContext(ctx.target_digits, ctx.guard_digits + 5)
    value = ctx.decimal.plus(_COMPUTE[key.kind](inner, *key.params))
    with _lock:
        # a concurrent computation may have won; keep the first value
        return _cache.setdefault(slot, value)


# ---------------------------------------------------------------------------
# raw computations (no caching, full inner precision)
# ---------------------------------------------------------------------------

def _eta_raw(ctx: PrecisionContext, s: int) -> Decimal:
    n = cvz_terms_for(ctx.working_digits)
    with localcontext(ctx.decimal):
        terms = [Decimal(1) / Decimal(k) ** s for k in range(1, n + 1)]
    return accelerate_alternating(terms, ctx)


def _zeta_raw(ctx: PrecisionContext, s: int) -> Decimal:
    with localcontext(ctx.decimal):
        factor = 1 - Decimal(2) ** (1 - s)
        return constant(ConstantKey("Eta", (s,)), ctx) / factor


def _ln2_raw(ctx: PrecisionContext) -> Decimal:
    # 2 atanh(1/3) = sum 2 / ((2k+1) 3**(2k+1))
    with localcontext(ctx.decimal):
        tiny = ctx.eps(-3)
        ninth = Decimal(1) / 9
        power = Decimal(1) / 3
        total = Decimal(0)
        k = 0
        while power > tiny:
            total += power / (2 * k + 1)
            power *= ninth
            k += 1
        return 2 * total


def _li_half_raw(ctx: PrecisionContext, p: int) -> Decimal:
    count = math.ceil((ctx.working_digits + 3) * math.log(10) / math.log(2)) + 5
    with localcontext(ctx.decimal):
        total = Decimal(0)
        half_power = Decimal(1)
        for n in range(1, count + 1):
            half_power /= 2
            total += half_power / Decimal(n) ** p
        return total


def _gamma_raw(ctx: PrecisionContext, n_terms: int | None = None) -> Decimal:
    """``gamma = H_N - ln N - 1/(2N) + sum_k B_2k / (2k N**2k)``."""
    big_n = n_terms if n_terms is not None else max(20, ctx.working_digits)
    with localcontext(ctx.decimal):
        tiny = ctx.eps(-3)
        h = sum((Decimal(1) / j for j in range(1, big_n + 1)), Decimal(0))
        value = h - hp_ln(big_n, ctx) - Decimal(1) / (2 * big_n)
        n2 = Decimal(big_n) ** 2
        power = n2
        k = 1
        while True:
            b = bernoulli(2 * k)
            term = Decimal(b.numerator) / (Decimal(b.denominator) * 2 * k * power)
            value += term
            if abs(term) < tiny:
                return value
            k += 1
            power *= n2
            if k > 4 * big_n:
                raise DomainError("Euler-Maclaurin correction failed to converge")


# bivariate polynomials as {(i, j): coefficient}
Poly = dict[tuple[int, int], Decimal]


def _poly_mul(a: Poly, b: Poly, degree: int) -> Poly:
    out: Poly = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            if i1 + i2 + j1 + j2 <= degree:
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, Decimal(0)) + c1 * c2
    return out


def _mzv_h1_raw(ctx: PrecisionContext, m: int, n: int) -> Decimal:
    """Coefficient of ``x**m y**n`` in ``1 - exp(sum_k zeta(k)(x^k + y^k - (x+y)^k)/k)``."""
    degree = m + n
    with localcontext(ctx.decimal):
        exponent: Poly = {}
        for k in range(2, degree + 1):
            z = constant(ConstantKey("Zeta", (k,)), ctx) / k
            # x^k + y^k - (x+y)^k keeps only the mixed binomial terms
            for i in range(1, k):
                key = (i, k - i)
                exponent[key] = exponent.get(key, Decimal(0)) - z * math.comb(k, i)
        result: Poly = {(0, 0): Decimal(1)}
        power: Poly = {(0, 0): Decimal(1)}
        r = 1
        while 2 * r <= degree:
            power = _poly_mul(power, exponent, degree)
            fact = math.factorial(r)
            for key, c in power.items():
                result[key] = result.get(key, Decimal(0)) + c / fact
            r += 1
        return -result.get((m, n), Decimal(0))


def _amzv_2bar_raw(ctx: PrecisionContext, m: int) -> Decimal:
    """Closed form of ``zeta(~2, {1}^(m-1))`` in ``ln 2``, ``zeta`` and ``Li_j(1/2)``."""
    with localcontext(ctx.decimal):
        ln2 = constant(ConstantKey("Ln2"), ctx)
        sign = -1 if m % 2 else 1
        li = [None] + [constant(ConstantKey("LiHalf", (j,)), ctx) for j in range(1, m + 2)]
        value = sign * ln2 ** (m + 1) / math.factorial(m + 1)
        value += sign * (constant(ConstantKey("Zeta", (m + 1,)), ctx) - li[m + 1])
        tail = sum(
            (ln2 ** (m + 1 - j) / math.factorial(m + 1 - j) * li[j] for j in range(1, m + 1)),
            Decimal(0),
        )
        return value - sign * tail


def _w_raw(ctx: PrecisionContext, m: int, k: int) -> Decimal:
    with localcontext(ctx.decimal):
        factor = (-1) ** (m + k) * math.factorial(m) * math.factorial(k)
        return factor * constant(ConstantKey("MzvH1", (k + 1, m)), ctx)


def _v_raw(ctx: PrecisionContext, m: int, k: int) -> Decimal:
    if k == 0:
        mzv = constant(ConstantKey("Amzv2Bar", (m,)), ctx)
    else:
        # imported lazily: the series engine itself depends on this module
        from .series_engine import eval_mzv

        comp = SignedComposition.of(f"~{k + 2}", *([1] * (m - 1)))
        mzv = eval_mzv(comp, ctx).value
    with localcontext(ctx.decimal):
        return (-1) ** (m + k) * math.factorial(m) * math.factorial(k) * mzv


_COMPUTE: dict[str, Callable[..., Decimal]] = {
    "Zeta": _zeta_raw,
    "Eta": _eta_raw,
    "Ln2": _ln2_raw,
    "Gamma": _gamma_raw,
    "LiHalf": _li_half_raw,
    "MzvH1": _mzv_h1_raw,
    "Amzv2Bar": _amzv_2bar_raw,
    "W": _w_raw,
    "V": _v_raw,
}


# ---------------------------------------------------------------------------
# public shortcuts
# ---------------------------------------------------------------------------

def const_zeta(s: int, ctx: PrecisionContext) -> Decimal:
    """Riemann zeta at an integer ``s >= 2``."""
    return constant(ConstantKey("Zeta", (s,)), ctx)


def const_eta(s: int, ctx: PrecisionContext) -> Decimal:
    """Alternating zeta ``sum (-1)**(n-1)/n**s`` for ``s >= 1``."""
    return constant(ConstantKey("Eta", (s,)), ctx)


def const_ln2(ctx: PrecisionContext) -> Decimal:
    return constant(ConstantKey("Ln2"), ctx)


def const_li_half(p: int, ctx: PrecisionContext) -> Decimal:
    """Polylogarithm ``Li_p(1/2)``."""
    return constant(ConstantKey("LiHalf", (p,)), ctx)


def const_gamma(ctx: PrecisionContext) -> Decimal:
    """Euler-Mascheroni constant."""
    return constant(ConstantKey("Gamma"), ctx)


def const_mzv_h1(m: int, n: int, ctx: PrecisionContext) -> Decimal:
    """Height-one value ``zeta(m+1, {1}^(n-1))``."""
    return constant(ConstantKey("MzvH1", (m, n)), ctx)


def const_amzv_2bar(m: int, ctx: PrecisionContext) -> Decimal:
    """Alternating value ``zeta(~2, {1}^(m-1))``."""
    return constant(ConstantKey("Amzv2Bar", (m,)), ctx)


def const_W(m: int, k: int, ctx: PrecisionContext) -> Decimal:
    """``(-1)**(m+k) m! k! zeta(k+2, {1}^(m-1))``."""
    return constant(ConstantKey("W", (m, k)), ctx)


def const_V(m: int, k: int, ctx: PrecisionContext) -> Decimal:
    """``(-1)**(m+k) m! k! zeta(~(k+2), {1}^(m-1))``."""
    return constant(ConstantKey("V", (m, k)), ctx)


def rational_to_decimal(q: Fraction, ctx: PrecisionContext) -> Decimal:
    return ctx.decimal.divide(Decimal(q.numerator), Decimal(q.denominator))

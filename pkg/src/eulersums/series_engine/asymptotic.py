"""Asymptotic expansions in the monomial basis ``(-1)**(p n) n**(-a) ln(n)**b``.

An :class:`Expansion` stores coefficients keyed by ``(p, a, b)`` and an
``order``: every monomial with ``a < order`` is known, everything beyond is
truncated. Coefficients are :class:`~decimal.Decimal` and all arithmetic runs
in the caller's active decimal context.

The key operation is :meth:`Expansion.partial_sum`. Given the expansion of a
summand ``f(j)`` it returns ``G`` with ``sum_{j<=n} f(j) = C + G(n)`` for some
constant ``C``. Non-alternating monomials go through Euler-Maclaurin and
alternating ones through Boole summation with Euler numbers ``E_k(0)``.
"""

from __future__ import annotations

import math
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache

from ..errors import DivergentSeriesError, DomainError
from ..finite_seq import bernoulli, euler_zero

__all__ = ["Expansion", "Key"]

Key = tuple[int, int, int]
UNBOUNDED = 10**6


def _frac_to_dec(q: Fraction) -> Decimal:
    return Decimal(q.numerator) / Decimal(q.denominator)


# ---------------------------------------------------------------------------
# exact monomial transforms
# ---------------------------------------------------------------------------

def _derivative(poly: dict[tuple[int, int], Fraction]) -> dict[tuple[int, int], Fraction]:
    """d/dx of ``sum c x**(-a) ln(x)**b``."""
    out: dict[tuple[int, int], Fraction] = {}
    for (a, b), c in poly.items():
        if a:
            out[(a + 1, b)] = out.get((a + 1, b), Fraction(0)) - a * c
        if b:
            out[(a + 1, b - 1)] = out.get((a + 1, b - 1), Fraction(0)) + b * c
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _partial_sum_monomial(parity: int, a: int, b: int, order: int) -> tuple[tuple[Key, Fraction], ...]:
    """Non-constant part of ``sum_{j<=n} (-1)**(parity j) j**(-a) ln(j)**b``."""
    out: dict[Key, Fraction] = {}

    def add(key: Key, c: Fraction) -> None:
        if key[1] < order and c:
            out[key] = out.get(key, Fraction(0)) + c

    if parity == 0:
        if a < 1:
            raise DivergentSeriesError(f"partial sum of n^{-a} log^{b} n grows polynomially")
        if a == 1:
            add((0, 0, b + 1), Fraction(1, b + 1))
        else:
            for i in range(b + 1):
                coeff = Fraction(math.factorial(b), math.factorial(b - i)) / Fraction(a - 1) ** (i + 1)
                add((0, a - 1, b - i), -coeff)
        add((0, a, b), Fraction(1, 2))
        deriv = {(a, b): Fraction(1)}
        m = 0
        while True:
            m += 1
            if a + m >= order:
                break
            deriv = _derivative(deriv)
            if m % 2 == 1:
                k = (m + 1) // 2
                factor = bernoulli(2 * k) / math.factorial(2 * k)
                for (aa, bb), c in deriv.items():
                    add((0, aa, bb), factor * c)
    else:
        add((1, a, b), Fraction(1, 2))
        deriv = {(a, b): Fraction(1)}
        m = 0
        while True:
            m += 1
            if a + m >= order:
                break
            deriv = _derivative(deriv)
            if m % 2 == 1:
                factor = -euler_zero(m) / (2 * math.factorial(m))
                for (aa, bb), c in deriv.items():
                    add((1, aa, bb), factor * c)
    return tuple(out.items())


def _series_mul(x: list[Fraction], y: list[Fraction], deg: int) -> list[Fraction]:
    out = [Fraction(0)] * (deg + 1)
    for i, xi in enumerate(x[: deg + 1]):
        if xi:
            for j, yj in enumerate(y[: deg + 1 - i]):
                out[i + j] += xi * yj
    return out


@lru_cache(maxsize=None)
def _shift_monomial(parity: int, a: int, b: int, order: int) -> tuple[tuple[Key, Fraction], ...]:
    """Expansion in ``n`` of ``(-1)**(parity (n-1)) (n-1)**(-a) ln(n-1)**b``."""
    deg = order - a - 1
    if deg < 0:
        return ()
    sign = -1 if parity else 1
    binom = [Fraction(math.comb(a + k - 1, k)) if a else Fraction(int(k == 0)) for k in range(deg + 1)]
    lam = [Fraction(0)] + [Fraction(-1, k) for k in range(1, deg + 1)]
    out: dict[Key, Fraction] = {}
    power = [Fraction(1)] + [Fraction(0)] * deg
    for i in range(b + 1):
        series = _series_mul(binom, power, deg)
        weight = sign * math.comb(b, i)
        for k, c in enumerate(series):
            if c:
                key = (parity, a + k, b - i)
                out[key] = out.get(key, Fraction(0)) + weight * c
        power = _series_mul(power, lam, deg)
    return tuple((k, v) for k, v in out.items() if v)


# ---------------------------------------------------------------------------
# expansions
# ---------------------------------------------------------------------------

class Expansion:
    """Truncated expansion ``sum c (-1)**(p n) n**(-a) ln(n)**b`` for ``a < order``."""

    __slots__ = ("terms", "order")

    def __init__(self, terms: dict[Key, Decimal] | None = None, order: int = UNBOUNDED):
        self.terms = {k: v for k, v in (terms or {}).items() if k[1] < order and v}
        self.order = order

    # construction -------------------------------------------------------
    @classmethod
    def constant(cls, c: Decimal | int, order: int = UNBOUNDED) -> Expansion:
        return cls({(0, 0, 0): Decimal(c)}, order)

    @classmethod
    def monomial(cls, parity: int, a: int, b: int, c: Decimal | int = 1, order: int = UNBOUNDED) -> Expansion:
        return cls({(parity, a, b): Decimal(c)}, order)

    @classmethod
    def inverse_shifted_power(cls, q: int, shift: int, order: int) -> Expansion:
        """``(n + shift)**(-q)``."""
        terms = {}
        for k in range(0, max(0, order - q)):
            c = (-1) ** k * math.comb(q + k - 1, k) * shift**k if q else int(k == 0)
            if c:
                terms[(0, q + k, 0)] = Decimal(c)
        return cls(terms, order)

    # structure ----------------------------------------------------------
    @property
    def min_a(self) -> int:
        return min((k[1] for k in self.terms), default=UNBOUNDED)

    def copy(self) -> Expansion:
        return Expansion(dict(self.terms), self.order)

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}: {float(v):.6g}" for k, v in sorted(self.terms.items()))
        return f"Expansion({{{inner}}}, order={self.order})"

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: Expansion) -> Expansion:
        order = min(self.order, other.order)
        out = {k: v for k, v in self.terms.items() if k[1] < order}
        for k, v in other.terms.items():
            if k[1] < order:
                out[k] = out.get(k, Decimal(0)) + v
        return Expansion(out, order)

    def __neg__(self) -> Expansion:
        return Expansion({k: -v for k, v in self.terms.items()}, self.order)

    def __sub__(self, other: Expansion) -> Expansion:
        return self + (-other)

    def scale(self, c: Decimal | int) -> Expansion:
        c = Decimal(c)
        return Expansion({k: v * c for k, v in self.terms.items()}, self.order)

    def mul(self, other: Expansion, cap: int) -> Expansion:
        order = min(cap, self.order + other.min_a, other.order + self.min_a)
        out: dict[Key, Decimal] = {}
        for (p1, a1, b1), c1 in self.terms.items():
            for (p2, a2, b2), c2 in other.terms.items():
                a = a1 + a2
                if a < order:
                    key = ((p1 + p2) & 1, a, b1 + b2)
                    out[key] = out.get(key, Decimal(0)) + c1 * c2
        return Expansion(out, order)

    def truncate(self, order: int) -> Expansion:
        return Expansion(self.terms, min(order, self.order))

    # transforms ---------------------------------------------------------
    def partial_sum(self) -> Expansion:
        """``G`` such that ``sum_{j<=n} f(j) = C + G(n)`` for this ``f``."""
        # integration lowers the power of 1/n by one
        order = self.order - 1 if self.order < UNBOUNDED else self.order
        out: dict[Key, Decimal] = {}
        for (p, a, b), c in self.terms.items():
            for key, q in _partial_sum_monomial(p, a, b, order):
                out[key] = out.get(key, Decimal(0)) + c * _frac_to_dec(q)
        return Expansion(out, order)

    def shift_back(self) -> Expansion:
        """Expansion of ``E(n - 1)`` in powers of ``1/n``."""
        out: dict[Key, Decimal] = {}
        for (p, a, b), c in self.terms.items():
            for key, q in _shift_monomial(p, a, b, self.order):
                out[key] = out.get(key, Decimal(0)) + c * _frac_to_dec(q)
        return Expansion(out, self.order)

    # evaluation ---------------------------------------------------------
    def _basis(self, n: int, ln_n: Decimal):
        max_a = max((k[1] for k in self.terms), default=0)
        max_b = max((k[2] for k in self.terms), default=0)
        inv = Decimal(1) / n
        inv_pow = [Decimal(1)]
        for _ in range(max_a):
            inv_pow.append(inv_pow[-1] * inv)
        ln_pow = [Decimal(1)]
        for _ in range(max_b):
            ln_pow.append(ln_pow[-1] * ln_n)
        alt = -1 if n % 2 else 1
        return inv_pow, ln_pow, alt

    def evaluate(self, n: int, ln_n: Decimal) -> Decimal:
        inv_pow, ln_pow, alt = self._basis(n, ln_n)
        total = Decimal(0)
        for (p, a, b), c in self.terms.items():
            v = c * inv_pow[a] * ln_pow[b]
            total += -v if (p and alt < 0) else v
        return total

    def band(self, n: int, ln_n: Decimal, lowest_a: int) -> Decimal:
        """Sum of absolute contributions of monomials with ``a >= lowest_a``."""
        inv_pow, ln_pow, _ = self._basis(n, ln_n)
        total = Decimal(0)
        for (p, a, b), c in self.terms.items():
            if a >= lowest_a:
                total += abs(c * inv_pow[a] * ln_pow[b])
        return total

    def growing(self, threshold: Decimal, *, summand: bool) -> list[Key]:
        """Monomials that prevent convergence, with ``|c| > threshold``.

        For a summand a non-alternating monomial needs ``a >= 2`` and an
        alternating one ``a >= 1``. For a partial-sum expansion (``summand``
        false) every monomial must decay, so ``a >= 1`` is required.
        """
        bad = []
        for (p, a, b), c in self.terms.items():
            if abs(c) <= threshold:
                continue
            if summand and ((p == 0 and a <= 1) or (p == 1 and a <= 0)):
                bad.append((p, a, b))
            if not summand and a <= 0:
                bad.append((p, a, b))
        return bad

    def drop(self, keys) -> Expansion:
        keys = set(keys)
        return Expansion({k: v for k, v in self.terms.items() if k not in keys}, self.order)


def require_positive_order(order: int) -> None:
    if order <= 0:
        raise DomainError("expansion order must be positive")

"""Exact finite sequences: harmonic numbers, multiple harmonic numbers,
Stirling and Bell numbers, Bernoulli numbers and symmetric functions.

Everything here works in exact rationals and doubles as the oracle layer for
the numerical modules.

A barred index ``~s`` in a nested sum contributes ``(-1)**k / k**s`` where
``k`` is its summation variable, so ``mhn(n, (~p,)) == -harmonic_alt(n, p)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Literal, Sequence

from .errors import DomainError, ParseError

__all__ = [
    "SignedIndex",
    "SignedComposition",
    "harmonic",
    "harmonic_alt",
    "zeta_partial",
    "mhn",
    "stirling1",
    "stirling1_harmonic",
    "bell_y",
    "bernoulli",
    "euler_zero",
    "newton_from_power_sums",
    "sym_brute",
]

Kind = Literal["elementary", "complete"]


@dataclass(frozen=True, order=True)
class SignedIndex:
    """Exponent ``s`` with an optional bar (alternating sign marker)."""

    s: int
    barred: bool = False

    def __post_init__(self) -> None:
        if self.s < 1:
            raise DomainError(f"index exponent must be positive, got {self.s}")

    def __add__(self, other: SignedIndex) -> SignedIndex:
        """Merge two indices: exponents add, bars combine by exclusive or."""
        return SignedIndex(self.s + other.s, self.barred != other.barred)

    @property
    def sign(self) -> int:
        return -1 if self.barred else 1

    def __str__(self) -> str:
        return f"~{self.s}" if self.barred else str(self.s)

    @classmethod
    def parse(cls, text: str) -> SignedIndex:
        text = text.strip()
        barred = text.startswith("~")
        digits = text[1:] if barred else text
        if not digits.isdigit():
            raise ParseError(f"bad signed index {text!r}")
        return cls(int(digits), barred)


@dataclass(frozen=True)
class SignedComposition:
    """An ordered tuple of signed indices, nested strictly or (``star``) weakly."""

    parts: tuple[SignedIndex, ...] = ()
    star: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))

    @property
    def depth(self) -> int:
        return len(self.parts)

    @property
    def weight(self) -> int:
        return sum(p.s for p in self.parts)

    @property
    def admissible(self) -> bool:
        """True when the infinite nested sum converges."""
        if not self.parts:
            return True
        head = self.parts[0]
        return head.s > 1 or head.barred

    def sort_key(self) -> tuple:
        return (self.weight, self.depth, tuple((p.s, p.barred) for p in self.parts))

    def __str__(self) -> str:
        inner = ",".join(str(p) for p in self.parts)
        return f"z*({inner})" if self.star else f"z({inner})"

    @classmethod
    def of(cls, *items: int | str | SignedIndex, star: bool = False) -> SignedComposition:
        """Build from ints (unbarred), ``"~k"`` strings or :class:`SignedIndex`."""
        parts = []
        for item in items:
            if isinstance(item, SignedIndex):
                parts.append(item)
            elif isinstance(item, int):
                parts.append(SignedIndex(item))
            else:
                parts.append(SignedIndex.parse(item))
        return cls(tuple(parts), star)

    @classmethod
    def parse(cls, text: str) -> SignedComposition:
        """Parse ``"~2,1,1"`` or the symbol form ``"z(~2,1,1)"`` / ``"z*(...)"``."""
        text = text.strip()
        star = False
        if text.startswith("z*(") or text.startswith("z("):
            if not text.endswith(")"):
                raise ParseError(f"unbalanced composition {text!r}")
            star = text.startswith("z*(")
            text = text[text.index("(") + 1 : -1]
        if not text.strip():
            return cls((), star)
        return cls(tuple(SignedIndex.parse(t) for t in text.split(",")), star)


# ---------------------------------------------------------------------------
# depth-one sums
# ---------------------------------------------------------------------------

def _check_nonneg(n: int) -> None:
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")


def harmonic(n: int, p: int = 1) -> Fraction:
    """``sum_{j<=n} 1/j**p``."""
    _check_nonneg(n)
    return sum((Fraction(1, j**p) for j in range(1, n + 1)), Fraction(0))


def harmonic_alt(n: int, p: int = 1) -> Fraction:
    """``sum_{j<=n} (-1)**(j-1)/j**p``."""
    _check_nonneg(n)
    return sum((Fraction((-1) ** (j - 1), j**p) for j in range(1, n + 1)), Fraction(0))


def zeta_partial(n: int, m: int, a: Fraction | int) -> Fraction:
    """``sum_{k<=n} a**k/k**m``."""
    _check_nonneg(n)
    a = Fraction(a)
    total = Fraction(0)
    power = Fraction(1)
    for k in range(1, n + 1):
        power *= a
        total += power / k**m
    return total


# ---------------------------------------------------------------------------
# multiple harmonic numbers
# ---------------------------------------------------------------------------

def mhn(n: int, c: SignedComposition) -> Fraction:
    """Multiple harmonic (star) number ``zeta_n(c)`` by prefix dynamic programming.

    ``level[i]`` holds the running value of the nested sum over the suffix
    ``c.parts[i:]`` with every variable at most the current ``j``.
    """
    _check_nonneg(n)
    parts = c.parts
    depth = len(parts)
    if depth == 0:
        return Fraction(1)
    if not c.star and n < depth:
        return Fraction(0)
    level = [Fraction(0)] * depth + [Fraction(1)]
    for j in range(1, n + 1):
        if c.star:
            # innermost first so level[i+1] already includes j
            for i in range(depth - 1, -1, -1):
                p = parts[i]
                level[i] += Fraction(p.sign**j, j**p.s) * level[i + 1]
        else:
            # outermost first so level[i+1] still stops at j-1
            for i in range(depth):
                p = parts[i]
                level[i] += Fraction(p.sign**j, j**p.s) * level[i + 1]
    return level[0]


# ---------------------------------------------------------------------------
# Stirling, Bell, Bernoulli
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _stirling_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _stirling_row(n - 1) + (0,)
    row = [0] * (n + 1)
    for k in range(1, n + 1):
        row[k] = prev[k - 1] + (n - 1) * prev[k]
    return tuple(row)


def stirling1(n: int, k: int) -> int:
    """Unsigned Stirling number of the first kind ``s(n, k)``."""
    _check_nonneg(n)
    _check_nonneg(k)
    if k > n:
        return 0
    # build rows iteratively to keep recursion shallow on first use
    for m in range(0, n + 1, 200):
        _stirling_row(m)
    return _stirling_row(n)[k]


def stirling1_harmonic(n: int, k: int) -> Fraction:
    """``s(n+1, k+1)/n!`` from harmonic numbers of orders ``1..k``.

    ``u_k = (1/k) sum_{j<k} (-1)**(k-j-1) H_n^(k-j) u_j`` with ``u_0 = 1``.
    """
    _check_nonneg(n)
    _check_nonneg(k)
    powers = [Fraction(0)] + [harmonic(n, p) for p in range(1, k + 1)]
    u = [Fraction(1)]
    for m in range(1, k + 1):
        acc = sum(
            ((-1) ** (m - j - 1) * powers[m - j] * u[j] for j in range(m)), Fraction(0)
        )
        u.append(acc / m)
    return u[k]


def bell_y(k: int, n: int) -> Fraction:
    """``Y_k(n)`` from ``Y_k = sum_{j<k} C(k-1,j) (k-j-1)! H_n^(k-j) Y_j``."""
    _check_nonneg(k)
    _check_nonneg(n)
    powers = [Fraction(0)] + [harmonic(n, p) for p in range(1, k + 1)]
    y = [Fraction(1)]
    for m in range(1, k + 1):
        y.append(
            sum(
                (
                    math.comb(m - 1, j) * math.factorial(m - j - 1) * powers[m - j] * y[j]
                    for j in range(m)
                ),
                Fraction(0),
            )
        )
    return y[k]


_bernoulli_table: list[Fraction] = [Fraction(1)]


def bernoulli(k: int) -> Fraction:
    """Bernoulli number with ``B_1 = -1/2``.

    Extends a module-level table under the GIL; appends are atomic and each
    entry depends only on earlier ones, so concurrent callers agree.
    """
    _check_nonneg(k)
    table = _bernoulli_table
    while len(table) <= k:
        m = len(table)
        acc = sum((math.comb(m + 1, j) * table[j] for j in range(m)), Fraction(0))
        value = -acc / (m + 1)
        if len(table) == m:
            table.append(value)
    return table[k]


def euler_zero(k: int) -> Fraction:
    """Euler polynomial value ``E_k(0)``, from ``2/(e^t + 1) = sum E_k(0) t^k/k!``."""
    _check_nonneg(k)
    if k == 0:
        return Fraction(1)
    return Fraction(-2 * (2 ** (k + 1) - 1), k + 1) * bernoulli(k + 1)


# ---------------------------------------------------------------------------
# symmetric functions
# ---------------------------------------------------------------------------

def newton_from_power_sums(p: Sequence[Fraction | int], kind: Kind) -> list[Fraction]:
    """Elementary or complete symmetric functions from power sums ``p_1..p_m``.

    Returns ``[e_1, ..., e_m]`` or ``[h_1, ..., h_m]``.
    """
    power = [Fraction(0)] + [Fraction(x) for x in p]
    out = [Fraction(1)]
    for m in range(1, len(power)):
        if kind == "complete":
            val = sum((out[i] * power[m - i] for i in range(m)), Fraction(0)) / m
        elif kind == "elementary":
            val = sum(((-1) ** i * out[i] * power[m - i] for i in range(m)), Fraction(0))
            val *= Fraction((-1) ** (m - 1), m)
        else:
            raise ValueError(f"unknown kind {kind!r}")
        out.append(val)
    return out[1:]


def sym_brute(xs: Iterable[Fraction | int], m: int, kind: Kind) -> Fraction:
    """Direct nested-sum evaluation of ``e_m`` (strict) or ``h_m`` (weak)."""
    xs = [Fraction(x) for x in xs]
    if kind == "elementary":
        combos = itertools.combinations(xs, m)
    elif kind == "complete":
        combos = itertools.combinations_with_replacement(xs, m)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return sum((math.prod(c, start=Fraction(1)) for c in combos), Fraction(0))

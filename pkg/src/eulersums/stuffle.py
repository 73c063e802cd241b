"""Quasi-shuffle (stuffle) algebra on signed compositions.

Products of depth-one partial sums ``zeta_n(s)`` expand into multiple
harmonic numbers through the stuffle product, and an Euler sum
``sum_n prod(H or Hbar) / n**q`` then rewrites as a rational combination of
(alternating) multiple zeta values by prepending the outer index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DivergentSeriesError, DomainError, UnsupportedError
from .finite_seq import SignedComposition, SignedIndex, harmonic, harmonic_alt, mhn, zeta_partial

__all__ = [
    "MHNTerm",
    "MZVCombination",
    "normalize",
    "stuffle_product",
    "expand_factors",
    "harmonic_factors",
    "sum_to_mzv",
    "verify_finite",
    "euler_partial_sum",
    "verify_truncation",
]


@dataclass(frozen=True)
class MHNTerm:
    """``coefficient * zeta_n(composition)`` (or its limit in a combination)."""

    coefficient: Fraction
    composition: SignedComposition

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))


def normalize(terms: Iterable[MHNTerm]) -> list[MHNTerm]:
    """Merge equal compositions, drop zeros and sort canonically."""
    acc: dict[tuple, Fraction] = {}
    comps: dict[tuple, SignedComposition] = {}
    for t in terms:
        key = (t.composition.star, t.composition.sort_key())
        acc[key] = acc.get(key, Fraction(0)) + t.coefficient
        comps[key] = t.composition
    return [MHNTerm(acc[k], comps[k]) for k in sorted(acc) if acc[k]]


def _format_coefficient(c: Fraction) -> str:
    c = abs(c)
    if c == 1:
        return ""
    return f"{c}*"


@dataclass(frozen=True)
class MZVCombination:
    """Normalized rational combination of multiple zeta value symbols."""

    terms: tuple[MHNTerm, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(normalize(self.terms)))

    def as_dict(self) -> dict[str, Fraction]:
        return {str(t.composition): t.coefficient for t in self.terms}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for i, t in enumerate(self.terms):
            body = _format_coefficient(t.coefficient) + str(t.composition)
            if i == 0:
                out.append(("-" if t.coefficient < 0 else "") + body)
            else:
                out.append(("- " if t.coefficient < 0 else "+ ") + body)
        return " ".join(out)

    def evaluate(self, ctx, strategy: str = "auto"):
        """Numerical value as an :class:`~eulersums.series_engine.EvalReport`."""
        from decimal import Decimal, localcontext

        from .series_engine import eval_mzv, make_report

        value = Decimal(0)
        budget = Decimal(0)
        cutoff = 0
        with localcontext(ctx.decimal) as dctx:
            dctx.prec += 5
            for t in self.terms:
                rep = eval_mzv(t.composition, ctx, strategy)
                c = Decimal(t.coefficient.numerator) / Decimal(t.coefficient.denominator)
                value += c * rep.value
                budget += abs(c) * rep.tail_estimate
                cutoff = max(cutoff, rep.cutoff_N)
        return make_report(value, budget, cutoff, "mzv", ctx)


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------

Parts = tuple[SignedIndex, ...]


@lru_cache(maxsize=4096)
def _stuffle(a: Parts, b: Parts) -> tuple[tuple[Parts, int], ...]:
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    out: dict[Parts, int] = {}

    def add(head: SignedIndex, tails: tuple[tuple[Parts, int], ...]) -> None:
        for parts, c in tails:
            key = (head, *parts)
            out[key] = out.get(key, 0) + c

    add(a[0], _stuffle(a[1:], b))
    add(b[0], _stuffle(a, b[1:]))
    add(a[0] + b[0], _stuffle(a[1:], b[1:]))
    return tuple(out.items())


def _require_plain(c: SignedComposition) -> None:
    if c.star:
        raise DomainError("stuffle products take non-star compositions")


def stuffle_product(a: SignedComposition, b: SignedComposition) -> list[MHNTerm]:
    """``zeta_n(a) * zeta_n(b)`` as a normalized sum of ``zeta_n(c)``."""
    _require_plain(a)
    _require_plain(b)
    raw = _stuffle(a.parts, b.parts)
    return normalize(MHNTerm(Fraction(c), SignedComposition(p)) for p, c in raw)


def expand_factors(factors: Sequence[SignedIndex]) -> list[MHNTerm]:
    """``prod_j zeta_n(i_j)`` with ``zeta_n(~s) = sum_k (-1)**k / k**s``."""
    terms = [MHNTerm(Fraction(1), SignedComposition(()))]
    for f in factors:
        single = SignedComposition((f,))
        nxt = []
        for t in terms:
            for u in stuffle_product(t.composition, single):
                nxt.append(MHNTerm(t.coefficient * u.coefficient, u.composition))
        terms = normalize(nxt)
    return terms


# ---------------------------------------------------------------------------
# Euler sums to multiple zeta values
# ---------------------------------------------------------------------------

def harmonic_factors(spec) -> tuple[list[SignedIndex], int]:
    """Signed indices of the harmonic atoms and the sign from ``Hbar = -zeta_n(~p)``."""
    factors = []
    sign = 1
    for atom in spec.atoms:
        if atom.kind == "H":
            factors.append(SignedIndex(atom.args[0]))
        elif atom.kind == "Hbar":
            factors.append(SignedIndex(atom.args[0], True))
            sign = -sign
    return factors, sign


def sum_to_mzv(spec) -> MZVCombination:
    """Rewrite an Euler sum as a rational combination of multiple zeta values."""
    if not spec.is_euler_sum():
        bad = [str(a) for a in spec.atoms if a.kind not in ("H", "Hbar", "AltSign", "PowDenom")]
        if bad:
            raise UnsupportedError(f"only H, Hbar, AltSign and 1/n**q atoms expand symbolically, got {bad}")
        raise UnsupportedError("shifted denominators do not expand symbolically")
    den = next(a for a in spec.atoms if a.kind == "PowDenom")
    q = den.args[0]
    if q < 1:
        raise DivergentSeriesError(f"{spec} has no decaying denominator")
    factors, sign = harmonic_factors(spec)
    # (-1)**(n-1) = -(-1)**n: the outer slot is barred and flips the sign
    head = SignedIndex(q, spec.alternating)
    if spec.alternating:
        sign = -sign
    out = []
    for t in expand_factors(factors):
        c = t.coefficient * sign
        parts = t.composition.parts
        out.append(MHNTerm(c, SignedComposition((head, *parts))))
        if parts:
            out.append(MHNTerm(c, SignedComposition((head + parts[0], *parts[1:]))))
    result = MZVCombination(tuple(out))
    for t in result.terms:
        if not t.composition.admissible:
            raise DivergentSeriesError(f"{spec} expands to the divergent symbol {t.composition}")
    return result


def verify_finite(terms: Iterable[MHNTerm], factors: Sequence[SignedIndex], n: int) -> bool:
    """Exact check of ``sum coeff * zeta_n(comp) == prod zeta_n(i_j)`` at one ``n``."""
    lhs = sum((t.coefficient * mhn(n, t.composition) for t in terms), Fraction(0))
    rhs = Fraction(1)
    for f in factors:
        rhs *= zeta_partial(n, f.s, -1 if f.barred else 1)
    return lhs == rhs


def euler_partial_sum(spec, n: int) -> Fraction:
    """Exact ``sum_{k<=n}`` of an Euler-sum summand."""
    if not spec.is_euler_sum():
        raise UnsupportedError(f"{spec} is not a plain Euler sum")
    q = next(a for a in spec.atoms if a.kind == "PowDenom").args[0]
    total = Fraction(0)
    for k in range(1, n + 1):
        term = Fraction(1, k**q)
        for atom in spec.atoms:
            if atom.kind == "H":
                term *= harmonic(k, atom.args[0])
            elif atom.kind == "Hbar":
                term *= harmonic_alt(k, atom.args[0])
            elif atom.kind == "AltSign" and k % 2 == 0:
                term = -term
        total += term
    return total


def verify_truncation(spec, combination: MZVCombination, n: int) -> bool:
    """The expansion holds exactly for the partial sums up to ``n``."""
    rhs = sum((t.coefficient * mhn(n, t.composition) for t in combination.terms), Fraction(0))
    return euler_partial_sum(spec, n) == rhs

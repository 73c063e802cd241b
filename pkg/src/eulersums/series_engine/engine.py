"""Numerical evaluation of Euler-type series and multiple zeta values.

Two strategies are available for a (possibly fused) linear combination of
series:

``direct``
    Sum the first ``N`` terms at working precision, then add the tail
    ``sum_{n>N}`` obtained from the asymptotic expansion of the summand
    (Euler-Maclaurin for the non-alternating part, Boole summation for the
    alternating part). Series with a geometric factor ``|x| < 1`` fall back to
    a crude geometric tail bound.
``accelerated``
    Alternating series whose remaining factor is smooth in ``n`` are summed
    with the Cohen-Rodriguez Villegas-Zagier weights.

Multiple zeta values are evaluated by building the asymptotic expansion of
each nested partial sum from the inside out. The constant of each level is
read off from an exact-order head computed by dynamic programming.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Literal, Sequence

from .. import constants as _constants
from ..errors import DivergentSeriesError, DomainError, PrecisionError, UnsupportedError
from ..finite_seq import SignedComposition, SignedIndex
from ..hp_numeric import PrecisionContext, hp_ln
from .accel import accelerate_alternating_with_error, cvz_terms_for
from .asymptotic import Expansion
from .spec import EvalReport, SeriesSpec, SummandAtom, make_report

__all__ = [
    "Strategy",
    "Term",
    "eval_series",
    "eval_combination",
    "eval_mzv",
    "asymptotic_tail",
    "accelerable",
    "expand_star",
    "rk_relation_sides",
    "eval_rk_relation",
    "summand_expansion",
    "summand_at",
    "summand_values",
]

Strategy = Literal["direct", "accelerated", "auto"]
Term = tuple[Decimal, SeriesSpec]

DEFAULT_CUTOFF = 2**10
MAX_CUTOFF = 2**22
MAX_ORDER = 160
EXTRA_DIGITS = 5
MAX_STAR_DEPTH = 8


def _inner(ctx: PrecisionContext) -> PrecisionContext:
    return PrecisionContext(ctx.target_digits, ctx.guard_digits + EXTRA_DIGITS)


def _order_for(ctx: PrecisionContext, cutoff: int) -> int:
    """Truncation order so that ``cutoff**(-order)`` is well below working precision."""
    return min(MAX_ORDER, math.ceil((ctx.working_digits + 6) / math.log10(cutoff)) + 4)


# ---------------------------------------------------------------------------
# atom expansions
# ---------------------------------------------------------------------------

_expansion_cache: dict[tuple, Expansion] = {}
_expansion_lock = threading.Lock()


def _atom_expansion(atom: SummandAtom, cap: int, ctx: PrecisionContext) -> Expansion:
    key = (atom, cap, ctx.working_digits)
    with _expansion_lock:
        hit = _expansion_cache.get(key)
    if hit is not None:
        return hit
    with localcontext(ctx.decimal):
        exp = _build_atom_expansion(atom, cap, ctx)
    with _expansion_lock:
        return _expansion_cache.setdefault(key, exp)


def _harmonic_expansion(p: int, cap: int, ctx: PrecisionContext) -> Expansion:
    head = _constants.const_gamma(ctx) if p == 1 else _constants.const_zeta(p, ctx)
    tail = Expansion.monomial(0, p, 0, order=cap + 1).partial_sum()
    return tail + Expansion.constant(head)


def _build_atom_expansion(atom: SummandAtom, cap: int, ctx: PrecisionContext) -> Expansion:
    kind, args = atom.kind, atom.args
    if kind == "H":
        return _harmonic_expansion(args[0], cap, ctx)
    if kind == "Hbar":
        p = args[0]
        tail = Expansion.monomial(1, p, 0, -1, order=cap + 1).partial_sum()
        return tail + Expansion.constant(_constants.const_eta(p, ctx))
    if kind == "Y":
        k = args[0]
        ys = [Expansion.constant(1)]
        for m in range(1, k + 1):
            acc = Expansion({}, cap)
            for j in range(m):
                weight = math.comb(m - 1, j) * math.factorial(m - j - 1)
                h = _atom_expansion(SummandAtom.H(m - j), cap, ctx)
                acc = acc + h.mul(ys[j], cap).scale(weight)
            ys.append(acc)
        return ys[k]
    if kind == "StirOverFact":
        k = args[0]
        if k == 0:
            return Expansion({}, cap)
        # s(n,k)/n! = e_{k-1}(1, 1/2, ..., 1/(n-1)) / n, power sums H_{n-1}^(i)
        powers = [None] + [
            _atom_expansion(SummandAtom.H(i), cap, ctx) - Expansion.monomial(0, i, 0)
            for i in range(1, k)
        ]
        es = [Expansion.constant(1)]
        for m in range(1, k):
            acc = Expansion({}, cap)
            for i in range(1, m + 1):
                term = es[m - i].mul(powers[i], cap)
                acc = acc + (term if i % 2 else -term)
            es.append(acc.scale(Decimal(1) / m))
        return es[k - 1].mul(Expansion.monomial(0, 1, 0), cap)
    if kind == "PowDenom":
        return Expansion.inverse_shifted_power(args[0], args[1], cap)
    if kind == "RKDenom":
        r, k = args
        return Expansion.inverse_shifted_power(1, r, cap).mul(
            Expansion.inverse_shifted_power(1, k, cap), cap
        )
    if kind == "AltSign":
        return Expansion.monomial(1, 0, 0, -1)
    if kind == "GeomFactor":
        x = args[0]
        if x == 1:
            return Expansion.constant(1)
        if x == -1:
            return Expansion.monomial(1, 0, 0, 1)
        raise UnsupportedError(f"no asymptotic expansion for geometric factor {x}")
    raise UnsupportedError(f"no asymptotic expansion for atom {atom}")


def _has_expansion(spec: SeriesSpec) -> bool:
    return all(not (a.kind == "GeomFactor" and abs(a.args[0]) != 1) for a in spec.atoms)


def summand_expansion(terms: Sequence[Term], cap: int, ctx: PrecisionContext) -> Expansion:
    """Expansion of ``sum coef * prod(atoms)``; runs in the caller's decimal context."""
    total = Expansion({}, cap)
    for coef, spec in terms:
        prod = Expansion.constant(1)
        for atom in spec.atoms:
            prod = prod.mul(_atom_expansion(atom, cap, ctx), cap)
        total = total + prod.scale(coef)
    return total


# ---------------------------------------------------------------------------
# head summation
# ---------------------------------------------------------------------------

class _Head:
    """Streams summand values ``a_n`` of a linear combination of series."""

    def __init__(self, terms: Sequence[Term], ctx: PrecisionContext):
        self.terms = list(terms)
        self.ctx = ctx
        atoms = {a for _, spec in self.terms for a in spec.atoms}
        self.atoms = sorted(atoms)
        self.h_orders = sorted({a.args[0] for a in atoms if a.kind == "H"}
                               | {p for a in atoms if a.kind == "Y" for p in range(1, a.args[0] + 1)})
        self.hbar_orders = sorted({a.args[0] for a in atoms if a.kind == "Hbar"})
        self.max_y = max((a.args[0] for a in atoms if a.kind == "Y"), default=-1)
        self.max_stir = max((a.args[0] for a in atoms if a.kind == "StirOverFact"), default=-1)
        self.n = 0
        self.partial = Decimal(0)
        self.abs_sum = Decimal(0)
        self.last = Decimal(0)
        self.h = {p: Decimal(0) for p in self.h_orders}
        self.hbar = {p: Decimal(0) for p in self.hbar_orders}
        self.stir = [Decimal(1)] + [Decimal(0)] * max(0, self.max_stir)
        self.geom = {a.args[0]: Decimal(1) for a in atoms if a.kind == "GeomFactor"}

    def _step(self) -> Decimal:
        n = self.n + 1
        self.n = n
        dn = Decimal(n)
        for p in self.h_orders:
            self.h[p] += 1 / dn**p
        sign = 1 if n % 2 else -1
        for p in self.hbar_orders:
            self.hbar[p] += sign / dn**p
        ys = None
        if self.max_y >= 0:
            ys = [Decimal(1)]
            for m in range(1, self.max_y + 1):
                ys.append(sum(
                    (math.comb(m - 1, j) * math.factorial(m - j - 1) * self.h[m - j] * ys[j]
                     for j in range(m)),
                    Decimal(0),
                ))
        if self.max_stir >= 0:
            # t_k(n) = (t_{k-1}(n-1) + (n-1) t_k(n-1)) / n
            old = self.stir
            self.stir = [(n - 1) * old[0] / dn] + [
                (old[k - 1] + (n - 1) * old[k]) / dn for k in range(1, self.max_stir + 1)
            ]
        for x in self.geom:
            self.geom[x] *= Decimal(x.numerator) / Decimal(x.denominator)
        values: dict[SummandAtom, Decimal] = {}
        for atom in self.atoms:
            kind, args = atom.kind, atom.args
            if kind == "H":
                v = self.h[args[0]]
            elif kind == "Hbar":
                v = self.hbar[args[0]]
            elif kind == "Y":
                v = ys[args[0]]
            elif kind == "StirOverFact":
                v = self.stir[args[0]]
            elif kind == "PowDenom":
                v = 1 / (dn + args[1]) ** args[0]
            elif kind == "RKDenom":
                v = 1 / ((dn + args[0]) * (dn + args[1]))
            elif kind == "AltSign":
                v = Decimal(sign)
            else:
                v = self.geom[args[0]]
            values[atom] = v
        total = Decimal(0)
        for coef, spec in self.terms:
            prod = coef
            for atom in spec.atoms:
                prod *= values[atom]
            total += prod
        return total

    def advance_to(self, big_n: int) -> Decimal:
        with localcontext(self.ctx.decimal):
            while self.n < big_n:
                a = self._step()
                self.partial += a
                self.abs_sum += abs(a)
                self.last = a
        return self.partial

    def values(self, count: int) -> list[Decimal]:
        out = []
        with localcontext(self.ctx.decimal):
            while self.n < count:
                a = self._step()
                out.append(a)
        return out

    def rounding_estimate(self) -> Decimal:
        # every summand carries a few relative roundings
        return self.abs_sum * self.ctx.eps(1) + self.ctx.eps(1)


def summand_values(
    terms: Iterable[tuple[Decimal | Fraction | int, SeriesSpec]], upto: int, ctx: PrecisionContext
) -> list[Decimal]:
    """Combined summands ``sum coef * a_n`` for ``n = 1..upto``."""
    if upto < 1:
        raise DomainError("index must be positive")
    return _Head(_as_decimal_terms(terms, ctx), ctx).values(upto)


def summand_at(
    terms: Iterable[tuple[Decimal | Fraction | int, SeriesSpec]], n: int, ctx: PrecisionContext
) -> Decimal:
    """Value of the combined summand ``sum coef * a_n`` at one index."""
    return summand_values(terms, n, ctx)[-1]


# ---------------------------------------------------------------------------
# strategies
# ---------------------------------------------------------------------------

def accelerable(terms: Iterable[Term]) -> bool:
    """Alternating in every term and smooth once the sign is removed."""
    for _, spec in terms:
        if not spec.alternating:
            return False
        if any(a.kind in ("Hbar", "GeomFactor") for a in spec.atoms):
            return False
    return True


def _as_decimal_terms(terms: Iterable[tuple], ctx: PrecisionContext) -> list[Term]:
    out = []
    with localcontext(ctx.decimal):
        for coef, spec in terms:
            if isinstance(coef, Fraction):
                coef = Decimal(coef.numerator) / Decimal(coef.denominator)
            out.append((+Decimal(coef), spec))
    return out


def _eval_accelerated(terms: list[Term], inner: PrecisionContext, ctx: PrecisionContext) -> EvalReport:
    count = cvz_terms_for(inner.working_digits + 3)
    head = _Head(terms, inner)
    values = head.values(count)
    # remove the (-1)^(n-1) factor: b_n = (-1)^(n-1) a_n
    b = [v if i % 2 == 0 else v.copy_negate() for i, v in enumerate(values)]
    value, err = accelerate_alternating_with_error(b, inner)
    return make_report(value, err + inner.eps(1), count, "accelerated", ctx)


def _check_convergence(expansion: Expansion, terms: list[Term], inner: PrecisionContext) -> Expansion:
    scale = max((abs(c) for c, _ in terms), default=Decimal(1))
    threshold = scale * inner.eps(8)
    bad = expansion.growing(threshold, summand=True)
    if bad:
        raise DivergentSeriesError(
            "series diverges: leading monomials " + ", ".join(map(str, sorted(bad)))
        )
    # cancelled divergent pieces of a fused combination
    residue = [k for k in expansion.terms if (k[0] == 0 and k[1] <= 1) or (k[0] == 1 and k[1] <= 0)]
    return expansion.drop(residue)


def _eval_direct(
    terms: list[Term],
    inner: PrecisionContext,
    ctx: PrecisionContext,
    cutoff: int | None = None,
) -> EvalReport:
    target = Decimal(1).scaleb(-(ctx.target_digits + 2))
    head = _Head(terms, inner)
    if all(_has_expansion(spec) for _, spec in terms):
        big_n = cutoff or DEFAULT_CUTOFF
        while True:
            order = _order_for(inner, big_n)
            with localcontext(inner.decimal):
                f = _check_convergence(summand_expansion(terms, order, inner), terms, inner)
                g = f.partial_sum()
                ln_n = hp_ln(big_n, inner)
                tail = -g.evaluate(big_n, ln_n)
                trunc = g.band(big_n, ln_n, g.order - 2)
            partial = head.advance_to(big_n)
            with localcontext(inner.decimal):
                estimate = trunc + head.rounding_estimate()
                value = partial + tail
            if estimate < target or cutoff is not None or big_n >= MAX_CUTOFF:
                return make_report(value, estimate, big_n, "direct", ctx, ("asymptotic tail",))
            big_n *= 2
    # crude bound for geometric factors
    big_n = cutoff or DEFAULT_CUTOFF
    ratio = max(abs(a.args[0]) for _, s in terms for a in s.atoms if a.kind == "GeomFactor")
    while True:
        partial = head.advance_to(big_n)
        with localcontext(inner.decimal):
            r = Decimal(ratio.numerator) / Decimal(ratio.denominator)
            estimate = 2 * abs(head.last) * r / (1 - r) + head.rounding_estimate()
        if estimate < target or cutoff is not None or big_n >= MAX_CUTOFF:
            return make_report(partial, estimate, big_n, "direct", ctx, ("geometric tail bound",))
        big_n *= 2


def eval_combination(
    terms: Iterable[tuple[Decimal | Fraction | int, SeriesSpec]],
    ctx: PrecisionContext,
    strategy: Strategy = "auto",
    *,
    cutoff: int | None = None,
) -> EvalReport:
    """Evaluate ``sum coef * series`` as a single fused series."""
    inner = _inner(ctx)
    dterms = _as_decimal_terms(terms, inner)
    if not dterms:
        return make_report(Decimal(0), Decimal(0), 0, "direct", ctx)
    if strategy == "accelerated":
        if not accelerable(dterms):
            raise UnsupportedError("accelerated strategy needs smooth alternating summands")
        return _eval_accelerated(dterms, inner, ctx)
    if strategy == "auto" and cutoff is None and accelerable(dterms):
        return _eval_accelerated(dterms, inner, ctx)
    if strategy not in ("direct", "auto"):
        raise ValueError(f"unknown strategy {strategy!r}")
    return _eval_direct(dterms, inner, ctx, cutoff)


def eval_series(
    spec: SeriesSpec,
    ctx: PrecisionContext,
    strategy: Strategy = "auto",
    *,
    cutoff: int | None = None,
) -> EvalReport:
    """Evaluate one convergent series."""
    return eval_combination([(Decimal(1), spec)], ctx, strategy, cutoff=cutoff)


def asymptotic_tail(
    spec: SeriesSpec,
    big_n: int,
    order: int,
    ctx: PrecisionContext,
    *,
    strict: bool = False,
) -> Decimal:
    """``sum_{n > big_n}`` of the summand from ``order`` terms of its expansion.

    With ``strict`` a :class:`PrecisionError` is raised when the estimated
    truncation error exceeds the context's target precision.
    """
    if big_n < 1 or order < 1:
        raise DomainError("cutoff and order must be positive")
    if not _has_expansion(spec):
        raise UnsupportedError(f"no asymptotic expansion for {spec}")
    inner = _inner(ctx)
    with localcontext(inner.decimal):
        terms = [(Decimal(1), spec)]
        probe = summand_expansion(terms, 64, inner)
        lead = probe.min_a
        cap = lead + order
        f = _check_convergence(summand_expansion(terms, cap, inner), terms, inner)
        g = f.partial_sum()
        ln_n = hp_ln(big_n, inner)
        tail = -g.evaluate(big_n, ln_n)
        if strict:
            estimate = g.band(big_n, ln_n, g.order - 2)
            if estimate > Decimal(1).scaleb(-ctx.target_digits):
                raise PrecisionError(
                    f"order {order} at N={big_n} only reaches about {estimate:.2e}"
                )
    return ctx.decimal.plus(tail)


# ---------------------------------------------------------------------------
# multiple zeta values
# ---------------------------------------------------------------------------

def expand_star(c: SignedComposition) -> list[SignedComposition]:
    """Non-star compositions whose sum is the star value (merge adjacent blocks)."""
    parts = c.parts
    if not parts:
        return [SignedComposition(())]
    out = []
    for mask in range(1 << (len(parts) - 1)):
        merged = [parts[0]]
        for i in range(1, len(parts)):
            if mask >> (i - 1) & 1:
                merged[-1] = merged[-1] + parts[i]
            else:
                merged.append(parts[i])
        out.append(SignedComposition(tuple(merged)))
    return out


def _mzv_accelerated(c: SignedComposition, inner: PrecisionContext, ctx: PrecisionContext) -> EvalReport:
    # sum_n (-1)^n n^{-s1} zeta_{n-1}(rest) with an unbarred smooth inner sum
    parts = c.parts
    count = cvz_terms_for(inner.working_digits + 3)
    depth = len(parts)
    with localcontext(inner.decimal):
        # level[i] = zeta_j(parts[i:]) for i >= 1, level[depth] = 1
        level = [Decimal(0)] * depth + [Decimal(1)]
        b = []
        for j in range(1, count + 1):
            dj = Decimal(j)
            b.append(level[1] / dj ** parts[0].s)
            for i in range(1, depth):
                level[i] += level[i + 1] / dj ** parts[i].s
        value, err = accelerate_alternating_with_error(b, inner)
    # sum (-1)^n b_n = -sum (-1)^(n-1) b_n
    return make_report(value.copy_negate(), err + inner.eps(1), count, "accelerated", ctx)


def _mzv_direct(c: SignedComposition, inner: PrecisionContext, ctx: PrecisionContext) -> EvalReport:
    parts = c.parts
    depth = len(parts)
    big_n = DEFAULT_CUTOFF
    order = _order_for(inner, big_n)
    with localcontext(inner.decimal):
        # head values zeta_N(parts[i:]) by dynamic programming
        level = [Decimal(0)] * depth + [Decimal(1)]
        exps = sorted({p.s for p in parts})
        for j in range(1, big_n + 1):
            dj = Decimal(j)
            inv = {s: 1 / dj**s for s in exps}
            odd = j % 2
            for i in range(depth):
                p = parts[i]
                term = inv[p.s] * level[i + 1]
                level[i] += -term if (p.barred and odd) else term
        ln_n = hp_ln(big_n, inner)
        inner_exp = Expansion.constant(1)
        estimate = Decimal(0)
        g = None
        for i in range(depth - 1, -1, -1):
            p = parts[i]
            shifted = inner_exp.shift_back() if i < depth - 1 else inner_exp
            f = shifted.mul(Expansion.monomial(1 if p.barred else 0, p.s, 0), order)
            g = f.partial_sum()
            const = level[i] - g.evaluate(big_n, ln_n)
            estimate += g.band(big_n, ln_n, g.order - 2)
            inner_exp = g + Expansion.constant(const)
        bad = g.growing(inner.eps(8), summand=False)
        if bad:
            raise DivergentSeriesError(f"{c} diverges")
        value = const
        estimate += inner.eps(1) * (1 + abs(value)) * depth
    return make_report(value, estimate, big_n, "direct", ctx, ("nested expansion",))


def eval_mzv(
    c: SignedComposition,
    ctx: PrecisionContext,
    strategy: Strategy = "auto",
) -> EvalReport:
    """Alternating multiple zeta (star) value ``zeta(c)``."""
    if c.star:
        if c.depth > MAX_STAR_DEPTH:
            raise DomainError(f"star depth {c.depth} exceeds {MAX_STAR_DEPTH}")
        if not c.admissible:
            raise DivergentSeriesError(f"{c} is not admissible")
        reports = [eval_mzv(x, ctx, strategy) for x in expand_star(c)]
        with localcontext(_inner(ctx).decimal):
            value = sum((r.value for r in reports), Decimal(0))
            est = sum((r.tail_estimate for r in reports), Decimal(0))
        return make_report(value, est, max(r.cutoff_N for r in reports), reports[0].strategy, ctx)
    if c.depth == 0:
        return make_report(Decimal(1), Decimal(0), 0, "direct", ctx)
    if not c.admissible:
        raise DivergentSeriesError(f"{c} is not admissible")
    inner = _inner(ctx)
    eligible = c.parts[0].barred and not any(p.barred for p in c.parts[1:])
    if strategy == "accelerated":
        if not eligible:
            raise UnsupportedError("accelerated MZV evaluation needs a barred first slot only")
        return _mzv_accelerated(c, inner, ctx)
    return _mzv_direct(c, inner, ctx)


# ---------------------------------------------------------------------------
# sums with (n+r)(n+k) denominators
# ---------------------------------------------------------------------------

def _over_power_and_shift(atoms: list[SummandAtom], q: int, c: int) -> SeriesSpec:
    """``atoms / (n**q (n+c))`` for ``q >= 1``."""
    if c == 0:
        return SeriesSpec.of(*atoms, SummandAtom.PowDenom(q + 1))
    extra = [SummandAtom.PowDenom(q - 1)] if q > 1 else []
    return SeriesSpec.of(*atoms, *extra, SummandAtom.RKDenom(0, c))


@dataclass(frozen=True)
class RKSides:
    lhs: list[tuple[Fraction, SeriesSpec]]
    rhs: list[tuple[Fraction, SeriesSpec]]


def rk_relation_sides(
    m1: int, m2: int, r: int, k: int, variant: str, *, as_printed: bool = False
) -> RKSides:
    """Both sides of the ``(n+r)(n+k)`` reduction for a product of two harmonic numbers.

    ``d3`` uses ``H^(m1) H^(m2)``, ``d4`` uses ``Hbar^(m1) Hbar^(m2)`` and
    ``d5`` uses ``H^(m1) Hbar^(m2)``. With ``as_printed`` the ``d4`` right
    side repeats ``n**m2`` in its second term, reproducing a known misprint.
    """
    if m1 < 1 or m2 < 1:
        raise DomainError("m1 and m2 must be positive")
    if not 0 <= r < k:
        raise DomainError(f"need 0 <= r < k, got r={r}, k={k}")
    H, Hb, Alt = SummandAtom.H, SummandAtom.Hbar, SummandAtom.AltSign
    rk = SummandAtom.RKDenom(r, k)
    w = m1 + m2
    width = Fraction(k - r)
    if variant == "d3":
        lhs = [(width, SeriesSpec.of(H(m1), H(m2), rk)), (-width, SeriesSpec.of(H(w), rk))]
        pieces = [([H(m1)], m2), ([H(m2)], m1)]
        last = []
    elif variant == "d4":
        lhs = [(width, SeriesSpec.of(Hb(m1), Hb(m2), rk)), (-width, SeriesSpec.of(H(w), rk))]
        pieces = [([Alt(), Hb(m1)], m2), ([Alt(), Hb(m2)], m2 if as_printed else m1)]
        last = []
    elif variant == "d5":
        lhs = [(width, SeriesSpec.of(H(m1), Hb(m2), rk)), (-width, SeriesSpec.of(Hb(w), rk))]
        pieces = [([Alt(), H(m1)], m2), ([Hb(m2)], m1)]
        last = [Alt()]
    else:
        raise DomainError(f"unknown variant {variant!r}")
    rhs = []
    for j in range(1, k - r + 1):
        c = r + j - 1
        for atoms, q in pieces:
            rhs.append((Fraction(1), _over_power_and_shift(atoms, q, c)))
        rhs.append((Fraction(-2), _over_power_and_shift(last, w, c)))
    return RKSides(lhs, rhs)


def eval_rk_relation(
    m1: int,
    m2: int,
    r: int,
    k: int,
    variant: str,
    ctx: PrecisionContext,
    strategy: Strategy = "direct",
) -> tuple[EvalReport, EvalReport]:
    """Evaluate both sides of a ``d3``/``d4``/``d5`` relation as fused series."""
    sides = rk_relation_sides(m1, m2, r, k, variant)
    return (
        eval_combination(sides.lhs, ctx, strategy),
        eval_combination(sides.rhs, ctx, strategy),
    )

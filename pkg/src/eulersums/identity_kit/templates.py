"""Parametric identity families instantiated for concrete integer parameters.

Each family maps a parameter tuple to an :class:`Identity` whose left side
collects every series (with closed-form coefficients where needed) and whose
right side is the remaining closed form. All template identities are fused,
so series that diverge individually may appear as long as the combined
summand decays.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Callable, Iterable

from ..errors import DomainError
from ..series_engine import SeriesSpec, SummandAtom, rk_relation_sides
from .db import Identity, Policy
from .expr import Expr, Neg, Num, add, const, mul, rational
from .sumspec import LhsTerm

__all__ = ["Template", "TEMPLATES", "instantiate_template", "template_grid", "all_template_identities"]

A = SummandAtom


def _zeta(k: int) -> Expr:
    return const("zeta", k)


def _eta(k: int) -> Expr:
    return const("eta", k)


def _li(k: int) -> Expr:
    return const("li", k)


LN2 = const("ln2")


def _scaled(q: Fraction | int, e: Expr) -> Expr:
    q = Fraction(q)
    if q == 1:
        return e
    if q == -1:
        return Neg(e)
    return mul(rational(q), e)


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def S(factors: Iterable[int | str], q: int, alt: bool = False) -> SeriesSpec:
    """``S(1,~2;q)``-style spec from factor orders (``"~p"`` for alternating)."""
    atoms = []
    for f in factors:
        if isinstance(f, str) and f.startswith("~"):
            atoms.append(A.Hbar(int(f[1:])))
        else:
            atoms.append(A.H(int(f)))
    atoms.append(A.PowDenom(q))
    if alt:
        atoms.append(A.AltSign())
    return SeriesSpec.of(*atoms)


class _Builder:
    """Collects ``coef * series`` terms moved to the left side."""

    def __init__(self) -> None:
        self.terms: list[LhsTerm] = []

    def add(self, coef: Fraction | int | Expr, spec: SeriesSpec) -> None:
        if isinstance(coef, Expr):
            self.terms.append(LhsTerm(coef, spec))
        elif coef:
            self.terms.append(LhsTerm(Fraction(coef), spec))

    def sub(self, coef: Fraction | int | Expr, spec: SeriesSpec) -> None:
        self.add(Neg(coef) if isinstance(coef, Expr) else -Fraction(coef), spec)


@dataclass(frozen=True)
class Template:
    name: str
    params: tuple[str, ...]
    grid: tuple[tuple[int, ...], ...]
    tol: Decimal
    strategy: str
    build: Callable[..., tuple[list[LhsTerm], Expr]]
    check: Callable[..., bool]
    doc: str


# ---------------------------------------------------------------------------
# Stirling and Bell weighted families
# ---------------------------------------------------------------------------

def _b28(p: int, k: int):
    b = _Builder()
    b.add(1, SeriesSpec.of(A.StirOverFact(k), A.PowDenom(p)))
    return b.terms, const("mzvh1", p, k)


def _b29(k: int, p: int):
    b = _Builder()
    b.add(1, SeriesSpec.of(A.StirOverFact(k), A.Y(p), A.PowDenom(1)))
    return b.terms, _scaled(math.factorial(p) * math.comb(k + p, p), _zeta(k + p + 1))


def _b30(k: int, p: int):
    b = _Builder()
    b.add(1, SeriesSpec.of(A.StirOverFact(k), A.H(p + 1), A.PowDenom(1)))
    b.sub(1, SeriesSpec.of(A.StirOverFact(p), A.H(k + 1), A.PowDenom(1)))
    return b.terms, Num(0)


def _b31(k: int, p: int):
    b = _Builder()
    b.add(math.factorial(p), SeriesSpec.of(A.StirOverFact(p), A.Y(k), A.PowDenom(2)))
    b.add(math.factorial(k), SeriesSpec.of(A.StirOverFact(k), A.Y(p), A.PowDenom(2)))
    return b.terms, _scaled(math.factorial(k) * math.factorial(p), mul(_zeta(k + 1), _zeta(p + 1)))


def _b35(m: int):
    b = _Builder()
    b.add(1, SeriesSpec.of(A.StirOverFact(m), A.Hbar(1), A.PowDenom(1)))
    rhs = add(
        mul(const("mzvh1", 1, m), LN2),
        Neg(mul(const("amzv2", m), LN2)),
        Neg(_scaled(m + 1, const("amzv2", m + 1))),
    )
    return b.terms, rhs


def _b37(m: int):
    b = _Builder()
    b.add(1, SeriesSpec.of(A.Y(m), A.PowDenom(1), A.AltSign()))
    return b.terms, _scaled(math.factorial(m), _li(m + 1))


def _b38(m: int):
    b = _Builder()
    b.add(1, SeriesSpec.of(A.Y(m - 1), A.Hbar(1), A.PowDenom(1), A.AltSign()))
    return b.terms, _scaled(math.factorial(m), _zeta(m + 1) - _li(m + 1))


def _b39(m: int):
    b = _Builder()
    b.add(1, SeriesSpec.of(A.StirOverFact(m), A.Hbar(1), A.PowDenom(0), A.AltSign()))
    return b.terms, _li(m + 1) - _scaled(Fraction(_sign(m), math.factorial(m)), LN2 ** (m + 1))


# ---------------------------------------------------------------------------
# products of harmonic numbers against polylogarithms
# ---------------------------------------------------------------------------

def _c3(m: int, p: int):
    b = _Builder()
    b.add(_zeta(m), S([p], 1))
    b.sub(_zeta(p), S([m], 1))
    b.sub(_zeta(p), S([1], m))
    b.add(_zeta(m), S([1], p))
    return b.terms, mul(_zeta(m), _zeta(p + 1)) - mul(_zeta(p), _zeta(m + 1))


def _c4(m: int, p: int):
    b = _Builder()
    b.add(_zeta(m), S([f"~{p}"], 1))
    b.sub(_eta(p), S([m], 1))
    b.sub(_eta(p), S([1], m))
    b.add(_zeta(m), S([1], p, alt=True))
    return b.terms, mul(_zeta(m), _eta(p + 1)) - mul(_eta(p), _zeta(m + 1))


def _c5(m: int, p: int):
    b = _Builder()
    b.add(_eta(m), S([f"~{p}"], 1))
    b.sub(_eta(p), S([f"~{m}"], 1))
    b.sub(_eta(p), S([1], m, alt=True))
    b.add(_eta(m), S([1], p, alt=True))
    return b.terms, mul(_eta(m), _eta(p + 1)) - mul(_eta(p), _eta(m + 1))


def _c8(m: int, p: int):
    b = _Builder()
    b.add(_sign(m), S([1, f"~{p}"], m))
    b.add(_sign(p), S([m, "~1"], p, alt=True))
    for i in range(2, m):
        b.sub(_scaled(_sign(i - 1), _zeta(m + 1 - i)), S([f"~{p}"], i))
    for i in range(2, p):
        b.add(_scaled(_sign(i - 1), _eta(p + 1 - i)), S([m], i))
    b.sub(_eta(p), S([1], m))
    b.add(_zeta(m), S([1], p, alt=True))
    b.sub(_scaled(_sign(p), LN2), S([m], p))
    b.sub(_scaled(_sign(p), LN2), S([m], p, alt=True))
    return b.terms, mul(_zeta(m), _eta(p + 1)) - mul(_eta(p), _zeta(m + 1))


def _c9(m: int, p: int):
    b = _Builder()
    b.add(_sign(p), S(["~1", f"~{m}"], p, alt=True))
    b.sub(_sign(m), S(["~1", f"~{p}"], m, alt=True))
    for i in range(2, m):
        b.sub(_scaled(_sign(i - 1), _eta(m + 1 - i)), S([f"~{p}"], i))
    for i in range(2, p):
        b.add(_scaled(_sign(i - 1), _eta(p + 1 - i)), S([f"~{m}"], i))
    b.sub(_eta(p), S([1], m, alt=True))
    b.add(_eta(m), S([1], p, alt=True))
    b.sub(_scaled(_sign(p), LN2), S([f"~{m}"], p))
    b.sub(_scaled(_sign(p), LN2), S([f"~{m}"], p, alt=True))
    b.add(_scaled(_sign(m), LN2), S([f"~{p}"], m))
    b.add(_scaled(_sign(m), LN2), S([f"~{p}"], m, alt=True))
    return b.terms, mul(_eta(m), _eta(p + 1)) - mul(_eta(p), _eta(m + 1))


def _c10(m: int):
    b = _Builder()
    b.add(_sign(m - 1), S(["~1", "~1"], m))
    b.add(1, S([1, m], 1, alt=True))
    for i in range(1, m):
        b.sub(_scaled(_sign(i - 1), _eta(m + 1 - i)), S(["~1"], i, alt=True))
    b.sub(_scaled(_sign(m - 1), LN2), S(["~1"], m))
    b.sub(_scaled(_sign(m - 1), LN2), S(["~1"], m, alt=True))
    return b.terms, Num(0)


def _c11(m: int):
    b = _Builder()
    b.add(_sign(m), S([1, "~1"], m, alt=True))
    b.add(1, S([1, f"~{m}"], 1, alt=True))
    for i in range(1, m):
        b.sub(_scaled(_sign(i - 1), _zeta(m + 1 - i)), S(["~1"], i, alt=True))
    return b.terms, Num(0)


def _c12(m: int, p: int):
    b = _Builder()
    b.add(_sign(p), S([2, m], p))
    b.sub(_sign(m), S([2, p], m))
    # the double sums only depend on s = i + j, which occurs s - 1 times
    for s in range(2, p + 1):
        b.sub(_scaled((s - 1) * _sign(s), _zeta(p + 2 - s)), S([m], s))
    for s in range(2, m + 1):
        b.add(_scaled((s - 1) * _sign(s), _zeta(m + 2 - s)), S([p], s))
    b.add(_sign(p) * p, S([1, m], p + 1))
    b.sub(_sign(m) * m, S([1, p], m + 1))
    b.sub(_scaled(_sign(p), _zeta(2)), S([m], p))
    b.add(_scaled(_sign(m), _zeta(2)), S([p], m))
    return b.terms, Num(0)


def _c13(m: int, p: int):
    b = _Builder()
    b.add(_sign(m), S([2, f"~{p}"], m, alt=True))
    b.sub(_sign(p), S([2, f"~{m}"], p, alt=True))
    for s in range(2, m + 1):
        b.sub(_scaled((s - 1) * _sign(s), _zeta(m + 2 - s)), S([f"~{p}"], s, alt=True))
    for s in range(2, p + 1):
        b.add(_scaled((s - 1) * _sign(s), _zeta(p + 2 - s)), S([f"~{m}"], s, alt=True))
    b.sub(_sign(m - 1) * m, S([1, f"~{p}"], m + 1, alt=True))
    b.add(_sign(p - 1) * p, S([1, f"~{m}"], p + 1, alt=True))
    b.add(_scaled(_sign(m - 1), _zeta(2)), S([f"~{p}"], m, alt=True))
    b.sub(_scaled(_sign(p - 1), _zeta(2)), S([f"~{m}"], p, alt=True))
    return b.terms, Num(0)


# ---------------------------------------------------------------------------
# (n+r)(n+k) reductions
# ---------------------------------------------------------------------------

def _rk(variant: str):
    def build(m1: int, m2: int, r: int, k: int):
        sides = rk_relation_sides(m1, m2, r, k, variant)
        b = _Builder()
        for c, spec in sides.lhs:
            b.add(c, spec)
        for c, spec in sides.rhs:
            b.sub(c, spec)
        return b.terms, Num(0)

    return build


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

def _grid(*ranges: Iterable[int], where: Callable[..., bool] = lambda *a: True) -> tuple[tuple[int, ...], ...]:
    return tuple(t for t in itertools.product(*ranges) if where(*t))


def _range_check(lo: tuple[int, ...]) -> Callable[..., bool]:
    return lambda *a: all(x >= low for x, low in zip(a, lo))


_STIRLING = Decimal("1e-6")
_PLAIN = Decimal("1e-10")
_ALT_BELL = Decimal("1e-20")
_RK_OK = lambda m1, m2, r, k: m1 >= 1 and m2 >= 1 and 0 <= r < k  # noqa: E731

TEMPLATES: dict[str, Template] = {
    t.name: t
    for t in [
        Template("T_b28", ("p", "k"), _grid(range(1, 5), range(1, 5)), _STIRLING, "direct", _b28,
                 _range_check((1, 1)), "sum s(n,k)/(n! n^p) = zeta(p+1,{1}^(k-1))"),
        Template("T_b29", ("k", "p"), _grid(range(1, 4), range(1, 4)), _STIRLING, "direct", _b29,
                 _range_check((1, 0)), "sum s(n,k) Y_p(n)/(n! n) = p! C(k+p,p) zeta(k+p+1)"),
        Template("T_b30", ("k", "p"), _grid(range(1, 4), range(1, 4)), _STIRLING, "direct", _b30,
                 _range_check((1, 1)), "sum s(n,k) H^(p+1)/(n! n) = sum s(n,p) H^(k+1)/(n! n)"),
        Template("T_b31", ("k", "p"), _grid(range(1, 4), range(1, 4)), _STIRLING, "direct", _b31,
                 _range_check((1, 1)), "p! sum s(n,p) Y_k/(n! n^2) + k! sum s(n,k) Y_p/(n! n^2) = k! p! zeta(k+1) zeta(p+1)"),
        Template("T_b35", ("m",), _grid(range(1, 5)), _STIRLING, "direct", _b35,
                 _range_check((1,)), "sum Hbar s(n,m)/(n n!) in alternating MZVs"),
        Template("T_b37", ("m",), _grid(range(1, 5)), _ALT_BELL, "accel", _b37,
                 _range_check((1,)), "sum Y_m(n)/n (-1)^(n-1) = m! Li_(m+1)(1/2)"),
        Template("T_b38", ("m",), _grid(range(1, 5)), _ALT_BELL, "direct", _b38,
                 _range_check((1,)), "sum Y_(m-1)(n) Hbar/n (-1)^(n-1) = m! (zeta(m+1) - Li_(m+1)(1/2))"),
        Template("T_b39", ("m",), _grid(range(1, 5)), _ALT_BELL, "direct", _b39,
                 _range_check((1,)), "sum Hbar s(n,m)/n! (-1)^(n-1) = Li_(m+1)(1/2) - (-1)^m ln^(m+1)2/m!"),
        Template("T_c3", ("m", "p"), _grid(range(2, 5), range(2, 5)), _PLAIN, "direct", _c3,
                 _range_check((2, 2)), "zeta(m) H^(p) - zeta(p) H^(m) over n, fused"),
        Template("T_c4", ("m", "p"), _grid(range(2, 5), range(1, 5)), _PLAIN, "direct", _c4,
                 _range_check((2, 1)), "zeta(m) Hbar^(p) - eta(p) H^(m) over n, fused"),
        Template("T_c5", ("m", "p"), _grid(range(1, 5), range(1, 5)), _PLAIN, "direct", _c5,
                 _range_check((1, 1)), "eta(m) Hbar^(p) - eta(p) Hbar^(m) over n, fused"),
        Template("T_c8", ("m", "p"), _grid(range(2, 5), range(2, 5)), _PLAIN, "direct", _c8,
                 _range_check((2, 2)), "H Hbar^(p)/n^m against H^(m) Hbar/n^p"),
        Template("T_c9", ("m", "p"), _grid(range(2, 5), range(2, 5)), _PLAIN, "direct", _c9,
                 _range_check((2, 2)), "Hbar Hbar^(m)/n^p against Hbar Hbar^(p)/n^m"),
        Template("T_c10", ("m",), _grid(range(2, 5)), _PLAIN, "direct", _c10,
                 _range_check((2,)), "Hbar^2/n^m against H H^(m)/n, alternating"),
        Template("T_c11", ("m",), _grid(range(2, 5)), _PLAIN, "direct", _c11,
                 _range_check((2,)), "H Hbar/n^m against H Hbar^(m)/n, alternating"),
        Template("T_c12", ("m", "p"), _grid(range(2, 5), range(2, 5)), _PLAIN, "direct", _c12,
                 _range_check((2, 2)), "H^(2) H^(m)/n^p against H^(2) H^(p)/n^m"),
        Template("T_c13", ("m", "p"), _grid(range(1, 5), range(1, 5)), _PLAIN, "direct", _c13,
                 _range_check((1, 1)), "H^(2) Hbar^(p)/n^m against H^(2) Hbar^(m)/n^p, alternating"),
    ]
    + [
        Template(f"T_{v}", ("m1", "m2", "r", "k"),
                 _grid(range(1, 4), range(1, 4), range(0, 3), range(1, 4), where=_RK_OK),
                 _PLAIN, "direct", _rk(v), _RK_OK, doc)
        for v, doc in [
            ("d3", "H^(m1) H^(m2) over (n+r)(n+k)"),
            ("d4", "Hbar^(m1) Hbar^(m2) over (n+r)(n+k)"),
            ("d5", "H^(m1) Hbar^(m2) over (n+r)(n+k)"),
        ]
    ]
}


def instantiate_template(name: str, *params: int) -> Identity:
    """Concrete identity of family ``name`` at integer parameters ``params``."""
    try:
        t = TEMPLATES[name]
    except KeyError:
        raise DomainError(f"unknown template {name!r}") from None
    if len(params) != len(t.params):
        raise DomainError(f"{name} takes parameters {t.params}, got {params}")
    params = tuple(int(p) for p in params)
    if not t.check(*params):
        raise DomainError(f"{name}{params} is outside the valid parameter range")
    lhs, rhs = t.build(*params)
    return Identity(
        id=f"{name}({','.join(map(str, params))})",
        lhs=tuple(lhs),
        rhs=rhs,
        source=name,
        fused=True,
        policy=Policy(t.strategy, t.tol),
    )


def template_grid(name: str) -> list[Identity]:
    return [instantiate_template(name, *p) for p in TEMPLATES[name].grid]


def all_template_identities() -> list[Identity]:
    return [idn for name in TEMPLATES for idn in template_grid(name)]

"""Text forms of series, multiple zeta values and identity left-hand sides.

``S(f1,...,fk;q)`` is ``sum_n prod H^(f_j)(n) / n**q``; a ``~`` before a
factor selects the alternating harmonic number, a ``~`` before ``q`` adds
``(-1)**(n-1)`` and ``@1`` shifts the denominator to ``(n+1)**q``.
``Sum[atom*atom*...]`` spells out any product of summand atoms and
``z(...)`` / ``z*(...)`` are (star) multiple zeta values.

A left-hand side is a signed sum of bodies, each with an optional
coefficient: a rational ``3/2`` or a parenthesised closed form
``(zeta(3))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..errors import DivergentSeriesError, DomainError, ParseError
from ..finite_seq import SignedComposition, SignedIndex
from ..series_engine import SeriesSpec, SummandAtom
from .expr import Expr, Neg, TokenStream, expr_to_text, parse_expr_tokens

__all__ = [
    "Body",
    "LhsTerm",
    "parse_sumspec",
    "parse_body",
    "parse_lhs",
    "body_to_text",
    "lhs_to_text",
    "check_convergent",
]

Body = Union[SeriesSpec, SignedComposition]
Coefficient = Union[Fraction, Expr]


@dataclass(frozen=True)
class LhsTerm:
    coefficient: Coefficient
    body: Body


# ---------------------------------------------------------------------------
# bodies
# ---------------------------------------------------------------------------

def _signed_int(ts: TokenStream) -> tuple[int, bool]:
    barred = ts.accept("~")
    return ts.expect_int(), barred


def _sumspec(ts: TokenStream) -> SeriesSpec:
    start = ts.peek
    ts.expect("(")
    atoms: list[SummandAtom] = []
    if not (ts.peek.kind == "OP" and ts.peek.text == ";"):
        while True:
            tok = ts.peek
            p, barred = _signed_int(ts)
            if p < 1:
                raise ParseError("harmonic orders must be positive", column=tok.pos + 1)
            atoms.append(SummandAtom.Hbar(p) if barred else SummandAtom.H(p))
            if not ts.accept(","):
                break
    ts.expect(";")
    q, alternating = _signed_int(ts)
    shift = 0
    if ts.accept("@"):
        tok = ts.peek
        shift = ts.expect_int()
        if shift not in (0, 1):
            raise ParseError("denominator shift must be 0 or 1", column=tok.pos + 1)
    ts.expect(")")
    atoms.append(SummandAtom.PowDenom(q, shift))
    if alternating:
        atoms.append(SummandAtom.AltSign())
    try:
        return SeriesSpec.of(*atoms)
    except DomainError as exc:
        raise ParseError(str(exc), column=start.pos + 1) from None


def _atom_arg(ts: TokenStream) -> Fraction:
    sign = -1 if ts.accept("-") else 1
    value = Fraction(ts.expect_int())
    if ts.accept("/"):
        value /= ts.expect_int()
    return sign * value


def _general(ts: TokenStream) -> SeriesSpec:
    start = ts.peek
    ts.expect("[")
    atoms = []
    while True:
        tok = ts.peek
        if tok.kind != "NAME":
            ts.error("expected an atom name")
        ts.next()
        args: list[Fraction] = []
        if ts.accept("("):
            args.append(_atom_arg(ts))
            while ts.accept(","):
                args.append(_atom_arg(ts))
            ts.expect(")")
        if tok.text != "GeomFactor":
            if any(a.denominator != 1 for a in args):
                raise ParseError(f"{tok.text} takes integer arguments", column=tok.pos + 1)
            args = [int(a) for a in args]
        if tok.text == "PowDenom" and len(args) == 1:
            args.append(0)
        try:
            atoms.append(SummandAtom(tok.text, tuple(args)))
        except DomainError as exc:
            raise ParseError(str(exc), column=tok.pos + 1) from None
        if not ts.accept("*"):
            break
    ts.expect("]")
    try:
        return SeriesSpec.of(*atoms)
    except DomainError as exc:
        raise ParseError(str(exc), column=start.pos + 1) from None


def _mzv(ts: TokenStream) -> SignedComposition:
    star = ts.accept("*")
    ts.expect("(")
    parts = []
    while True:
        tok = ts.peek
        s, barred = _signed_int(ts)
        if s < 1:
            raise ParseError("composition parts must be positive", column=tok.pos + 1)
        parts.append(SignedIndex(s, barred))
        if not ts.accept(","):
            break
    ts.expect(")")
    return SignedComposition(tuple(parts), star)


def _body(ts: TokenStream) -> Body:
    tok = ts.peek
    if tok.kind == "NAME" and tok.text == "S":
        ts.next()
        return _sumspec(ts)
    if tok.kind == "NAME" and tok.text == "Sum":
        ts.next()
        return _general(ts)
    if tok.kind == "NAME" and tok.text == "z":
        ts.next()
        return _mzv(ts)
    ts.error("expected S(...), Sum[...] or z(...)")


def check_convergent(body: Body) -> None:
    """Reject bodies that diverge on their own."""
    if isinstance(body, SignedComposition):
        if not body.admissible:
            raise DivergentSeriesError(f"{body} diverges (leading part 1)")
        return
    if body.is_euler_sum():
        q = next(a for a in body.atoms if a.kind == "PowDenom").args[0]
        if q < 1 or (q < 2 and not body.alternating):
            raise DivergentSeriesError(f"{body} diverges")


def _finish(ts: TokenStream) -> None:
    if ts.peek.kind != "END":
        ts.error("unexpected trailing input")


def parse_body(text: str, *, allow_divergent: bool = False) -> Body:
    """Parse one ``S(...)``, ``Sum[...]`` or ``z(...)``."""
    ts = TokenStream(text)
    body = _body(ts)
    _finish(ts)
    if not allow_divergent:
        check_convergent(body)
    return body


def parse_sumspec(text: str, *, allow_divergent: bool = False) -> SeriesSpec:
    """Parse ``S(f1,...;[~]q[@1])`` or ``Sum[...]``."""
    body = parse_body(text, allow_divergent=allow_divergent)
    if isinstance(body, SignedComposition):
        raise ParseError("expected a series, got a multiple zeta value")
    return body


def body_to_text(body: Body) -> str:
    return str(body)


# ---------------------------------------------------------------------------
# left-hand sides
# ---------------------------------------------------------------------------

def _coefficient(ts: TokenStream) -> Coefficient | None:
    """Optional ``coef *`` prefix; ``None`` when the term starts with a body."""
    if ts.peek.kind == "INT":
        value = Fraction(ts.expect_int())
        if ts.accept("/"):
            tok = ts.peek
            den = ts.expect_int()
            if den == 0:
                raise ParseError("zero denominator", column=tok.pos + 1)
            value /= den
        ts.expect("*")
        return value
    if ts.accept("("):
        e = parse_expr_tokens(ts)
        ts.expect(")")
        ts.expect("*")
        return e
    return None


def parse_lhs_tokens(ts: TokenStream, *, allow_divergent: bool = False) -> list[LhsTerm]:
    terms = []
    sign = -1 if ts.accept("-") else 1
    while True:
        coef = _coefficient(ts)
        if coef is None:
            coef = Fraction(1)
        body = _body(ts)
        if not allow_divergent:
            check_convergent(body)
        if sign < 0:
            coef = -coef if isinstance(coef, Fraction) else Neg(coef)
        terms.append(LhsTerm(coef, body))
        if ts.accept("+"):
            sign = 1
        elif ts.accept("-"):
            sign = -1
        else:
            return terms


def parse_lhs(text: str, *, allow_divergent: bool = False) -> list[LhsTerm]:
    """Parse a signed sum of (coefficient times) series or MZV bodies."""
    ts = TokenStream(text)
    terms = parse_lhs_tokens(ts, allow_divergent=allow_divergent)
    _finish(ts)
    return terms


def lhs_to_text(terms: list[LhsTerm]) -> str:
    out = []
    for i, t in enumerate(terms):
        c = t.coefficient
        if isinstance(c, Fraction):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            prefix = "" if mag == 1 else f"{mag}*"
        else:
            sign = "+"
            prefix = f"({expr_to_text(c)})*"
        piece = prefix + body_to_text(t.body)
        if i == 0:
            out.append(piece if sign == "+" else "-" + piece)
        else:
            out.append(f"{sign} {piece}")
    return " ".join(out)

"""Identities and the line-oriented ``.eid`` database format.

One identity per line::

    [id] LHS == RHS | policy=accel tol=1e-25 fused erratum variant_of=other

Blank lines and everything after ``#`` are ignored. Options are optional;
missing ones are filled from the shape of the left-hand side.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable

from ..errors import EulerSumsError, ParseError
from ..finite_seq import SignedComposition
from ..hp_numeric import hp_serialize
from .expr import Expr, TokenStream, expr_to_text, parse_expr_tokens
from .sumspec import LhsTerm, lhs_to_text, parse_lhs_tokens

__all__ = [
    "Policy",
    "Identity",
    "default_policy",
    "parse_identity",
    "identity_to_text",
    "load_identities",
    "load_corpus",
    "CORPUS_PATH",
]

STRATEGIES = ("direct", "accel")
TOL_ALTERNATING = Decimal("1e-25")
TOL_PLAIN = Decimal("1e-10")
TOL_WEIGHTED = Decimal("1e-6")

_ID = re.compile(r"[A-Za-z0-9_.(),=-]+")


@dataclass(frozen=True)
class Policy:
    strategy: str
    tol: Decimal


@dataclass(frozen=True)
class Identity:
    """``sum coef * body == closed form`` with its verification policy.

    ``fused`` evaluates all series of the left side as one combined summand,
    which lets individually divergent pieces cancel. ``erratum`` marks a
    transcription that is expected to fail; ``variant_of`` names the entry a
    recomputed variant replaces.
    """

    id: str
    lhs: tuple[LhsTerm, ...]
    rhs: Expr
    source: str = ""
    fused: bool = False
    policy: Policy = Policy("direct", TOL_PLAIN)
    erratum: bool = False
    variant_of: str | None = None

    def __str__(self) -> str:
        return identity_to_text(self)


def default_policy(lhs: Iterable[LhsTerm]) -> Policy:
    """Accelerated and tight for alternating sums, looser for weighted ones."""
    series = [t.body for t in lhs if not isinstance(t.body, SignedComposition)]
    if any(a.kind in ("Y", "StirOverFact") for s in series for a in s.atoms):
        return Policy("direct", TOL_WEIGHTED)
    if all(s.alternating for s in series):
        return Policy("accel", TOL_ALTERNATING)
    return Policy("direct", TOL_PLAIN)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _options(text: str, line: int | None, column: int) -> dict:
    out: dict = {}
    for word in text.split():
        key, _, value = word.partition("=")
        if key in ("fused", "erratum") and not value:
            out[key] = True
        elif key == "policy" and value in STRATEGIES:
            out[key] = value
        elif key == "tol" and value:
            try:
                tol = Decimal(value)
            except InvalidOperation:
                raise ParseError(f"bad tolerance {value!r}", line=line, column=column) from None
            if not tol.is_finite() or tol <= 0:
                raise ParseError(f"tolerance must be positive, got {value!r}", line=line, column=column)
            out[key] = tol
        elif key == "variant_of" and _ID.fullmatch(value or ""):
            out[key] = value
        else:
            raise ParseError(f"unknown option {word!r}", line=line, column=column)
    return out


def parse_identity(text: str, *, line: int | None = None, source: str = "") -> Identity:
    """Parse one ``[id] LHS == RHS | options`` line (comments already removed)."""
    body, bar, opt_text = text.partition("|")
    m = re.match(r"\s*\[([^\]]*)\]", body)
    if not m:
        raise ParseError("expected '[id]' at the start", line=line, column=1)
    ident = m.group(1).strip()
    if not _ID.fullmatch(ident):
        raise ParseError(f"bad identity id {ident!r}", line=line, column=2)
    options = _options(opt_text, line, len(body) + 2) if bar else {}
    fused = options.get("fused", False)
    offset = m.end()
    try:
        ts = TokenStream(body[offset:])
        lhs = parse_lhs_tokens(ts, allow_divergent=fused)
        ts.expect("==")
        rhs = parse_expr_tokens(ts)
        if ts.peek.kind != "END":
            ts.error("unexpected trailing input")
    except ParseError as exc:
        col = exc.column + offset if exc.column is not None else None
        raise ParseError(f"[{ident}] {exc.message}", line=line, column=col) from None
    except EulerSumsError as exc:
        raise ParseError(f"[{ident}] {exc}", line=line) from None
    default = default_policy(lhs)
    policy = Policy(options.get("policy", default.strategy), options.get("tol", default.tol))
    return Identity(
        id=ident,
        lhs=tuple(lhs),
        rhs=rhs,
        source=source or ident,
        fused=fused,
        policy=policy,
        erratum=options.get("erratum", False),
        variant_of=options.get("variant_of"),
    )


def identity_to_text(idn: Identity) -> str:
    opts = [f"policy={idn.policy.strategy}", f"tol={hp_serialize(idn.policy.tol)}"]
    if idn.fused:
        opts.append("fused")
    if idn.erratum:
        opts.append("erratum")
    if idn.variant_of:
        opts.append(f"variant_of={idn.variant_of}")
    return f"[{idn.id}] {lhs_to_text(list(idn.lhs))} == {expr_to_text(idn.rhs)} | {' '.join(opts)}"


def load_identities(lines: Iterable[str], *, source: str = "") -> list[Identity]:
    """Parse ``.eid`` lines; errors carry the 1-based line number."""
    out: list[Identity] = []
    seen: dict[str, int] = {}
    for number, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0].rstrip()
        if not text.strip():
            continue
        idn = parse_identity(text, line=number, source=source)
        if idn.id in seen:
            raise ParseError(f"duplicate id {idn.id!r} (first on line {seen[idn.id]})", line=number)
        seen[idn.id] = number
        out.append(idn)
    ids = set(seen)
    for idn in out:
        if idn.variant_of is not None and idn.variant_of not in ids:
            raise ParseError(f"[{idn.id}] variant_of names unknown id {idn.variant_of!r}", line=seen[idn.id])
    for idn in out:
        if idn.erratum and not any(v.variant_of == idn.id for v in out):
            raise ParseError(f"[{idn.id}] is flagged erratum but has no variant", line=seen[idn.id])
    return out


CORPUS_PATH = "data/corpus.eid"


def load_corpus(path: str | Path | None = None) -> list[Identity]:
    """Load a database file, by default the shipped corpus."""
    if path is None:
        text = resources.files(__package__).joinpath(CORPUS_PATH).read_text(encoding="utf-8")
        return load_identities(text.splitlines(), source="corpus")
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return load_identities(text.splitlines(), source=path.name)


def rational_coefficients(idn: Identity) -> list[Fraction | None]:
    """Rational value of each left-hand coefficient, ``None`` for closed forms."""
    from .expr import as_rational

    return [t.coefficient if isinstance(t.coefficient, Fraction) else as_rational(t.coefficient) for t in idn.lhs]

"""Closed-form expressions: tokenizer, recursive-descent parser, printer, evaluator.

Grammar (usual precedence, left associative, ``^`` binds tightest and takes
an integer exponent)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := primary ("^" ["-"] INT)?
    primary := INT | NAME | NAME "(" INT ("," INT)* ")" | "(" expr ")"

Names: ``zeta(k)``, ``eta(k)``, ``li(k)`` (``Li_k(1/2)``), ``ln2``, ``gamma``,
``mzvh1(m,n)``, ``amzv2(m)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal, DivisionByZero, InvalidOperation, localcontext
from fractions import Fraction

from ..constants import ConstantKey, constant
from ..errors import DomainError, ParseError
from ..hp_numeric import PrecisionContext

__all__ = [
    "Expr",
    "Num",
    "Const",
    "Neg",
    "BinOp",
    "Pow",
    "Token",
    "TokenStream",
    "tokenize",
    "parse_expr",
    "expr_to_text",
    "eval_expr",
    "rational",
    "const",
    "add",
    "mul",
    "as_rational",
]

# name -> (constant kind, arity)
NAMES = {
    "zeta": ("Zeta", 1),
    "eta": ("Eta", 1),
    "li": ("LiHalf", 1),
    "ln2": ("Ln2", 0),
    "gamma": ("Gamma", 0),
    "mzvh1": ("MzvH1", 2),
    "amzv2": ("Amzv2Bar", 1),
}
_KIND_TO_NAME = {kind: name for name, (kind, _) in NAMES.items()}


# ---------------------------------------------------------------------------
# tree
# ---------------------------------------------------------------------------

class Expr:
    """Base class of expression nodes (immutable, hashable, comparable)."""

    prec = 5

    def __add__(self, other: Expr) -> Expr:
        return BinOp("+", self, other)

    def __sub__(self, other: Expr) -> Expr:
        return BinOp("-", self, other)

    def __mul__(self, other: Expr) -> Expr:
        return BinOp("*", self, other)

    def __truediv__(self, other: Expr) -> Expr:
        return BinOp("/", self, other)

    def __neg__(self) -> Expr:
        return Neg(self)

    def __pow__(self, exponent: int) -> Expr:
        return Pow(self, exponent)

    def __str__(self) -> str:
        return expr_to_text(self)


@dataclass(frozen=True, eq=True)
class Num(Expr):
    value: int


@dataclass(frozen=True, eq=True)
class Const(Expr):
    key: ConstantKey


@dataclass(frozen=True, eq=True)
class Neg(Expr):
    operand: Expr
    prec = 3


@dataclass(frozen=True, eq=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr

    @property
    def prec(self) -> int:  # type: ignore[override]
        return 1 if self.op in "+-" else 2


@dataclass(frozen=True, eq=True)
class Pow(Expr):
    base: Expr
    exponent: int
    prec = 4


def rational(q: Fraction | int) -> Expr:
    """Literal for a rational number in the form the parser produces."""
    q = Fraction(q)
    body: Expr = Num(abs(q.numerator))
    if q.denominator != 1:
        body = BinOp("/", body, Num(q.denominator))
    return Neg(body) if q < 0 else body


def const(name: str, *params: int) -> Const:
    """``const("zeta", 3)`` and friends, validated like parsed names."""
    kind, arity = NAMES[name]
    if len(params) != arity:
        raise DomainError(f"{name} takes {arity} parameter(s)")
    return Const(ConstantKey(kind, tuple(params)))


def add(*items: Expr) -> Expr:
    """Left-nested sum; zero items give the literal 0."""
    if not items:
        return Num(0)
    out = items[0]
    for item in items[1:]:
        out = BinOp("+", out, item)
    return out


def mul(*items: Expr) -> Expr:
    if not items:
        return Num(1)
    out = items[0]
    for item in items[1:]:
        out = BinOp("*", out, item)
    return out


# ---------------------------------------------------------------------------
# tokens
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # INT, NAME, OP, END
    text: str
    pos: int


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(==|[-+*/^(),;~@\[\]]))")


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", column=pos + 1)
        start = m.start(m.lastindex)
        kind = ("INT", "NAME", "OP")[m.lastindex - 1]
        tokens.append(Token(kind, m.group(m.lastindex), start))
        pos = m.end()
    tokens.append(Token("END", "", len(text)))
    return tokens


class TokenStream:
    """Cursor over tokens with helpers shared by the expression and sum parsers."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.i]

    def peek_at(self, offset: int) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "END":
            self.i += 1
        return tok

    def accept(self, text: str) -> bool:
        if self.peek.kind == "OP" and self.peek.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        tok = self.peek
        if tok.kind != "OP" or tok.text != text:
            self.error(f"expected {text!r}", tok)
        return self.next()

    def expect_int(self) -> int:
        tok = self.peek
        if tok.kind != "INT":
            self.error("expected an integer", tok)
        self.next()
        return int(tok.text)

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.peek
        found = "end of input" if tok.kind == "END" else repr(tok.text)
        raise ParseError(f"{message}, found {found}", column=tok.pos + 1)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def parse_expr_tokens(ts: TokenStream) -> Expr:
    node = _term(ts)
    while ts.peek.kind == "OP" and ts.peek.text in ("+", "-"):
        op = ts.next().text
        node = BinOp(op, node, _term(ts))
    return node


def _term(ts: TokenStream) -> Expr:
    node = _unary(ts)
    while ts.peek.kind == "OP" and ts.peek.text in ("*", "/"):
        op = ts.next().text
        node = BinOp(op, node, _unary(ts))
    return node


def _unary(ts: TokenStream) -> Expr:
    if ts.accept("-"):
        return Neg(_unary(ts))
    return _power(ts)


def _power(ts: TokenStream) -> Expr:
    base = _primary(ts)
    if ts.accept("^"):
        sign = -1 if ts.accept("-") else 1
        return Pow(base, sign * ts.expect_int())
    return base


def _primary(ts: TokenStream) -> Expr:
    tok = ts.peek
    if tok.kind == "INT":
        ts.next()
        return Num(int(tok.text))
    if tok.kind == "NAME":
        ts.next()
        if tok.text not in NAMES:
            raise ParseError(f"unknown constant {tok.text!r}", column=tok.pos + 1)
        kind, arity = NAMES[tok.text]
        params: list[int] = []
        if arity:
            ts.expect("(")
            params.append(ts.expect_int())
            while ts.accept(","):
                params.append(ts.expect_int())
            ts.expect(")")
            if len(params) != arity:
                raise ParseError(
                    f"{tok.text} takes {arity} parameter(s), got {len(params)}", column=tok.pos + 1
                )
        try:
            return Const(ConstantKey(kind, tuple(params)))
        except DomainError as exc:
            raise ParseError(f"parameter out of range: {exc}", column=tok.pos + 1) from None
    if ts.accept("("):
        node = parse_expr_tokens(ts)
        ts.expect(")")
        return node
    ts.error("expected a number, constant or '('")


def parse_expr(text: str) -> Expr:
    """Parse a closed-form right-hand side."""
    ts = TokenStream(text)
    node = parse_expr_tokens(ts)
    if ts.peek.kind != "END":
        ts.error("unexpected trailing input")
    return node


# ---------------------------------------------------------------------------
# printer
# ---------------------------------------------------------------------------

def expr_to_text(e: Expr) -> str:
    """Minimal-parenthesis text that parses back to the same tree."""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Const):
        name = _KIND_TO_NAME[e.key.kind]
        if not e.key.params:
            return name
        return f"{name}({','.join(map(str, e.key.params))})"
    if isinstance(e, Neg):
        inner = expr_to_text(e.operand)
        return "-" + (f"({inner})" if e.operand.prec < Neg.prec else inner)
    if isinstance(e, Pow):
        base = expr_to_text(e.base)
        if e.base.prec <= Pow.prec:
            base = f"({base})"
        return f"{base}^{e.exponent}"
    if isinstance(e, BinOp):
        left = expr_to_text(e.left)
        right = expr_to_text(e.right)
        if e.left.prec < e.prec:
            left = f"({left})"
        if e.right.prec <= e.prec:
            right = f"({right})"
        sep = f" {e.op} " if e.op in "+-" else e.op
        return f"{left}{sep}{right}"
    raise TypeError(f"not an expression node: {e!r}")


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _eval(e: Expr, ctx: PrecisionContext) -> Decimal:
    if isinstance(e, Num):
        return Decimal(e.value)
    if isinstance(e, Const):
        return constant(e.key, ctx)
    if isinstance(e, Neg):
        return -_eval(e.operand, ctx)
    if isinstance(e, Pow):
        base = _eval(e.base, ctx)
        if e.exponent < 0 and base == 0:
            raise DomainError("zero raised to a negative power")
        return base**e.exponent
    if isinstance(e, BinOp):
        a = _eval(e.left, ctx)
        b = _eval(e.right, ctx)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        if b == 0:
            raise DomainError(f"division by zero in {expr_to_text(e)}")
        return a / b
    raise TypeError(f"not an expression node: {e!r}")


def eval_expr(e: Expr, ctx: PrecisionContext) -> Decimal:
    """Evaluate bottom-up at the context's working precision."""
    try:
        with localcontext(ctx.decimal) as dctx:
            dctx.prec += 5
            value = _eval(e, ctx)
    except (DivisionByZero, InvalidOperation) as exc:
        raise DomainError(f"cannot evaluate {expr_to_text(e)}: {exc!r}") from None
    return ctx.decimal.plus(value)


def as_rational(e: Expr) -> Fraction | None:
    """The value of a purely rational tree, else ``None``."""
    if isinstance(e, Num):
        return Fraction(e.value)
    if isinstance(e, Neg):
        v = as_rational(e.operand)
        return None if v is None else -v
    if isinstance(e, Pow):
        v = as_rational(e.base)
        if v is None or (v == 0 and e.exponent < 0):
            return None
        return v**e.exponent
    if isinstance(e, BinOp):
        a, b = as_rational(e.left), as_rational(e.right)
        if a is None or b is None:
            return None
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        return None if b == 0 else a / b
    return None

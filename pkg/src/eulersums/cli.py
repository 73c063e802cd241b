"""Command-line front end.

Subcommands::

    eulersums verify [GLOB]       check the identity database and template grids
    eulersums eval TEXT           evaluate S(...), Sum[...] or z(...) (or a combination)
    eulersums expand TEXT         rewrite an Euler sum as multiple zeta values
    eulersums const NAME [P...]   print a named constant

Exit codes: 0 success, 1 verification failures, 2 input/parse/I/O error,
3 mathematical precondition error.
"""

from __future__ import annotations

import argparse
import fnmatch
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from decimal import Context, Decimal, localcontext
from pathlib import Path
from typing import Sequence

from .constants import ConstantKey, constant
from .errors import DomainError, EulerSumsError, ParseError, PrecisionError, UnsupportedError
from .finite_seq import SignedComposition
from .hp_numeric import ctx_new, hp_serialize
from .identity_kit import (
    Identity,
    Policy,
    all_template_identities,
    load_corpus,
    parse_lhs,
    parse_sumspec,
    verify_identity,
)
from .identity_kit.verify import VerifyReport, coefficient_value
from .series_engine import eval_mzv, eval_series, make_report
from .stuffle import sum_to_mzv, verify_truncation

__all__ = ["RunConfig", "main", "cmd_verify", "cmd_eval", "cmd_expand", "cmd_const"]

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_MATH = 3

FINITE_CHECK_N = 20
CONST_NAMES = {
    "zeta": "Zeta",
    "eta": "Eta",
    "li": "LiHalf",
    "ln2": "Ln2",
    "gamma": "Gamma",
    "mzvh1": "MzvH1",
    "amzv2": "Amzv2Bar",
    "W": "W",
    "V": "V",
}
_ENGINE = {"auto": "auto", "direct": "direct", "accel": "accelerated"}


@dataclass(frozen=True)
class RunConfig:
    digits: int = 30
    strategy: str = "auto"
    db_path: str | None = None
    output: str = "text"
    parallel: bool = False
    tol: Decimal | None = None
    templates: bool = True

    def __post_init__(self) -> None:
        if self.digits < 10:
            raise PrecisionError(f"digits must be at least 10, got {self.digits}")


def _err(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _math_error(exc: Exception) -> bool:
    return isinstance(exc, (DomainError, UnsupportedError, PrecisionError))


def _round(value: Decimal, digits: int) -> str:
    return hp_serialize(Context(prec=digits).plus(value))


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _natural_key(ident: str) -> tuple:
    return tuple((0, int(c), "") if c.isdigit() else (1, 0, c) for c in re.split(r"(\d+)", ident) if c)


@dataclass(frozen=True)
class _Failure:
    id: str
    message: str


def _verify_one(job: tuple[Identity, int, Decimal | None]) -> VerifyReport | _Failure:
    idn, digits, tol = job
    try:
        return verify_identity(idn, ctx_new(digits), tol=tol)
    except EulerSumsError as exc:
        return _Failure(idn.id, str(exc))


def _apply_strategy(idn: Identity, strategy: str) -> Identity:
    if strategy == "auto":
        return idn
    return Identity(
        id=idn.id,
        lhs=idn.lhs,
        rhs=idn.rhs,
        source=idn.source,
        fused=idn.fused,
        policy=Policy(strategy, idn.policy.tol),
        erratum=idn.erratum,
        variant_of=idn.variant_of,
    )


def _report_json(r: VerifyReport, digits: int) -> str:
    return json.dumps(
        {
            "id": r.id,
            "status": r.status,
            "digits_agreed": r.digits_agreed,
            "lhs": _round(r.lhs, digits),
            "rhs": _round(r.rhs, digits),
            "delta": hp_serialize(Context(prec=6).plus(r.delta)),
            "runtime_ms": r.runtime_ms,
        }
    )


def _report_text(r: VerifyReport) -> str:
    line = f"{r.id:<20} {r.status:<13} digits={r.digits_agreed:>3}  delta={float(r.delta):.2e}"
    if r.status in ("erratum", "fail", "low-precision"):
        line += "  " + "; ".join(r.notes)
    return line


def cmd_verify(config: RunConfig, pattern: str | None = None) -> int:
    """Verify the database and the template grids; exit 0 iff nothing fails."""
    try:
        identities = load_corpus(config.db_path)
    except ParseError as exc:
        _err(f"{config.db_path or 'corpus'}: {exc}")
        return EXIT_INPUT
    if config.templates:
        identities = identities + all_template_identities()
    if pattern:
        identities = [i for i in identities if fnmatch.fnmatchcase(i.id, pattern)]
    identities = sorted(identities, key=lambda i: _natural_key(i.id))
    jobs = [(_apply_strategy(i, config.strategy), config.digits, config.tol) for i in identities]
    if config.parallel and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=os.cpu_count()) as pool:
            results = list(pool.map(_verify_one, jobs, chunksize=4))
    else:
        results = [_verify_one(j) for j in jobs]
    counts = {"pass": 0, "erratum": 0, "low-precision": 0, "fail": 0, "error": 0}
    for res in results:
        if isinstance(res, _Failure):
            counts["error"] += 1
            if config.output == "json":
                print(json.dumps({"id": res.id, "status": "error", "message": res.message}))
            else:
                print(f"{res.id:<20} error         {res.message}")
            continue
        counts[res.status] += 1
        print(_report_json(res, config.digits) if config.output == "json" else _report_text(res))
    summary = (
        f"{len(results)} identities: {counts['pass']} pass, {counts['erratum']} erratum, "
        f"{counts['low-precision']} low-precision, {counts['fail']} fail, {counts['error']} error"
    )
    print(summary, file=sys.stderr if config.output == "json" else sys.stdout)
    if counts["low-precision"]:
        print(f"warning: {counts['low-precision']} low-precision result(s)", file=sys.stderr)
    if counts["error"]:
        return EXIT_MATH
    return EXIT_FAIL if counts["fail"] else EXIT_OK


# ---------------------------------------------------------------------------
# eval / expand / const
# ---------------------------------------------------------------------------

def cmd_eval(text: str, config: RunConfig) -> int:
    """Evaluate a series, MZV or rational-coefficient combination of them."""
    try:
        terms = parse_lhs(text)
    except ParseError as exc:
        _err(str(exc))
        return EXIT_INPUT
    except EulerSumsError as exc:
        _err(str(exc))
        return EXIT_MATH
    ctx = ctx_new(config.digits)
    engine = _ENGINE[config.strategy]
    try:
        reports = []
        for t in terms:
            if isinstance(t.body, SignedComposition):
                rep = eval_mzv(t.body, ctx, engine)
            else:
                rep = eval_series(t.body, ctx, engine)
            reports.append((coefficient_value(t.coefficient, ctx), rep))
    except EulerSumsError as exc:
        _err(str(exc))
        return EXIT_MATH if _math_error(exc) else EXIT_INPUT
    with localcontext(ctx.decimal):
        value = sum((c * r.value for c, r in reports), Decimal(0))
        estimate = sum((abs(c) * r.tail_estimate for c, r in reports), Decimal(0))
    strategy = ",".join(sorted({r.strategy for _, r in reports}))
    rep = make_report(value, estimate, max(r.cutoff_N for _, r in reports), strategy, ctx)
    shown = _round(rep.value, config.digits)
    if config.output == "json":
        print(json.dumps({
            "input": text,
            "value": shown,
            "digits_claimed": rep.digits_claimed,
            "strategy": rep.strategy,
            "cutoff": rep.cutoff_N,
        }))
    else:
        print(f"value          = {shown}")
        print(f"digits_claimed = {rep.digits_claimed}")
        print(f"strategy       = {rep.strategy}")
        print(f"cutoff         = {rep.cutoff_N}")
    return EXIT_OK


def cmd_expand(text: str, config: RunConfig | None = None) -> int:
    """Print the MZV expansion of an Euler sum with a finite-n exactness check."""
    config = config or RunConfig()
    try:
        spec = parse_sumspec(text)
    except ParseError as exc:
        _err(str(exc))
        return EXIT_INPUT
    except EulerSumsError as exc:
        _err(str(exc))
        return EXIT_MATH
    try:
        combination = sum_to_mzv(spec)
        exact = verify_truncation(spec, combination, FINITE_CHECK_N)
    except EulerSumsError as exc:
        _err(str(exc))
        return EXIT_MATH
    if config.output == "json":
        print(json.dumps({
            "input": text,
            "expansion": str(combination),
            "terms": {k: str(v) for k, v in combination.as_dict().items()},
            "finite_check_n": FINITE_CHECK_N,
            "finite_check": exact,
        }))
    else:
        print(combination)
        print(f"finite check n={FINITE_CHECK_N}: {'exact' if exact else 'MISMATCH'}")
    return EXIT_OK if exact else EXIT_FAIL


def cmd_const(name: str, params: Sequence[int], config: RunConfig) -> int:
    """Print a named constant to the requested number of digits."""
    if name not in CONST_NAMES:
        _err(f"unknown constant {name!r}; choose from {', '.join(CONST_NAMES)}")
        return EXIT_INPUT
    try:
        key = ConstantKey(CONST_NAMES[name], tuple(params))
        value = constant(key, ctx_new(config.digits))
    except EulerSumsError as exc:
        _err(str(exc))
        return EXIT_MATH
    shown = _round(value, config.digits)
    if config.output == "json":
        print(json.dumps({"name": name, "params": list(params), "digits": config.digits, "value": shown}))
    else:
        print(shown)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _tolerance(text: str) -> Decimal:
    try:
        tol = Decimal(text)
    except ArithmeticError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not tol.is_finite() or tol <= 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return tol


def _digits(text: str) -> int:
    try:
        d = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if d < 10:
        raise argparse.ArgumentTypeError("digits must be at least 10")
    return d


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=_digits, default=30, help="target decimal digits (default 30)")
    common.add_argument("--strategy", choices=("auto", "direct", "accel"), default="auto",
                        help="summation strategy; auto follows each identity's policy")
    common.add_argument("--output", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="eulersums", description="Euler sums and multiple zeta values.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="verify the identity database")
    p.add_argument("pattern", nargs="?", help="glob on identity ids, e.g. 'b4*'")
    p.add_argument("--db", dest="db_path", help="identity database (.eid); default is the shipped corpus")
    p.add_argument("--parallel", action="store_true", help="verify identities in worker processes")
    p.add_argument("--tol", type=_tolerance, help="override every identity's tolerance")
    p.add_argument("--no-templates", dest="templates", action="store_false",
                   help="skip the parametric template grids")

    p = sub.add_parser("eval", parents=[common], help="evaluate a series or MZV")
    p.add_argument("text")

    p = sub.add_parser("expand", parents=[common], help="expand an Euler sum into MZVs")
    p.add_argument("text")

    p = sub.add_parser("const", parents=[common], help="print a named constant")
    p.add_argument("name")
    p.add_argument("params", nargs="*", type=int)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    config = RunConfig(
        digits=args.digits,
        strategy=args.strategy,
        db_path=getattr(args, "db_path", None),
        output=args.output,
        parallel=getattr(args, "parallel", False),
        tol=getattr(args, "tol", None),
        templates=getattr(args, "templates", True),
    )
    if args.command == "verify":
        if config.db_path is not None and not Path(config.db_path).is_file():
            _err(f"cannot read database {config.db_path}")
            return EXIT_INPUT
        return cmd_verify(config, args.pattern)
    if args.command == "eval":
        return cmd_eval(args.text, config)
    if args.command == "expand":
        return cmd_expand(args.text, config)
    return cmd_const(args.name, args.params, config)


if __name__ == "__main__":
    sys.exit(main())

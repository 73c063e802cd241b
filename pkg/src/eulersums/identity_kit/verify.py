"""Numerical verification of identities.

The left side is evaluated through the series engine, the right side through
the constant cache, and the difference is judged against both the identity's
tolerance and the error budget the evaluations claim:

* ``pass``: the difference is within the budget and the budget is below the
  tolerance;
* ``low-precision``: the difference is within the budget but the budget
  itself exceeds the tolerance, so agreement cannot be certified;
* ``fail``: the difference exceeds what the claimed errors explain;
* ``erratum``: an entry flagged as a known misprint fails as expected.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from ..errors import DivergentSeriesError, EulerSumsError
from ..finite_seq import SignedComposition
from ..hp_numeric import PrecisionContext, ctx_new, hp_abs_log10
from ..series_engine import eval_combination, eval_mzv, eval_series, summand_values
from .db import Identity
from .expr import eval_expr
from .sumspec import LhsTerm, check_convergent

__all__ = [
    "VerifyReport",
    "verify_identity",
    "eval_lhs",
    "coefficient_value",
    "check_fused_decay",
    "DECAY_INDEX",
]

DECAY_INDEX = 10**4
DECAY_LIMIT = Decimal("1e-4")


@dataclass(frozen=True)
class VerifyReport:
    id: str
    status: str
    lhs: Decimal
    rhs: Decimal
    delta: Decimal
    digits_agreed: int
    budget: Decimal
    tol: Decimal
    runtime_ms: float
    notes: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.status in ("pass", "erratum")


def coefficient_value(c, ctx: PrecisionContext) -> Decimal:
    if isinstance(c, Fraction):
        with localcontext(ctx.decimal):
            return Decimal(c.numerator) / Decimal(c.denominator)
    return eval_expr(c, ctx)


def _engine_strategy(policy_strategy: str) -> str:
    return "auto" if policy_strategy == "accel" else "direct"


def check_fused_decay(terms: list[tuple[Decimal, object]], label: str) -> None:
    """Empirical convergence check of a fused summand near ``n = 10**4``.

    Averages two neighbouring summands so that convergent alternating parts
    cancel and only a non-alternating ``c/n`` remnant is measured.
    """
    ctx = ctx_new(10)
    a, b = summand_values(terms, DECAY_INDEX + 1, ctx)[-2:]
    value = (a + b) / 2
    if abs(value) >= DECAY_LIMIT:
        raise DivergentSeriesError(
            f"{label}: combined summand is {value:.3e} at n={DECAY_INDEX}, not decaying"
        )


def _individually_divergent(spec) -> bool:
    try:
        check_convergent(spec)
    except DivergentSeriesError:
        return True
    return False


def eval_lhs(
    lhs: tuple[LhsTerm, ...] | list[LhsTerm],
    ctx: PrecisionContext,
    strategy: str = "accel",
    *,
    fused: bool = False,
    label: str = "lhs",
) -> tuple[Decimal, Decimal, list[str]]:
    """Value, absolute error budget and strategies used for a left-hand side."""
    engine = _engine_strategy(strategy)
    value = Decimal(0)
    budget = Decimal(0)
    used: list[str] = []
    series = []
    for t in lhs:
        c = coefficient_value(t.coefficient, ctx)
        if isinstance(t.body, SignedComposition):
            rep = eval_mzv(t.body, ctx, engine)
            with localcontext(ctx.decimal):
                value += c * rep.value
                budget += abs(c) * rep.tail_estimate
            used.append(rep.strategy)
        else:
            series.append((c, t.body))
    if fused and series:
        if any(_individually_divergent(spec) for _, spec in series):
            check_fused_decay(series, label)
        rep = eval_combination(series, ctx, engine)
        with localcontext(ctx.decimal):
            value += rep.value
            budget += rep.tail_estimate
        used.append(rep.strategy)
    else:
        for c, spec in series:
            rep = eval_series(spec, ctx, engine)
            with localcontext(ctx.decimal):
                value += c * rep.value
                budget += abs(c) * rep.tail_estimate
            used.append(rep.strategy)
    return value, budget, used


def _digits(delta: Decimal, ctx: PrecisionContext) -> int:
    if delta == 0:
        return ctx.working_digits
    return min(ctx.working_digits, max(0, math.floor(-hp_abs_log10(delta))))


def verify_identity(idn: Identity, ctx: PrecisionContext, *, tol: Decimal | None = None) -> VerifyReport:
    """Evaluate both sides of ``idn`` and classify the agreement."""
    tol = idn.policy.tol if tol is None else Decimal(tol)
    start = time.perf_counter()
    try:
        lhs, lhs_err, used = eval_lhs(idn.lhs, ctx, idn.policy.strategy, fused=idn.fused, label=idn.id)
        rhs = eval_expr(idn.rhs, ctx)
    except EulerSumsError as exc:
        exc.identity_id = idn.id
        exc.args = (f"[{idn.id}] {exc.args[0] if exc.args else exc}",) + exc.args[1:]
        raise
    with localcontext(ctx.decimal):
        delta = abs(lhs - rhs)
        # rounding of the two values and of the closed form's constants
        budget = lhs_err + ctx.eps(3) * (1 + abs(lhs) + abs(rhs))
    notes = [f"strategies: {','.join(sorted(set(used)))}"]
    if delta > budget:
        status = "fail"
    elif budget > tol:
        status = "low-precision"
    elif delta < tol:
        status = "pass"
    else:
        status = "fail"
    if idn.erratum:
        if status == "fail":
            status = "erratum"
            notes.append("printed form fails as expected; see variant")
        else:
            notes.append(f"flagged as erratum but evaluated {status}")
            status = "fail"
    elapsed = (time.perf_counter() - start) * 1000
    return VerifyReport(
        id=idn.id,
        status=status,
        lhs=lhs,
        rhs=rhs,
        delta=delta,
        digits_agreed=_digits(delta, ctx),
        budget=budget,
        tol=tol,
        runtime_ms=round(elapsed, 3),
        notes=tuple(notes),
    )

"""Series evaluation: Euler sums, Stirling/Bell weighted sums and alternating MZVs."""

from .accel import accelerate_alternating, accelerate_alternating_with_error, cvz_terms_for
from .asymptotic import Expansion
from .engine import (
    accelerable,
    asymptotic_tail,
    eval_combination,
    eval_mzv,
    eval_rk_relation,
    eval_series,
    expand_star,
    rk_relation_sides,
    summand_at,
    summand_expansion,
    summand_values,
)
from .spec import EvalReport, SeriesSpec, SummandAtom, make_report

__all__ = [
    "EvalReport",
    "Expansion",
    "SeriesSpec",
    "SummandAtom",
    "accelerable",
    "accelerate_alternating",
    "accelerate_alternating_with_error",
    "asymptotic_tail",
    "cvz_terms_for",
    "eval_combination",
    "eval_mzv",
    "eval_rk_relation",
    "eval_series",
    "expand_star",
    "make_report",
    "rk_relation_sides",
    "summand_at",
    "summand_expansion",
    "summand_values",
]

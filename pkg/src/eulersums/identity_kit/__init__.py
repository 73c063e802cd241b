"""Identity database: closed-form parser, ``.eid`` loader, templates and verification."""

from .db import Identity, Policy, default_policy, identity_to_text, load_corpus, load_identities, parse_identity
from .expr import Expr, eval_expr, expr_to_text, parse_expr
from .sumspec import LhsTerm, lhs_to_text, parse_body, parse_lhs, parse_sumspec
from .templates import TEMPLATES, all_template_identities, instantiate_template, template_grid
from .verify import VerifyReport, eval_lhs, verify_identity

__all__ = [
    "Expr",
    "Identity",
    "LhsTerm",
    "Policy",
    "TEMPLATES",
    "VerifyReport",
    "all_template_identities",
    "default_policy",
    "eval_expr",
    "eval_lhs",
    "expr_to_text",
    "identity_to_text",
    "instantiate_template",
    "lhs_to_text",
    "load_corpus",
    "load_identities",
    "parse_body",
    "parse_expr",
    "parse_identity",
    "parse_lhs",
    "parse_sumspec",
    "template_grid",
    "verify_identity",
]

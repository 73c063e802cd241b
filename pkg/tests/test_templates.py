from __future__ import annotations

from decimal import Decimal

import pytest

from eulersums.errors import DomainError
from eulersums.identity_kit import (
    TEMPLATES,
    eval_expr,
    eval_lhs,
    expr_to_text,
    instantiate_template,
    parse_identity,
    template_grid,
    verify_identity,
)

GRID_SIZES = {
    "T_b28": 16, "T_b29": 9, "T_b30": 9, "T_b31": 9, "T_b35": 4, "T_b37": 4, "T_b38": 4, "T_b39": 4,
    "T_c3": 9, "T_c4": 12, "T_c5": 16, "T_c8": 9, "T_c9": 9, "T_c10": 3, "T_c11": 3, "T_c12": 9,
    "T_c13": 16, "T_d3": 54, "T_d4": 54, "T_d5": 54,
}


def test_grid_sizes_are_fixed():
    assert {name: len(TEMPLATES[name].grid) for name in TEMPLATES} == GRID_SIZES


def test_tolerances_per_family():
    for name, t in TEMPLATES.items():
        if name in ("T_b28", "T_b29", "T_b30", "T_b31", "T_b35"):
            assert t.tol == Decimal("1e-6")
        elif name in ("T_b37", "T_b38", "T_b39"):
            assert t.tol == Decimal("1e-20")
        else:
            assert t.tol == Decimal("1e-10")


def test_stirling_bell_instance_has_integer_multiple_of_zeta_five():
    idn = instantiate_template("T_b29", 2, 2)
    assert idn.id == "T_b29(2,2)"
    assert idn.fused
    assert expr_to_text(idn.rhs) == "12*zeta(5)"


def test_bell_instance_at_m1_matches_the_plain_alternating_sum(ctx30):
    idn = instantiate_template("T_b37", 1)
    plain = parse_identity("[b43] S(1;~1) == (zeta(2)-ln2^2)/2")
    value, _, _ = eval_lhs(idn.lhs, ctx30, idn.policy.strategy, fused=True)
    assert abs(value - eval_expr(plain.rhs, ctx30)) < Decimal("1e-28")


def test_bad_parameters():
    with pytest.raises(DomainError):
        instantiate_template("T_zz", 1)
    with pytest.raises(DomainError):
        instantiate_template("T_b28", 1)
    with pytest.raises(DomainError):
        instantiate_template("T_d3", 1, 1, 2, 1)


@pytest.mark.parametrize("name", sorted(TEMPLATES))
def test_first_instance_of_each_family_passes(ctx30, name):
    idn = template_grid(name)[0]
    report = verify_identity(idn, ctx30)
    assert report.status == "pass", (idn.id, report.delta, report.budget)


def test_instances_round_trip_through_text():
    for name in TEMPLATES:
        idn = template_grid(name)[-1]
        again = parse_identity(str(idn))
        assert again.lhs == idn.lhs and again.rhs == idn.rhs and again.policy == idn.policy

from __future__ import annotations

from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulersums.errors import DivergentSeriesError, DomainError, UnsupportedError
from eulersums.finite_seq import SignedComposition, SignedIndex, mhn
from eulersums.identity_kit import parse_sumspec
from eulersums.series_engine import eval_series
from eulersums.stuffle import (
    MHNTerm,
    MZVCombination,
    euler_partial_sum,
    expand_factors,
    normalize,
    stuffle_product,
    sum_to_mzv,
    verify_finite,
    verify_truncation,
)

C = SignedComposition.of


def as_dict(terms) -> dict[str, Fraction]:
    return {str(t.composition): t.coefficient for t in terms}


indices = st.builds(SignedIndex, st.integers(1, 4), st.booleans())
plain_compositions = st.lists(indices, max_size=3).map(lambda ps: SignedComposition(tuple(ps)))


def test_harmonic_times_cubic_harmonic():
    assert as_dict(stuffle_product(C(1), C(3))) == {"z(1,3)": 1, "z(3,1)": 1, "z(4)": 1}


def test_barred_square_merges_to_unbarred():
    assert as_dict(stuffle_product(C("~1"), C("~1"))) == {"z(~1,~1)": 2, "z(2)": 1}


def test_mixed_product():
    assert as_dict(stuffle_product(C(1), C("~1"))) == {"z(1,~1)": 1, "z(~1,1)": 1, "z(~2)": 1}


def test_products_with_the_empty_composition():
    assert as_dict(stuffle_product(C(), C(2, 1))) == {"z(2,1)": 1}
    assert as_dict(expand_factors([])) == {"z()": 1}


def test_star_compositions_are_rejected():
    with pytest.raises(DomainError):
        stuffle_product(C(1, star=True), C(2))


def test_expanded_factor_lists():
    assert as_dict(expand_factors([SignedIndex(1), SignedIndex(3)])) == {"z(1,3)": 1, "z(3,1)": 1, "z(4)": 1}
    factors = [SignedIndex(1, True), SignedIndex(1, True), SignedIndex(1)]
    terms = expand_factors(factors)
    # 13 ordered set partitions merge into 8 distinct compositions
    assert sum(t.coefficient for t in terms) == 13
    assert len(terms) == 8
    assert all(verify_finite(terms, factors, n) for n in range(1, 41))


def test_finite_check_detects_perturbation():
    factors = [SignedIndex(1), SignedIndex(3)]
    terms = expand_factors(factors)
    assert verify_finite(terms, factors, 5)
    bad = [MHNTerm(terms[0].coefficient + 1, terms[0].composition), *terms[1:]]
    assert not verify_finite(bad, factors, 5)
    assert verify_finite(expand_factors([]), [], 9)


def test_normalize_merges_and_drops():
    terms = [MHNTerm(1, C(2)), MHNTerm(-1, C(2)), MHNTerm(Fraction(1, 2), C(3)), MHNTerm(Fraction(1, 2), C(3))]
    assert as_dict(normalize(terms)) == {"z(3)": 1}


def test_sum_of_two_harmonic_numbers_over_fourth_power():
    got = sum_to_mzv(parse_sumspec("S(1,3;4)"))
    assert got.as_dict() == {
        "z(8)": 1,
        "z(4,4)": 1,
        "z(5,3)": 1,
        "z(7,1)": 1,
        "z(4,1,3)": 1,
        "z(4,3,1)": 1,
    }


def test_alternating_barred_square():
    spec = parse_sumspec("S(~1,~1;~2)")
    got = sum_to_mzv(spec)
    assert got.as_dict() == {"z(~4)": -1, "z(~2,2)": -1, "z(3,~1)": -2, "z(~2,~1,~1)": -2}
    assert all(verify_truncation(spec, got, n) for n in (1, 2, 3, 7, 20))


def test_pure_power_and_text_form():
    assert str(sum_to_mzv(parse_sumspec("S(;5)"))) == "z(5)"
    assert str(sum_to_mzv(parse_sumspec("S(;3)"))) == "z(3)"
    assert str(MZVCombination()) == "0"
    assert str(sum_to_mzv(parse_sumspec("S(1;2)"))) == "z(3) + z(2,1)"


def test_non_euler_sums_are_unsupported():
    with pytest.raises(UnsupportedError):
        sum_to_mzv(parse_sumspec("S(1;3@1)"))
    with pytest.raises(UnsupportedError):
        sum_to_mzv(parse_sumspec("Sum[Y(2)*PowDenom(3)]"))
    with pytest.raises(UnsupportedError):
        euler_partial_sum(parse_sumspec("Sum[Y(2)*PowDenom(3)]"), 4)


def test_divergent_expansions_are_rejected():
    with pytest.raises(DivergentSeriesError):
        sum_to_mzv(parse_sumspec("S(1;1)", allow_divergent=True))


@pytest.mark.parametrize("text", ["S(1,3;4)", "S(~1,~1;~2)", "S(1,~1;2)", "S(2,~3,1;~3)", "S(~1;~1)", "S(2;3)"])
def test_expansion_value_matches_series(ctx30, text):
    spec = parse_sumspec(text)
    combo = sum_to_mzv(spec)
    assert abs(combo.evaluate(ctx30).value - eval_series(spec, ctx30).value) < Decimal("1e-27")


@settings(max_examples=100, deadline=None)
@given(plain_compositions, plain_compositions)
def test_stuffle_is_commutative(a, b):
    assert stuffle_product(a, b) == stuffle_product(b, a)


@settings(max_examples=60, deadline=None)
@given(plain_compositions, plain_compositions, plain_compositions)
def test_stuffle_is_associative(a, b, c):
    def times(terms, right):
        out = []
        for t in terms:
            for u in stuffle_product(t.composition, right):
                out.append(MHNTerm(t.coefficient * u.coefficient, u.composition))
        return normalize(out)

    left = times(stuffle_product(a, b), c)
    right_terms = []
    for t in stuffle_product(b, c):
        for u in stuffle_product(a, t.composition):
            right_terms.append(MHNTerm(t.coefficient * u.coefficient, u.composition))
    assert left == normalize(right_terms)


@settings(max_examples=100, deadline=None)
@given(plain_compositions, plain_compositions, st.integers(0, 9))
def test_stuffle_matches_product_of_partial_sums(a, b, n):
    lhs = sum((t.coefficient * mhn(n, t.composition) for t in stuffle_product(a, b)), Fraction(0))
    assert lhs == mhn(n, a) * mhn(n, b)


@settings(max_examples=100, deadline=None)
@given(st.lists(indices, max_size=4), st.sampled_from([1, 2, 3, 7, 25]))
def test_expansions_hold_exactly(factors, n):
    assert verify_finite(expand_factors(factors), factors, n)


@settings(max_examples=60, deadline=None)
@given(st.lists(indices, max_size=3), st.integers(1, 4), st.booleans(), st.integers(1, 12))
def test_euler_sum_expansion_holds_for_partial_sums(factors, q, alternating, n):
    atoms = ",".join(("~" if f.barred else "") + str(f.s) for f in factors)
    spec = parse_sumspec(f"S({atoms};{'~' if alternating else ''}{q})", allow_divergent=True)
    try:
        combo = sum_to_mzv(spec)
    except DivergentSeriesError:
        return
    assert verify_truncation(spec, combo, n)

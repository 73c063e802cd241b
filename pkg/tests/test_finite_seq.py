from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulersums.errors import DomainError, ParseError
from eulersums.finite_seq import (
    SignedComposition,
    SignedIndex,
    bell_y,
    bernoulli,
    euler_zero,
    harmonic,
    harmonic_alt,
    mhn,
    newton_from_power_sums,
    stirling1,
    stirling1_harmonic,
    sym_brute,
    zeta_partial,
)


def brute_mhn(n: int, c: SignedComposition) -> Fraction:
    """Nested sum over all index tuples, strict or weak descent."""
    total = Fraction(0)
    depth = len(c.parts)
    for ks in itertools.product(range(1, n + 1), repeat=depth):
        if c.star:
            ok = all(a >= b for a, b in zip(ks, ks[1:]))
        else:
            ok = all(a > b for a, b in zip(ks, ks[1:]))
        if ok:
            term = Fraction(1)
            for k, p in zip(ks, c.parts):
                term *= Fraction((-1) ** k if p.barred else 1, k**p.s)
            total += term
    return total


def rising_factorial_coefficients(n: int) -> list[int]:
    """Coefficients of x(x+1)...(x+n-1), lowest degree first."""
    poly = [1]
    for j in range(n):
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] += c
            nxt[i] += j * c
        poly = nxt
    return poly


compositions = st.lists(
    st.builds(SignedIndex, st.integers(1, 3), st.booleans()), min_size=0, max_size=3
).flatmap(lambda parts: st.builds(SignedComposition, st.just(tuple(parts)), st.booleans()))


def test_harmonic_small_values():
    assert harmonic(0, 3) == 0
    assert harmonic(3, 1) == Fraction(11, 6)
    assert harmonic(3, 2) == Fraction(49, 36)


def test_alternating_harmonic_small_values():
    assert harmonic_alt(0, 1) == 0
    assert harmonic_alt(2, 1) == Fraction(1, 2)
    assert harmonic_alt(3, 2) == Fraction(31, 36)


def test_negative_length_is_rejected():
    with pytest.raises(DomainError):
        harmonic(-1, 1)
    with pytest.raises(DomainError):
        mhn(-1, SignedComposition.of(2))


def test_zeta_partial_special_arguments():
    for n in range(51):
        for m in range(1, 6):
            assert zeta_partial(n, m, 1) == harmonic(n, m)
            assert zeta_partial(n, m, -1) == -harmonic_alt(n, m)
    assert zeta_partial(0, 2, -1) == 0
    assert zeta_partial(2, 1, Fraction(1, 2)) == Fraction(5, 8)


def test_mhn_small_values():
    assert mhn(1, SignedComposition.of(2, 1)) == 0
    assert mhn(7, SignedComposition(())) == 1
    assert mhn(7, SignedComposition((), True)) == 1
    assert mhn(2, SignedComposition.of(1, 1)) == Fraction(1, 2)


def test_depth_one_mhn_matches_harmonic_numbers():
    for n in range(15):
        assert mhn(n, SignedComposition.of(3)) == harmonic(n, 3)
        assert mhn(n, SignedComposition.of("~2")) == -harmonic_alt(n, 2)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 7), compositions)
def test_mhn_matches_brute_force(n, c):
    assert mhn(n, c) == brute_mhn(n, c)


def test_composition_text_forms():
    c = SignedComposition.parse("z(~2,1,1)")
    assert c == SignedComposition.of("~2", 1, 1)
    assert (c.depth, c.weight, c.admissible) == (3, 4, True)
    assert str(c) == "z(~2,1,1)"
    assert str(SignedComposition.parse("z*(3,~1)")) == "z*(3,~1)"
    assert not SignedComposition.of(1, 2).admissible
    assert SignedComposition.of("~1", 2).admissible
    with pytest.raises(ParseError):
        SignedComposition.parse("z(2,1")


def test_signed_index_requires_positive_exponent():
    with pytest.raises(DomainError):
        SignedIndex(0)


def test_stirling_small_values():
    assert stirling1(0, 0) == 1
    assert all(stirling1(n, 0) == 0 for n in range(1, 10))
    assert stirling1(4, 2) == 11
    assert stirling1(5, 3) == 35
    assert stirling1(3, 5) == 0


@pytest.mark.parametrize("n", range(0, 16))
def test_stirling_rows_match_rising_factorial(n):
    coeffs = rising_factorial_coefficients(n)
    assert [stirling1(n, k) for k in range(n + 1)] == coeffs


def test_stirling_from_harmonic_numbers():
    assert stirling1_harmonic(3, 1) == Fraction(11, 6)
    assert all(stirling1_harmonic(n, 0) == 1 for n in range(10))
    assert stirling1_harmonic(4, 2) == Fraction(35, 24)
    for n in range(12):
        for k in range(n + 1):
            assert stirling1_harmonic(n, k) * math.factorial(n) == stirling1(n + 1, k + 1)


def test_bell_polynomial_values():
    for n in range(1, 6):
        assert bell_y(0, n) == 1
        assert bell_y(1, n) == harmonic(n)
    assert bell_y(2, 3) == Fraction(85, 18)


def test_bell_polynomial_is_weighted_star_sum():
    for n in range(1, 9):
        for k in range(5):
            assert bell_y(k, n) == math.factorial(k) * mhn(n, SignedComposition((SignedIndex(1),) * k, True))


def test_bernoulli_numbers_against_mpmath():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(3) == 0
    for k in range(0, 40):
        want = mpmath.bernfrac(k)
        assert bernoulli(k) == Fraction(int(want[0]), int(want[1]))


def test_euler_polynomial_at_zero():
    # 2/(e^t + 1) = 1 - t/2 + t^3/24 - t^5/240 + ...
    assert [euler_zero(k) for k in range(6)] == [1, Fraction(-1, 2), 0, Fraction(1, 4), 0, Fraction(-1, 2)]
    mpmath.mp.dps = 30
    for k in range(12):
        assert float(euler_zero(k)) == pytest.approx(float(mpmath.eulerpoly(k, 0)), abs=1e-12)


def test_newton_identities_small_example():
    assert newton_from_power_sums([3, 5], "elementary") == [3, 2]
    assert newton_from_power_sums([3, 5], "complete") == [3, 7]
    with pytest.raises(ValueError):
        newton_from_power_sums([1], "power")


def test_symmetric_functions_by_brute_force():
    assert sym_brute([1, 2], 0, "elementary") == 1
    assert sym_brute([1, 2], 2, "elementary") == 2
    assert sym_brute([1, Fraction(1, 2), Fraction(1, 3)], 3, "elementary") == Fraction(1, 6)
    assert sym_brute([1, 2], 2, "complete") == 7


def test_newton_identities_on_random_vectors():
    rng = random.Random(20240611)
    for _ in range(50):
        xs = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(rng.randint(1, 5))]
        m = rng.randint(1, 5)
        p = [sum((x**j for x in xs), Fraction(0)) for j in range(1, m + 1)]
        for kind in ("elementary", "complete"):
            got = newton_from_power_sums(p, kind)
            assert got == [sym_brute(xs, j, kind) for j in range(1, m + 1)]


def test_depth_one_products_follow_the_merge_rule():
    letters = ["1", "~1", "2", "~2", "3"]
    for a in letters:
        for b in letters:
            ia, ib = SignedIndex.parse(a), SignedIndex.parse(b)
            merged = SignedIndex(ia.s + ib.s, ia.barred != ib.barred)
            for n in range(51):
                lhs = mhn(n, SignedComposition((ia,))) * mhn(n, SignedComposition((ib,)))
                rhs = (
                    mhn(n, SignedComposition((ia, ib)))
                    + mhn(n, SignedComposition((ib, ia)))
                    + mhn(n, SignedComposition((merged,)))
                )
                assert lhs == rhs, (a, b, n)


def test_star_values_by_inclusion_exclusion():
    letters = ["1", "~1", "2", "~3"]
    for a in letters:
        for b in letters:
            ia, ib = SignedIndex.parse(a), SignedIndex.parse(b)
            merged = SignedIndex(ia.s + ib.s, ia.barred != ib.barred)
            for n in range(31):
                star = mhn(n, SignedComposition((ia, ib), True))
                assert star == mhn(n, SignedComposition((ia, ib))) + mhn(n, SignedComposition((merged,)))

from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from eulersums.errors import DivergentSeriesError
from eulersums.hp_numeric import ctx_new
from eulersums.series_engine import SeriesSpec, SummandAtom, eval_series

H, Hb, P, Alt = SummandAtom.H, SummandAtom.Hbar, SummandAtom.PowDenom, SummandAtom.AltSign

CTX = ctx_new(25)
PROPERTY_SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def euler_specs(draw, *, alternating=None, barred=True):
    alt = draw(st.booleans()) if alternating is None else alternating
    count = draw(st.integers(0, 3))
    atoms = []
    for _ in range(count):
        p = draw(st.integers(1, 3))
        atoms.append(Hb(p) if barred and draw(st.booleans()) else H(p))
    q = draw(st.integers(1 if alt else 2, 4))
    atoms.append(P(q, draw(st.sampled_from([0, 0, 1]))))
    if alt:
        atoms.append(Alt())
    return SeriesSpec.of(*atoms)


@st.composite
def other_specs(draw):
    kind = draw(st.sampled_from(["Y", "StirOverFact", "RKDenom", "GeomFactor"]))
    atoms = []
    if kind == "Y":
        atoms += [SummandAtom.Y(draw(st.integers(1, 3))), P(draw(st.integers(2, 3)))]
    elif kind == "StirOverFact":
        atoms += [SummandAtom.StirOverFact(draw(st.integers(1, 3))), P(draw(st.integers(1, 3)))]
    elif kind == "RKDenom":
        r = draw(st.integers(0, 2))
        atoms += [H(draw(st.integers(1, 2))), SummandAtom.RKDenom(r, r + draw(st.integers(1, 2)))]
    else:
        x = draw(st.sampled_from([Fraction(1, 2), Fraction(1, 3), Fraction(-1, 2)]))
        atoms += [SummandAtom.GeomFactor(x), P(draw(st.integers(0, 2)))]
    if draw(st.booleans()):
        atoms.append(Alt())
    return SeriesSpec.of(*atoms)


@PROPERTY_SETTINGS
@given(euler_specs(alternating=True, barred=False))
def test_direct_and_accelerated_agree(spec):
    d = eval_series(spec, CTX, "direct")
    a = eval_series(spec, CTX, "accelerated")
    assert abs(d.value - a.value) <= d.tail_estimate + a.tail_estimate + CTX.eps(2)


@PROPERTY_SETTINGS
@given(st.one_of(euler_specs(), other_specs()), st.sampled_from([32, 64, 100]))
def test_cutoff_doubling_is_consistent(spec, big_n):
    try:
        lo = eval_series(spec, CTX, "direct", cutoff=big_n)
    except DivergentSeriesError:
        return
    hi = eval_series(spec, CTX, "direct", cutoff=2 * big_n)
    assert abs(lo.value - hi.value) <= lo.tail_estimate + hi.tail_estimate


@PROPERTY_SETTINGS
@given(st.one_of(euler_specs(), other_specs()))
def test_precision_refinement(spec):
    try:
        low = eval_series(spec, ctx_new(15), "auto")
    except DivergentSeriesError:
        return
    high = eval_series(spec, ctx_new(40), "auto")
    with localcontext(ctx_new(40).decimal):
        assert abs(low.value - high.value) <= low.tail_estimate + high.tail_estimate + Decimal("1e-15") * (1 + abs(high.value))


@PROPERTY_SETTINGS
@given(euler_specs())
def test_claimed_digits_match_estimate(spec):
    try:
        rep = eval_series(spec, CTX)
    except DivergentSeriesError:
        return
    assert rep.digits_claimed >= 25
    assert rep.tail_estimate < Decimal("1e-25")

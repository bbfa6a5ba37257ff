from fractions import Fraction
from math import isqrt

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from bilateral.ball import (
    Ball,
    cot_pi_ball,
    em_remainder_bound,
    integral_tail_bound,
    pi_ball,
    polygamma_ball,
    s_series_ball,
)
from bilateral.cotpoly import s_exact
from bilateral.errors import DomainError

mpmath.mp.prec = 400


def mp(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def ball_contains_mp(ball: Ball, value) -> bool:
    mid = mpmath.mpf(ball.mid) / mpmath.mpf(2) ** ball.prec
    rad = mpmath.mpf(ball.rad) / mpmath.mpf(2) ** ball.prec
    return abs(mid - value) <= rad


def bilateral_mp(k, alpha: Fraction):
    a = alpha - (alpha.numerator // alpha.denominator)
    return mpmath.zeta(k, mp(a)) + (-1) ** k * mpmath.zeta(k, 1 - mp(a))


# -- primitives ---------------------------------------------------------------

small = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**6)
radii = st.integers(0, 2**20)


@st.composite
def balls_with_point(draw):
    x = draw(small)
    extra = draw(radii)
    base = Ball.exact(x, 64)
    b = Ball(base.mid, base.rad + extra, 64)
    # a point inside the ball, drawn between the endpoints
    frac = draw(st.fractions(min_value=0, max_value=1, max_denominator=100))
    point = b.lower + (b.upper - b.lower) * frac
    return b, point


@given(balls_with_point(), balls_with_point())
def test_arithmetic_encloses_every_combination(bp, cp):
    (b, x), (c, y) = bp, cp
    assert b.contains(x) and c.contains(y)
    assert (b + c).contains(x + y)
    assert (b - c).contains(x - y)
    assert (b * c).contains(x * y)
    if c.excludes_zero():
        assert (b / c).contains(x / y)


@given(balls_with_point(), small, st.integers(0, 5))
def test_scale_and_power_enclose(bp, f, n):
    b, x = bp
    assert b.scale(f).contains(x * f)
    if abs(b.midpoint) < 50:
        assert (b**n).contains(x**n)


def test_division_by_ball_straddling_zero():
    with pytest.raises(ZeroDivisionError):
        Ball.exact(1, 64) / Ball(0, 5, 64)


def test_precision_mismatch_rejected():
    with pytest.raises(ValueError):
        Ball.exact(1, 64) + Ball.exact(1, 96)


def test_round_to_keeps_enclosure():
    b = Ball.exact(Fraction(1, 3), 200)
    for p in (64, 100, 199):
        assert b.round_to(p).contains(Fraction(1, 3))


# -- pi and cot ---------------------------------------------------------------


@pytest.mark.parametrize("prec", [64, 128, 300, 1024])
def test_pi_ball_contains_pi(prec):
    b = pi_ball(prec)
    assert ball_contains_mp(b, mpmath.pi)
    assert b.rad <= 2**4
    assert b.radius <= Fraction(2) ** (4 - prec)


def test_pi_ball_deterministic_and_monotone():
    assert pi_ball.__wrapped__(128) == pi_ball.__wrapped__(128)
    assert pi_ball(128).radius < pi_ball(64).radius
    assert "3.14159265358979323846" in pi_ball(64).midpoint_decimal()


def test_cot_pi_ball_examples():
    half = cot_pi_ball(Fraction(1, 2), 128)
    assert half.contains_zero() and half.radius <= Fraction(2) ** (8 - 128)
    assert cot_pi_ball(Fraction(1, 4), 128).contains(1)
    # sqrt(3) enclosure from integer square roots
    p = 256
    s = isqrt(3 << (2 * p))
    lo, hi = Fraction(s, 1 << p), Fraction(s + 1, 1 << p)
    b = cot_pi_ball(Fraction(1, 6), 128)
    # sqrt(3) lies in [lo, hi], an interval far narrower than the ball
    assert b.lower <= hi and lo <= b.upper
    assert b.contains((lo + hi) / 2)


@pytest.mark.parametrize("alpha", [Fraction(1, 7), Fraction(-3, 5), Fraction(11, 12), Fraction(5, 2), Fraction(1, 1000)])
def test_cot_pi_ball_against_mpmath(alpha):
    assert ball_contains_mp(cot_pi_ball(alpha, 160), mpmath.cot(mpmath.pi * mp(alpha)))


def test_cot_pi_ball_pole():
    with pytest.raises(DomainError):
        cot_pi_ball(Fraction(3), 128)


# -- bilateral series -----------------------------------------------------------


def test_odd_k_half_integer_null_ball():
    b = s_series_ball(3, Fraction(1, 2), 128)
    assert b.contains_zero()
    assert b.radius <= Fraction(1, 2**100)


def test_series_examples():
    pi = pi_ball(256)
    assert s_series_ball(2, Fraction(1, 2), 128).overlaps((pi * pi).round_to(128))
    assert s_series_ball(3, Fraction(5, 2), 128).contains_zero()
    b = s_series_ball(2, Fraction(1, 3), 128)
    assert b.overlaps(s_exact(2, Fraction(1, 3)).to_ball(128))
    assert str(b).startswith("[13.15947253")


@pytest.mark.parametrize("k", [2, 3, 4, 7, 12])
@pytest.mark.parametrize("alpha", [Fraction(1, 5), Fraction(2, 7), Fraction(-9, 11), Fraction(13, 3)])
def test_series_against_hurwitz_zeta(k, alpha):
    assert ball_contains_mp(s_series_ball(k, alpha, 200), bilateral_mp(k, alpha))


@pytest.mark.parametrize("k, alpha", [(8, Fraction(2, 7)), (12, Fraction(1, 5)), (9, Fraction(3, 10))])
def test_series_against_brute_force_with_integral_tail(k, alpha):
    # independent oracle: plain bilateral partial sum in exact rationals,
    # both tails enclosed by the integral bound
    a = alpha - (alpha.numerator // alpha.denominator)
    n = 400
    partial = sum((Fraction(1) / (j + a) ** k for j in range(-n, n + 1)), Fraction(0))
    tail = 2 * integral_tail_bound(k, min(a, 1 - a), n)
    b = s_series_ball(k, alpha, 64)
    assert b.lower <= partial + tail and partial - tail <= b.upper
    assert tail < Fraction(1, 10**15)


def test_integral_tail_bound_formula():
    assert integral_tail_bound(3, Fraction(1, 2), 10) == Fraction(1, 2) / Fraction(21, 2) ** 2
    # the bound really dominates the tail it claims to bound
    a = Fraction(1, 3)
    tail = sum(Fraction(1) / (j + a) ** 4 for j in range(11, 3000))
    assert tail < integral_tail_bound(4, a, 10)


def test_em_remainder_bound_decreases_then_suffices():
    bounds = [em_remainder_bound(2, 40, q) for q in range(1, 10)]
    assert all(x > y for x, y in zip(bounds, bounds[1:]))


def test_series_pole_and_k():
    with pytest.raises(DomainError):
        s_series_ball(3, Fraction(2), 128)
    with pytest.raises(DomainError):
        s_series_ball(1, Fraction(1, 2), 128)
    with pytest.raises(ValueError):
        s_series_ball(3, Fraction(1, 3), 32)


@pytest.mark.parametrize("k, alpha", [(2, Fraction(1, 3)), (5, Fraction(2, 9)), (6, Fraction(1, 2))])
def test_containment_monotone_in_precision(k, alpha):
    lo = s_series_ball(k, alpha, 64)
    for p in (96, 128, 256, 512):
        hi = s_series_ball(k, alpha, p)
        assert abs(lo.midpoint - hi.midpoint) <= lo.radius + hi.radius
        assert hi.radius < lo.radius


def test_series_deterministic():
    assert s_series_ball(7, Fraction(5, 11), 192) == s_series_ball(7, Fraction(5, 11), 192)


@pytest.mark.parametrize("q", [2, 3, 4, 6])
def test_closed_form_matches_series(q):
    for a in range(1, q):
        alpha = Fraction(a, q)
        if alpha.denominator != q:
            continue
        for k in range(2, 13):
            series = s_series_ball(k, alpha, 128)
            closed = s_exact(k, alpha).to_ball(128)
            assert series.overlaps(closed), (k, alpha)


sample_alpha = st.fractions(min_value=Fraction(-5), max_value=Fraction(5), max_denominator=40).filter(
    lambda x: x.denominator != 1
)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 9), sample_alpha)
def test_periodicity_and_positivity(k, alpha):
    b = s_series_ball(k, alpha, 96)
    assert b.overlaps(s_series_ball(k, alpha + 1, 96))
    if k % 2 == 0:
        assert b.is_positive()


@pytest.mark.parametrize("k", [3, 5, 7, 9])
def test_odd_k_strictly_decreasing_on_grid(k):
    grid = [Fraction(j, 10) for j in range(1, 10)]
    balls = [s_series_ball(k, a, 128) for a in grid]
    for b1, b2 in zip(balls, balls[1:]):
        assert b1.strictly_greater(b2)


# -- polygamma --------------------------------------------------------------------


def test_polygamma_examples():
    pi = pi_ball(256)
    assert polygamma_ball(1, Fraction(1, 2), 128).overlaps((pi * pi).scale(Fraction(1, 2)).round_to(128))
    assert ball_contains_mp(polygamma_ball(2, Fraction(1, 2), 128), -14 * mpmath.zeta(3))


@pytest.mark.parametrize("k", [1, 2, 3, 6])
@pytest.mark.parametrize("alpha", [Fraction(1, 3), Fraction(5, 7), Fraction(1, 100)])
def test_polygamma_against_mpmath(k, alpha):
    assert ball_contains_mp(polygamma_ball(k, alpha, 160), mpmath.psi(k, mp(alpha)))


def test_polygamma_errors():
    with pytest.raises(DomainError):
        polygamma_ball(0, Fraction(1, 2), 128)
    with pytest.raises(DomainError):
        polygamma_ball(1, Fraction(3, 2), 128)


# -- serialization ------------------------------------------------------------------


def test_ball_json_roundtrip():
    b = s_series_ball(3, Fraction(1, 4), 128)
    d = b.to_dict()
    assert set(d) == {"midpoint", "radius_log2"}
    assert d["radius_log2"] == -127
    back = Ball.from_dict(d, 128)
    assert back.contains(b)


def test_radius_log2_is_upper_bound():
    for rad in (1, 2, 3, 4, 5, 1023, 1024, 1025):
        b = Ball(0, rad, 64)
        e = b.radius_log2
        assert b.radius <= Fraction(2) ** e
        assert b.radius > Fraction(2) ** (e - 1)

import cmath
import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eigenmeasure.scalar import (
    PhaseExponent,
    QuadScalar,
    RadicandError,
    normalize_radicand,
    phase_value,
    reduce_mod,
)
from helpers import quad_scalars, rationals

HALF_SQRT2 = QuadScalar(0, Fraction(1, 2), 2)


@pytest.mark.parametrize("n, expected", [(1, (1, 1)), (2, (1, 2)), (12, (2, 3)), (18, (3, 2)), (49, (7, 1))])
def test_normalize_radicand(n, expected):
    assert normalize_radicand(n) == expected


@given(st.integers(1, 10_000))
def test_normalize_radicand_factorizes(n):
    f, d = normalize_radicand(n)
    assert f * f * d == n
    assert all(d % (k * k) for k in range(2, math.isqrt(d) + 1))


def test_normalize_radicand_rejects_zero():
    with pytest.raises(ValueError):
        normalize_radicand(0)


def test_reduce_mod_boundary_goes_right():
    assert reduce_mod(QuadScalar(Fraction(3, 2)), QuadScalar(1)) == (QuadScalar(Fraction(1, 2)), 1)
    assert reduce_mod(QuadScalar(Fraction(-1, 2)), QuadScalar(1)) == (QuadScalar(Fraction(1, 2)), -1)


def test_reduce_mod_quadratic():
    # -sqrt(2)/2 is a whole period below zero
    assert reduce_mod(-HALF_SQRT2, HALF_SQRT2) == (QuadScalar(0, 0, 2), -1)
    # with period sqrt(2) it is the left endpoint and moves to +sqrt(2)/2
    assert reduce_mod(-HALF_SQRT2, QuadScalar.sqrt(2)) == (HALF_SQRT2, -1)


def test_reduce_mod_zero():
    assert reduce_mod(QuadScalar(0), QuadScalar(Fraction(7, 3))) == (QuadScalar(0), 0)


def test_reduce_mod_errors():
    with pytest.raises(RadicandError):
        reduce_mod(QuadScalar.sqrt(2), QuadScalar.sqrt(3))
    with pytest.raises(ValueError):
        reduce_mod(QuadScalar(1), QuadScalar(-1))


@given(st.sampled_from([1, 2, 3, 5, 6, 7, 10, 11]).flatmap(
    lambda d: st.tuples(quad_scalars(d), quad_scalars(d))))
def test_reduce_mod_round_trip_and_idempotent(pair):
    x, period = pair
    if period.sign() == 0:
        period = QuadScalar(1, 0, period.d)
    elif period.sign() < 0:
        period = -period
    reduced, m = reduce_mod(x, period)
    assert reduced + period * m == x
    half = period * Fraction(1, 2)
    assert -half < reduced <= half
    assert reduce_mod(reduced, period) == (reduced, 0)


@given(quad_scalars(2), quad_scalars(2), quad_scalars(2))
def test_quad_field_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert x - x == QuadScalar(0, 0, 2)
    if x:
        assert x * x.inverse() == QuadScalar(1, 0, 2)


@given(quad_scalars(3), quad_scalars(3))
def test_order_matches_float(x, y):
    if abs(float(x) - float(y)) > 1e-6:
        assert (x < y) == (float(x) < float(y))
    assert (x == y) == (y == x)


def test_sign_is_exact_near_cancellation():
    # 99/70 is a convergent of sqrt(2), off by about 7e-5
    x = QuadScalar(Fraction(99, 70), -1, 2)
    assert x.sign() == 1
    assert QuadScalar(Fraction(-99, 70), 1, 2).sign() == -1


def test_json_round_trip():
    x = QuadScalar(Fraction(1, 2), Fraction(-1, 3), 2)
    assert x.to_json() == {"a": "1/2", "b": "-1/3", "d": 2}
    assert QuadScalar.from_json(x.to_json()) == x


def test_squarefree_radicand_required():
    with pytest.raises(ValueError):
        QuadScalar(0, 1, 8)


@pytest.mark.parametrize("theta, expected", [
    (QuadScalar(0), 1 + 0j),
    (QuadScalar(Fraction(1, 2)), -1 + 0j),
    (QuadScalar(Fraction(1, 4)), 1j),
    (QuadScalar(Fraction(-1, 4)), -1j),
])
def test_phase_value_quarter_turns_exact(theta, expected):
    assert phase_value(theta) == expected


def test_phase_value_irrational_exponent():
    # exp(i pi sqrt 2): the imaginary part is negative
    z = phase_value(HALF_SQRT2)
    ref = complex(mpmath.expjpi(mpmath.sqrt(2)))
    assert abs(z - ref) < 1e-14
    assert abs(z - (-0.26625534 - 0.96390253j)) < 1e-8


@settings(max_examples=1000)
@given(st.sampled_from([2, 3, 5]).flatmap(lambda d: st.tuples(quad_scalars(d), quad_scalars(d))))
def test_phase_group_law(pair):
    p, q = PhaseExponent(pair[0]), PhaseExponent(pair[1])
    assert abs(phase_value(p) * phase_value(q) - phase_value(p * q)) < 1e-12
    assert abs(phase_value(p) * phase_value(p.inverse()) - 1) < 1e-12


@given(rationals(max_den=60, span=50), st.sampled_from([2, 3, 5, 7, 11]))
def test_phase_value_against_high_precision(b, d):
    theta = QuadScalar(Fraction(1, 7), b, d)
    with mpmath.workdps(40):
        ref = mpmath.expjpi(2 * (mpmath.mpf(1) / 7 + mpmath.mpf(b.numerator) / b.denominator * mpmath.sqrt(d)))
    assert abs(phase_value(theta) - complex(ref)) < 1e-13


def test_phase_exponent_canonical_rational_part():
    p = PhaseExponent(QuadScalar(Fraction(7, 4), Fraction(1, 3), 2))
    assert p.theta.a == Fraction(3, 4)
    assert p.theta.b == Fraction(1, 3)
    assert abs(p.value() - cmath.exp(2j * math.pi * float(QuadScalar(Fraction(7, 4), Fraction(1, 3), 2)))) < 1e-12

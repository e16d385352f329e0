"""Scalar special functions: frozen mpmath references and exact identities."""

import cmath
import math

import pytest
from hypothesis import given, strategies as st

from ghconnect import PoleError
from ghconnect.special import beta, e_pi, log_beta, log_gamma, pochhammer, sin_pi

REL_TOL = 1e-13

# reference values: mpmath 1.3.0 at dps 30, rounded to double
SIN_PI_REFS = [
    (0.25 + 0.3j, 1.0451015360166789 + 0.7695695034137083j),
    (-1.75, 0.7071067811865476 + 0.0j),
    (2.5, 1.0 + 0.0j),
]
E_PI_REFS = [
    (0.25 + 0.3j, 0.2755320326029706 + 0.2755320326029706j),
    (-1.75, 0.7071067811865476 + 0.7071067811865476j),
    (2.5, 1.0j),
]
LOG_BETA_REFS = [
    (0.3 + 0.2j, 0.77, 1.1374775292690757 - 0.5293642570925849j),
    (1.5, 2.5, -1.627858836390381 + 0.0j),
    (0.21 + 0.05j, 0.43 - 0.11j, 1.795025002475426 - 0.0777454423627494j),
]

bounded = st.floats(min_value=-8, max_value=8,
                    allow_nan=False, allow_infinity=False)
small_im = st.floats(min_value=-2, max_value=2,
                     allow_nan=False, allow_infinity=False)
zs = st.builds(complex, bounded, small_im)


@pytest.mark.parametrize("z, want", SIN_PI_REFS)
def test_sin_pi_reference(z, want):
    assert abs(sin_pi(z) - want) <= REL_TOL * abs(want)


@pytest.mark.parametrize("z, want", E_PI_REFS)
def test_e_pi_reference(z, want):
    assert abs(e_pi(z) - want) <= REL_TOL * abs(want)


@pytest.mark.parametrize("a, b, want", LOG_BETA_REFS)
def test_log_beta_reference(a, b, want):
    assert abs(log_beta(a, b) - want) <= REL_TOL * abs(want)


def test_beta_matches_log_beta():
    for a, b, want in LOG_BETA_REFS:
        assert abs(beta(a, b) - cmath.exp(want)) <= 1e-12 * abs(cmath.exp(want))
    # B(3/2, 5/2) = pi/16 exactly
    assert abs(beta(1.5, 2.5) - math.pi / 16) < 1e-15


def test_integer_sin_pi_is_exact_zero():
    # the reduction mod 1 must kill the O(|z|) argument error of plain sin
    assert sin_pi(7) == 0
    assert sin_pi(-123) == 0


@pytest.mark.parametrize("z", [0, -1, -2, -37])
def test_log_gamma_pole(z):
    with pytest.raises(PoleError):
        log_gamma(z)


def test_beta_pole_only_when_gamma_argument_is_polar():
    with pytest.raises(PoleError):
        beta(-1.0, 0.5)
    # negative non-integer arguments are fine
    beta(-0.5, 2.5)


def test_pochhammer_basic():
    assert pochhammer(0.3 + 0.1j, 0) == 1
    a = 0.7 - 0.2j
    prod = 1 + 0j
    for k in range(5):
        prod *= a + k
    assert abs(pochhammer(a, 5) - prod) <= 1e-14 * abs(prod)


@given(zs)
def test_sin_pi_period_two(z):
    ref = sin_pi(z)
    assert abs(sin_pi(z + 2) - ref) <= 1e-11 * (1 + abs(ref))


@given(zs)
def test_sin_pi_odd(z):
    assert abs(sin_pi(-z) + sin_pi(z)) <= 1e-12 * (1 + abs(sin_pi(z)))


@given(zs)
def test_e_pi_inverse(z):
    assert abs(e_pi(z) * e_pi(-z) - 1) <= 1e-12 * (1 + abs(e_pi(z)))


@given(bounded)
def test_e_pi_unit_modulus_on_reals(x):
    assert abs(abs(e_pi(x)) - 1.0) <= 1e-13


@given(st.builds(complex, st.floats(min_value=0.05, max_value=4),
                 st.floats(min_value=-1, max_value=1)),
       st.builds(complex, st.floats(min_value=0.05, max_value=4),
                 st.floats(min_value=-1, max_value=1)))
def test_log_beta_symmetric(a, b):
    assert abs(log_beta(a, b) - log_beta(b, a)) <= 1e-12


@given(st.integers(min_value=0, max_value=12),
       st.integers(min_value=0, max_value=12))
def test_pochhammer_splits(j, k):
    a = 0.37 + 0.21j
    whole = pochhammer(a, j + k)
    split = pochhammer(a, j) * pochhammer(a + j, k)
    assert abs(whole - split) <= 1e-12 * (1 + abs(whole))

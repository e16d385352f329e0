"""Parameter container, exponent maps, interval sums, genericity checks."""

import pytest
from hypothesis import given, strategies as st

from ghconnect import ConfigError, Parameters, shift, to_exponents, validate
from ghconnect.params import partial_sum


def test_construction_shapes():
    with pytest.raises(ConfigError):
        Parameters(0, (0.5,), ())
    with pytest.raises(ConfigError):
        Parameters(1, (0.5,), (1.2,))          # alpha needs n+1 entries
    with pytest.raises(ConfigError):
        Parameters(1, (0.5, 0.7), (1.2, 0.9))  # beta needs n entries
    with pytest.raises(ConfigError):
        Parameters(1, (0.5, "x"), (1.2,))


def test_implicit_last_beta(gen2):
    assert gen2.beta_at(3) == 1 + 0j
    with pytest.raises(ConfigError):
        gen2.beta_at(4)
    with pytest.raises(ConfigError):
        gen2.alpha_at(0)


def test_total_exponent(gen2):
    # sum(beta) - sum(alpha): (1.13 + 0.59) - (0.21 + 0.43 + 0.87)
    assert abs(gen2.total_exponent - 0.21) < 1e-14


def test_to_exponents_worked_example():
    p = Parameters(2, (0.2, 0.3, 0.4), (1.1, 0.9))
    exps = to_exponents(p)
    assert exps.lambda_ == pytest.approx((-0.8, -0.5))
    assert exps.mu == pytest.approx((-0.1 + 0j, -0.4 + 0j, -0.4 + 0j))


def test_partial_sum_three_cases(gen2):
    # forward sum, empty sum, reversed (negated) sum
    assert partial_sum(gen2, "alpha", 1, 2) == pytest.approx(0.64)
    assert partial_sum(gen2, "alpha", 3, 2) == 0j
    assert partial_sum(gen2, "alpha", 3, 1) == pytest.approx(-0.43)
    # beta reaches the implicit last entry
    assert partial_sum(gen2, "beta", 1, 3) == pytest.approx(1.13 + 0.59 + 1.0)


def test_partial_sum_sentinels(gen2):
    # legal empty references just outside the index range
    assert partial_sum(gen2, "lambda", 1, 0) == 0j
    assert partial_sum(gen2, "mu", 4, 3) == 0j
    with pytest.raises(ConfigError):
        partial_sum(gen2, "lambda", 0, 1)
    with pytest.raises(ConfigError):
        partial_sum(gen2, "mu", 1, 4)
    with pytest.raises(ConfigError):
        partial_sum(gen2, "gamma", 1, 1)


def test_validate_clean(gen2c):
    report = validate(gen2c)
    assert report.ok
    assert report.margin > 1e-3
    assert report.violations == ()


def test_validate_flags_integer_differences():
    # alpha_2 - alpha_1 = 1 is an exact integer
    report = validate(Parameters(1, (0.3, 1.3), (1.21,)))
    assert not report.ok
    kinds = {v.kind for v in report.violations}
    assert "alpha-alpha" in kinds
    assert report.margin == 0.0


def test_validate_total_exponent_kind():
    # beta_1 - alpha_1 - alpha_2 integer while everything else is generic
    report = validate(Parameters(1, (0.3, 0.9), (1.2,)))
    assert not report.ok
    assert {v.kind for v in report.violations} == {"total-exponent"}


def test_shift_integer_offsets(gen2):
    moved = shift(gen2, (1, 0, -2), (0, 3))
    assert moved.n == gen2.n
    assert moved.alpha == (1.21, 0.43, -1.13)
    assert moved.beta == (1.13, 3.59)
    with pytest.raises(ConfigError):
        shift(gen2, (1, 0), (0, 3))
    with pytest.raises(ConfigError):
        shift(gen2, (0.5, 0, 0), (0, 0))


@given(st.integers(min_value=1, max_value=4), st.data())
def test_partial_sum_antisymmetry(n, data):
    alpha = tuple(0.11 * k + 0.07 for k in range(n + 1))
    beta = tuple(1.0 + 0.13 * k + 0.09 for k in range(n))
    p = Parameters(n, alpha, beta)
    i = data.draw(st.integers(min_value=1, max_value=n + 1))
    j = data.draw(st.integers(min_value=1, max_value=n + 1))
    forward = partial_sum(p, "beta", i, j)
    backward = partial_sum(p, "beta", j + 1, i - 1)
    assert abs(forward + backward) < 1e-12

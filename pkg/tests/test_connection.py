"""Connection matrices: inverse pairs, shift invariance, degeneracy guards."""

import random

import numpy as np
import pytest

from ghconnect.connection import (
    c_01,
    c_10,
    c_hat,
    c_inf0,
    c_one_inf,
    entries_mp,
    periodicity_residual,
    scaling_matrices,
)
from ghconnect.exceptions import ConfigError, DegenerateMatrixError
from ghconnect.params import Parameters, shift
from ghconnect.series import solution_vector
from ghconnect.verify import sample_banded

INVERSE_TOL = 1e-13          # fixed well-separated draws; random ones get 1e-10


def _inverse_dev(params):
    a = c_01(params).as_ndarray()
    b = c_10(params).as_ndarray()
    eye = np.eye(params.n + 1)
    return max(np.max(np.abs(a @ b - eye)), np.max(np.abs(b @ a - eye)))


def test_inverse_identity_fixed(gen1, gen2, gen3):
    for params in (gen1, gen2, gen3):
        assert _inverse_dev(params) < INVERSE_TOL


def test_inverse_identity_complex(gen2c):
    assert _inverse_dev(gen2c) < INVERSE_TOL


def test_inverse_identity_random(rng):
    for _ in range(20):
        params = sample_banded(rng, rng.choice((1, 2, 3, 4)))
        assert _inverse_dev(params) < 1e-10


def test_all_kinds_build_on_random_draws(rng):
    # every builder transcribes each entry twice (product form and
    # sine-polynomial form) and cross-checks internally; a pass here
    # means the two agreed on 20 fresh draws
    for _ in range(20):
        params = sample_banded(rng, rng.choice((1, 2, 3)))
        for build in (c_10, c_01, c_inf0, c_one_inf):
            mat = build(params)
            arr = mat.as_ndarray()
            assert np.all(np.isfinite(arr))
            assert arr.shape == (params.n + 1, params.n + 1)


def test_hat_matrices_shift_invariant(gen2):
    assert periodicity_residual("one0", gen2, (1, 0, -2), (0, 1)) < 1e-12
    assert periodicity_residual("inf0", gen2, (-1, 2, 0), (1, -1)) < 1e-12


def test_hat_matrices_shift_invariant_n3(gen3):
    assert periodicity_residual("one0", gen3, (2, -1, 0, 1), (0, 0, -2)) < 1e-12
    assert periodicity_residual("inf0", gen3, (0, 1, -1, 0), (-1, 1, 0)) < 1e-12


def test_unhatted_matrix_is_not_shift_invariant(gen2):
    base = c_10(gen2).as_ndarray()
    moved = c_10(shift(gen2, (1, 0, 0), (0, 0))).as_ndarray()
    assert np.max(np.abs(base - moved)) > 1e-3


def test_c_hat_rejects_unknown_kind(gen2):
    with pytest.raises(ConfigError):
        c_hat("one_inf", gen2)


def test_degenerate_beta_collision():
    # beta_1 - beta_2 = 1 kills the sin(pi(beta_k - beta_i)) denominator
    with pytest.raises(DegenerateMatrixError):
        c_10(Parameters(2, (0.21, 0.43, 0.87), (1.59, 0.59)))


def test_degenerate_resonant_total_exponent():
    # B = 1.5 - 0.5 = 1: the 1-to-0 direction divides by sin(pi B)
    with pytest.raises(DegenerateMatrixError, match="resonant"):
        c_01(Parameters(1, (0.3, 0.2), (1.5,)))


def test_degenerate_alpha_collision():
    with pytest.raises(DegenerateMatrixError):
        c_01(Parameters(2, (0.21, 1.21, 0.87), (1.13, 0.59)))


def test_builders_are_deterministic(gen2):
    first = c_10(gen2).entries
    again = c_10(gen2).entries
    assert first == again


def test_entries_mp_matches_double_build(gen2):
    high = entries_mp("one0", gen2, 30)
    low = c_10(gen2).entries
    dev = max(
        abs(complex(high[i][j]) - low[i][j])
        for i in range(3)
        for j in range(3)
    )
    assert dev < 1e-12


def test_connection_maps_zero_row_to_one_row(gen2):
    # row-vector convention: (basis at 0) @ C = (basis at 1), checked
    # against independently summed series at an interior point
    z = 0.5
    f0 = np.array(solution_vector("0", gen2, z, 1e-12).values)
    f1 = np.array(solution_vector("1", gen2, z, 1e-12).values)
    got = f0 @ c_10(gen2).as_ndarray()
    assert np.max(np.abs(got - f1) / np.abs(f1)) < 1e-10


def test_one_inf_is_nonsingular(gen2):
    mat = c_one_inf(gen2).as_ndarray()
    assert abs(np.linalg.det(mat)) > 1e-6


def test_scaling_matrices_unit_modulus(gen2):
    for mat in scaling_matrices(gen2):
        arr = np.array(mat)
        diag = np.diag(arr)
        assert np.allclose(np.abs(diag), 1.0, atol=1e-14)
        assert np.max(np.abs(arr - np.diag(diag))) == 0.0


def test_convention_string_names_columns(gen1):
    assert "column j" in c_10(gen1).convention

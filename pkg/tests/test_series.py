"""Series evaluation: plain sums, the four solution bases, refusal paths.

Frozen reference values come from mpmath 1.3.0 (dps 30): ``mpmath.hyper``
for the plain series and Gauss-form transcriptions for the n = 1 bases.
"""

import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from ghconnect import ConfigError, Parameters, PoleError, SeriesError
from ghconnect.series import (eval_ghs, f0, f1_holo, f1_nonholo, finf,
                              solution_vector)
from ghconnect.series import _HoloTables, _h_table_mp

REL_TOL = 5e-13

# (upper, lower, z, mpmath.hyper value)
HYPER_REFS = [
    ((1.0, 1.0), (2.0,), 0.5, 1.3862943611198906 + 0j),
    ((0.21 + 0.05j, 0.43, 0.87 - 0.1j), (1.13, 0.59 + 0.08j), 0.3 + 0.2j,
     1.0394917301533577 + 0.032388074895882274j),
    ((0.3, 0.7, 1.1, -0.4), (0.9, 1.4, 0.6), -0.35, 1.0402600862984173 + 0j),
    ((0.25 + 0.6j, 0.5 - 0.3j), (1.2 + 0.1j,), 0.55 - 0.25j,
     1.269236674328178 - 0.0020063984721297974j),
]


@pytest.mark.parametrize("upper, lower, z, want", HYPER_REFS)
def test_eval_ghs_reference(upper, lower, z, want):
    got = eval_ghs(upper, lower, z, tol=1e-14)
    assert abs(got.value - want) <= REL_TOL * abs(want)
    # the reported tail bound must cover the actual error
    assert abs(got.value - want) <= got.tail_estimate + 1e-13 * abs(want)


def test_eval_ghs_log_identity():
    # 2F1(1,1;2;z) = -log(1-z)/z
    got = eval_ghs((1.0, 1.0), (2.0,), 0.5, tol=1e-15)
    assert abs(got.value - 2 * math.log(2)) < 1e-14


def test_eval_ghs_binomial_identity():
    # 1F0(a;;z) = (1-z)^(-a)
    got = eval_ghs((0.5,), (), 0.25, tol=1e-15)
    assert abs(got.value - 0.75 ** -0.5) < 1e-14


def test_eval_ghs_at_origin_is_one():
    got = eval_ghs((0.3, 0.9 + 0.2j), (1.4,), 0.0)
    assert got.value == 1 + 0j


def test_parameter_cancellation():
    # a shared upper/lower entry drops out of every term
    full = eval_ghs((0.31, 0.77, 1.44), (1.44, 1.02), 0.45, tol=1e-14)
    reduced = eval_ghs((0.31, 0.77), (1.02,), 0.45, tol=1e-14)
    assert abs(full.value - reduced.value) < 1e-13


def test_outside_disk_refusal():
    with pytest.raises(SeriesError, match="outside disk"):
        eval_ghs((0.3,), (), 1.0)


def test_near_boundary_needs_explicit_budget():
    with pytest.raises(SeriesError, match="near disk boundary"):
        eval_ghs((0.3, 0.7), (1.21,), 0.93)
    got = eval_ghs((0.3, 0.7), (1.21,), 0.93, tol=1e-10, max_terms=4000)
    want = complex(mpmath.hyp2f1(0.3, 0.7, 1.21, 0.93))
    assert abs(got.value - want) < 1e-9 * abs(want)


def test_budget_exhaustion_keeps_partial():
    with pytest.raises(SeriesError, match="max terms exceeded") as info:
        eval_ghs((0.3, 0.7), (1.21,), 0.6, tol=1e-30, max_terms=5)
    partial = info.value.partial
    assert partial is not None and partial.terms_used == 5
    with pytest.raises(ConfigError):
        eval_ghs((0.3,), (), 0.5, max_terms=0)


def test_nonpositive_integer_lower_parameter():
    with pytest.raises(PoleError, match="non-positive integer"):
        eval_ghs((0.3, 0.7), (-2.0,), 0.5)
    # a non-positive integer in the upper list just terminates the series
    got = eval_ghs((-3.0, 0.7), (1.21,), 0.5, tol=1e-15)
    assert got.terms_used <= 10


@settings(max_examples=30)
@given(st.permutations([0.23, 0.61 + 0.11j, 0.97]))
def test_eval_ghs_upper_symmetry(perm):
    want = eval_ghs((0.23, 0.61 + 0.11j, 0.97), (1.31, 0.83), 0.4, tol=1e-13)
    got = eval_ghs(tuple(perm), (1.31, 0.83), 0.4, tol=1e-13)
    assert abs(got.value - want.value) <= 1e-12 * abs(want.value)


# -- n = 1 bases against Gauss-form transcriptions -------------------------

GAUSS_BASIS_REFS = {
    # alpha = (0.3, 0.7), beta = (1.21,)
    "f0_1": 1.2458868074898675,     # z^-0.21 * 2F1(0.09, 0.49; 0.79; 0.4)
    "f0_2": 1.088406120619239,      # 2F1(0.3, 0.7; 1.21; 0.4)
    "finf_1": 0.7479387615293571,   # 2.5^-0.3 * 2F1(0.09, 0.3; 0.6; -0.4)
    "f1h_1": 1.2713212444672166,    # 2F1(0.3, 0.7; 0.79; 0.6)
    "f1n": 1.2604914663471891,      # 0.6^0.21 * 2F1(0.91, 0.51; 1.21; 0.6)
}


def test_zero_side_basis_gauss_forms(gen1):
    assert abs(f0(1, gen1, 0.4, "pos_z", 1e-13).value
               - GAUSS_BASIS_REFS["f0_1"]) < 1e-12
    assert abs(f0(2, gen1, 0.4, "pos_z", 1e-13).value
               - GAUSS_BASIS_REFS["f0_2"]) < 1e-12


def test_infinity_side_basis_gauss_form(gen1):
    assert abs(finf(1, gen1, -2.5, 1e-13).value
               - GAUSS_BASIS_REFS["finf_1"]) < 1e-12


def test_one_side_bases_gauss_forms(gen1):
    assert abs(f1_holo(1, gen1, 0.4, 1e-13).value
               - GAUSS_BASIS_REFS["f1h_1"]) < 1e-12
    assert abs(f1_nonholo(gen1, 0.4, 1e-13).value
               - GAUSS_BASIS_REFS["f1n"]) < 1e-12


def test_nonholo_coefficients_closed_form(gen1):
    """n = 1 expansion coefficients are plain Pochhammer quotients, which
    pins the general convolution recurrence on its simplest instance."""
    w = 1 - 0.35
    val = f1_nonholo(gen1, 0.35, 1e-13).value
    acc, term = 0j, 1.0
    for m in range(60):
        acc += term * w ** m
        term *= (0.91 + m) * (0.51 + m) / ((1.21 + m) * (m + 1))
    assert abs(val - w ** 0.21 * acc) < 1e-12


# -- inner-sum tables -------------------------------------------------------

def test_hhat_table_matches_direct_binomial_sum(gen3):
    """The in-place difference triangle must reproduce the alternating
    binomial transform it replaces, at full precision."""
    got = _h_table_mp(1, gen3, 24)
    al, be = gen3.alpha_at, gen3.beta_at
    with mpmath.workdps(80):
        a1 = mpmath.mpc(al(1))                # differences in mp, as the table does
        x = [a1 - mpmath.mpc(be(s)) + 1 for s in (2, 3)]
        y = [a1 - mpmath.mpc(al(s)) + 1 for s in (2, 3)]
        r = []
        for m3 in range(25):
            v = mpmath.mpc(1)
            for xs, ys in zip(x, y):
                v *= mpmath.rf(xs, m3) / mpmath.rf(ys, m3)
            r.append(v)
        for m in range(25):
            direct = mpmath.mpc(0)
            for j in range(m + 1):
                direct += (-1) ** j * math.comb(m, j) * r[j]
            assert abs(complex(got[m] - direct)) <= 1e-30 * (1 + abs(complex(direct)))


def test_hhat_general_path_matches_two_term_closed_form(gen2c):
    # for two lower parameters the transform telescopes to a Pochhammer
    # quotient; run the general machinery on it and compare
    tables = _HoloTables(1, gen2c, "alpha_i")
    general = _h_table_mp(1, gen2c, 16)
    with mpmath.workdps(40):
        for m in range(17):
            assert abs(complex(tables.hhat_mp(m) - general[m])) < 1e-25


def test_holo_variant_is_distinguishable(gen2):
    # the alternate base only differs from the default for i >= 2
    base = f1_holo(2, gen2, 0.5, 1e-10).value
    other = f1_holo(2, gen2, 0.5, 1e-10, _variant="alpha1").value
    assert abs(base - other) / abs(base) > 1e-2


# -- assembled solution vectors ---------------------------------------------

def test_solution_vector_shapes_and_branches(gen2):
    v0 = solution_vector("0", gen2, 0.45, 1e-11)
    assert len(v0.values) == 3
    assert "pos" in v0.branch_note or "principal" in v0.branch_note
    vneg = solution_vector("0", gen2, -0.45, 1e-11)
    assert vneg.branch_note != v0.branch_note
    vinf = solution_vector("inf", gen2, -3.0, 1e-11)
    assert len(vinf.values) == 3
    with pytest.raises(ConfigError):
        solution_vector("2", gen2, 0.5)


def test_solution_vector_deterministic(gen3):
    a = solution_vector("1", gen3, 0.55, 1e-11).values
    b = solution_vector("1", gen3, 0.55, 1e-11).values
    assert a == b

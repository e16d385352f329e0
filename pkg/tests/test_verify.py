"""Verification harness: samplers, single checks, suite plumbing."""

import json
import random

import pytest

from ghconnect.exceptions import ConfigError
from ghconnect.params import validate
from ghconnect.verify import (
    SUITES,
    VerificationReport,
    check_connection_01,
    check_connection_inf0,
    check_corollary,
    check_inverse,
    check_periodicity,
    run_suite,
    sample_banded,
    sample_generic,
)


# -- samplers -----------------------------------------------------------------

def test_sample_banded_respects_bands_and_margin():
    rng = random.Random(11)
    for n in (1, 2, 3):
        for _ in range(10):
            p = sample_banded(rng, n)
            assert all(0.1 <= a.real <= 0.6 for a in p.alpha)
            assert all(0.7 <= b.real <= 0.9 for b in p.beta)
            assert all(abs(v.imag) <= 0.3 for v in p.alpha + p.beta)
            assert validate(p, 1e-3).ok


def test_sample_generic_margin_scales():
    rng = random.Random(5)
    for n in (1, 3, 5):
        p = sample_generic(rng, n, 1e-4)
        rep = validate(p, 1e-4)
        assert rep.ok and rep.margin >= 1e-4


def test_samplers_are_seed_deterministic():
    a = sample_banded(random.Random(42), 2)
    b = sample_banded(random.Random(42), 2)
    assert a.alpha == b.alpha and a.beta == b.beta


# -- single checks -------------------------------------------------------------

def test_check_inverse_passes(gen2):
    rep = check_inverse(gen2)
    assert rep.passed and rep.residual < 1e-12
    assert rep.identity == "inverse"


def test_check_connection_01_passes(gen1):
    rep = check_connection_01(gen1, 0.5)
    assert rep.passed and rep.residual < 1e-10


def test_check_connection_01_reports_honest_failure(gen1):
    # an unreachable tolerance must yield pass=False with the measured
    # residual, never a clipped or massaged number
    rep = check_connection_01(gen1, 0.5, tol=1e-30)
    assert not rep.passed
    assert 1e-16 < rep.residual < 1e-10


def test_check_corollary_passes(gen2):
    rep = check_corollary(gen2, 0.3)
    assert rep.passed and rep.residual < 1e-9


def test_check_periodicity_passes(gen3):
    rep = check_periodicity("inf0", gen3, (1, 0, -1, 2), (0, 1, 0))
    assert rep.passed and rep.residual < 1e-11


def test_check_inf0_quadrature_passes(gen1):
    rep = check_connection_inf0(gen1)
    assert rep.passed
    assert rep.residual < 1e-9      # n = 1 sides often agree to the last bit


# -- suite plumbing -------------------------------------------------------------

def test_suite_names_are_stable():
    assert SUITES == ("inverse", "connection01", "corollary", "inf0",
                      "residues", "periodicity", "propositions")


def test_run_suite_rejects_unknown_name():
    with pytest.raises(ConfigError):
        run_suite("everything")


def test_run_suite_draws_override_and_determinism():
    first = run_suite("residues", seed=9, draws=5)
    again = run_suite("residues", seed=9, draws=5)
    assert all(r.passed for r in first)
    dump = lambda reps: json.dumps([r.to_json_dict() for r in reps])
    assert dump(first) == dump(again)


def test_run_suite_inverse_small():
    reps = run_suite("inverse", seed=2, draws=3)
    assert reps and all(r.passed for r in reps)
    assert {r.n for r in reps} == {1, 2, 3, 4, 5}


def test_report_json_shape(gen1):
    rep = check_inverse(gen1)
    d = rep.to_json_dict()
    assert sorted(d) == ["details", "identity", "n", "pass",
                         "residual", "seed", "tolerance", "z"]
    json.dumps(d)                   # must be serializable as-is
    assert "provenance" not in d


def test_report_is_frozen(gen1):
    rep = check_inverse(gen1)
    with pytest.raises(Exception):
        rep.passed = False

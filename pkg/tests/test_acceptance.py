"""End-to-end acceptance run.

Each test exercises one shipped contract at its stated tolerance and time
budget and prints a single PASS/FAIL line to the live terminal (bypassing
capture), so a full run reads as a checklist. Budgets are wall-clock for
this suite's defaults on one core.
"""

import json
import random
import subprocess
import sys
import time

import numpy as np

from ghconnect.connection import c_01, c_10, c_inf0
from ghconnect.oracle import gauss_reference
from ghconnect.verify import run_suite, sample_banded

_CLI = [sys.executable, "-m", "ghconnect.cli"]


def _timed_suite(name, seed=0):
    t0 = time.perf_counter()
    reports = run_suite(name, seed=seed)
    return reports, time.perf_counter() - t0


def _announce(capsys, num, label, ok, detail):
    flag = "PASS" if ok else "FAIL"
    with capsys.disabled():
        print(f"criterion {num} ({label}): {flag} {detail}", flush=True)


def _worst(reports):
    return max(r.residual for r in reports)


def test_criterion_1_inverse_pairs(capsys):
    reports, dt = _timed_suite("inverse")
    ok = all(r.passed for r in reports) and dt < 5.0
    _announce(capsys, 1, "inverse pairs, n=1..5 x 100 draws", ok,
              f"worst={_worst(reports):.3e} (tol 1e-10) in {dt:.1f}s (budget 5s)")
    assert all(r.passed for r in reports)
    assert dt < 5.0


def test_criterion_2_connection_0_1(capsys):
    reports, dt = _timed_suite("connection01")
    ok = all(r.passed for r in reports) and dt < 60.0
    _announce(capsys, 2, "0<->1 connection, n=1..3 x 20 draws x 3 z", ok,
              f"worst={_worst(reports):.3e} (tol 1e-8) in {dt:.1f}s (budget 60s)")
    assert all(r.passed for r in reports)
    assert dt < 60.0


def test_criterion_3_corollary_form(capsys):
    reports, dt = _timed_suite("corollary")
    ok = all(r.passed for r in reports) and dt < 60.0
    _announce(capsys, 3, "corollary form of the 1-side coefficients", ok,
              f"worst={_worst(reports):.3e} (tol 1e-8) in {dt:.1f}s (budget 60s)")
    assert all(r.passed for r in reports)
    assert dt < 60.0


def test_criterion_4_inf_0_by_integrals(capsys):
    reports, dt = _timed_suite("inf0")
    quad = [r for r in reports if r.identity == "connection-inf-zero"]
    by_n = {r.n: r for r in quad}
    ok = (by_n[1].passed and by_n[1].tolerance == 1e-7
          and by_n[2].passed and by_n[2].tolerance == 1e-5
          and dt < 120.0)
    _announce(capsys, 4, "inf<->0 connection by loaded integrals", ok,
              f"n=1 res={by_n[1].residual:.3e} (tol 1e-7), "
              f"n=2 res={by_n[2].residual:.3e} (tol 1e-5) in {dt:.1f}s (budget 120s)")
    assert ok


def test_criterion_5_integral_representations(capsys):
    reports, dt = _timed_suite("propositions")
    matches = [r for r in reports if r.identity.startswith("integral-series")]
    variants = [r for r in reports if r.identity.startswith("variant-")]
    ok = (all(r.passed for r in reports)
          and all(r.residual <= 1e-6 for r in matches)
          and all(r.residual >= 1e-2 for r in variants))
    _announce(capsys, 5, "integral representations + variant rejection", ok,
              f"worst match={max(r.residual for r in matches):.3e} (tol 1e-6), "
              f"weakest rejection={min(r.residual for r in variants):.3e} "
              f"(must exceed 1e-2) in {dt:.1f}s")
    assert ok
    assert len(variants) >= 3


def test_criterion_6_residue_identities(capsys):
    reports, dt = _timed_suite("residues")
    ok = all(r.passed for r in reports) and dt < 10.0
    _announce(capsys, 6, "residue identities, 5 cases x 200 draws", ok,
              f"worst={_worst(reports):.3e} (tol 1e-11) in {dt:.1f}s (budget 10s)")
    assert all(r.passed for r in reports)
    assert dt < 10.0


def test_criterion_7_shift_periodicity(capsys):
    reports, dt = _timed_suite("periodicity")
    ok = all(r.passed for r in reports)
    _announce(capsys, 7, "hat-matrix invariance under 50 integer shifts", ok,
              f"worst={_worst(reports):.3e} (tol 1e-10) in {dt:.1f}s")
    assert ok


def test_criterion_8_gamma_reference_n1(capsys):
    rng = random.Random(20240818)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(100):
        params = sample_banded(rng, 1)
        for target, build in (("one0", c_10), ("zero1", c_01), ("inf0", c_inf0)):
            ref = gauss_reference(params, target).as_ndarray()
            got = build(params).as_ndarray()
            worst = max(worst, float(np.max(np.abs(ref - got))))
    dt = time.perf_counter() - t0
    ok = worst < 1e-10
    _announce(capsys, 8, "n=1 matrices vs Gamma-function reference", ok,
              f"worst={worst:.3e} (tol 1e-10) over 100 draws x 3 kinds in {dt:.1f}s")
    assert ok


def test_criterion_9_byte_determinism(capsys):
    # fresh interpreter per run so no in-process cache state leaks between
    # the two passes; the heavy statistical suites rerun at reduced draws
    reduced = {"connection01": 3, "corollary": 3}
    t0 = time.perf_counter()
    stable = True
    for suite in ("inverse", "connection01", "corollary", "inf0",
                  "residues", "periodicity", "propositions"):
        cmd = _CLI + ["verify", "--suite", suite, "--seed", "1",
                      "--output", "json"]
        if suite in reduced:
            cmd += ["--draws", str(reduced[suite])]
        outs = [subprocess.run(cmd, capture_output=True, check=True).stdout
                for _ in range(2)]
        if outs[0] != outs[1]:
            stable = False
    dt = time.perf_counter() - t0
    _announce(capsys, 9, "byte-identical JSON on repeated seeded runs", stable,
              f"7 suites x 2 runs in {dt:.1f}s")
    assert stable

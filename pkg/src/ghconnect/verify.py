"""Numerical verification of every identity the package implements.

Each check compares two independently computed objects (series bases vs
sine-quotient matrices, quadrature vs Beta-weighted series, double vs
Gamma-reference matrices, ...) and reports a residual against a tolerance.
Suites draw seeded random parameter sets, rejection-sampled to stay clear
of the resonance set by a stated margin, and aggregate the worst residual
per cell. All randomness flows from string-salted ``random.Random`` seeds,
so a rerun with the same seed reproduces byte-identical reports.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import mpmath

from ._quadrature import _Plan
from .connection import (c_01, c_10, c_inf0, entries_mp, periodicity_residual)
from .exceptions import ConfigError, GenericityError
from .oracle import (DomainSpec, gauss_reference, integrate_loaded_domain,
                     residue_sum_check)
from .params import Parameters, validate
from .series import _prefactor, f0, f1_holo, f1_nonholo, finf, solution_vector
from .special import sin_pi

__all__ = ["VerificationReport", "check_inverse", "check_connection_01",
           "check_corollary", "check_connection_inf0", "check_periodicity",
           "sample_generic", "sample_banded", "sample_quadrature",
           "run_suite", "SUITES"]

SUITES = ("inverse", "connection01", "corollary", "inf0", "residues",
          "periodicity", "propositions")

_ESCALATION_MAGNITUDE = 1e3     # worst |C01_ik * C10_kj| before mp products
_MP_DPS_INVERSE = 30
_QUAD_TOL = {1: 1e-9, 2: 1e-7}  # internal quadrature targets
_QUAD_CMP = {1: 1e-7, 2: 1e-5}  # comparison tolerances for quad-based checks
_SERIES_TOL = 1e-12


@dataclass(frozen=True)
class VerificationReport:
    identity: str
    n: int
    z: complex | None
    residual: float
    tolerance: float
    passed: bool
    seed: int | None
    details: dict = field(default_factory=dict)
    provenance: str = ""        # human context; never serialized

    def to_json_dict(self) -> dict:
        return {
            "identity": self.identity,
            "n": self.n,
            "z": None if self.z is None else [self.z.real, self.z.imag],
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "seed": self.seed,
            "details": self.details,
        }


# ---------------------------------------------------------------------------
# individual checks
# ---------------------------------------------------------------------------

def _max_dev_from_identity(a, b) -> float:
    """max_ij |(A B - I)_ij| with compensated double summation."""
    k = len(a)
    worst = 0.0
    for i in range(k):
        for j in range(k):
            re_parts, im_parts = [], []
            for m in range(k):
                x, y = a[i][m], b[m][j]
                re_parts += [x.real * y.real, -x.imag * y.imag]
                im_parts += [x.real * y.imag, x.imag * y.real]
            re = math.fsum(re_parts) - (1.0 if i == j else 0.0)
            im = math.fsum(im_parts)
            worst = max(worst, math.hypot(re, im))
    return worst


def _max_dev_from_identity_mp(a, b) -> float:
    k = len(a)
    worst = mpmath.mpf(0)
    for i in range(k):
        for j in range(k):
            acc = mpmath.mpc(0)
            for m in range(k):
                acc += a[i][m] * b[m][j]
            if i == j:
                acc -= 1
            worst = max(worst, abs(acc))
    return float(worst)


def check_inverse(params: Parameters, tol: float = 1e-10) -> VerificationReport:
    """Verify that the 0->1 and 1->0 matrices are mutual inverses.

    Products run in compensated double precision; the entries are
    deterministically recomputed in mpmath and multiplied there whenever
    doubles cannot certify the tolerance — either because the entry
    products are large (cancellation in the sum), or because the double
    product lands within a decade of the tolerance (near-degenerate sine
    denominators push that much rounding into the entries themselves).
    """
    a = c_01(params).entries
    b = c_10(params).entries
    k = params.n + 1
    mag = 0.0
    for i in range(k):
        for j in range(k):
            for m in range(k):
                mag = max(mag, abs(a[i][m]) * abs(b[m][j]),
                          abs(b[i][m]) * abs(a[m][j]))
    residual = None
    if mag <= _ESCALATION_MAGNITUDE:
        residual = max(_max_dev_from_identity(a, b),
                       _max_dev_from_identity(b, a))
    escalated = residual is None or residual > tol / 10
    if escalated:
        am = entries_mp("zero1", params, _MP_DPS_INVERSE)
        bm = entries_mp("one0", params, _MP_DPS_INVERSE)
        with mpmath.workdps(_MP_DPS_INVERSE):
            residual = max(_max_dev_from_identity_mp(am, bm),
                           _max_dev_from_identity_mp(bm, am))
    return VerificationReport(
        "inverse", params.n, None, residual, tol, residual < tol, None,
        {"escalated": escalated, "magnitude": mag},
        provenance="C01 * C10 = C10 * C01 = identity")


def check_connection_01(params: Parameters, z: float,
                        tol: float = 1e-8,
                        series_tol: float = _SERIES_TOL) -> VerificationReport:
    """Both connection directions between the bases at 0 and 1."""
    v0 = solution_vector("0", params, z, tol=series_tol, branch="pos_z").values
    v1 = solution_vector("1", params, z, tol=series_tol).values
    e01 = c_01(params).entries
    e10 = c_10(params).entries
    k = params.n + 1
    r_to0 = max(
        abs(sum(v1[i] * e01[i][j] for i in range(k)) - v0[j])
        / max(1.0, abs(v0[j]))
        for j in range(k))
    r_to1 = max(
        abs(sum(v0[i] * e10[i][j] for i in range(k)) - v1[j])
        / max(1.0, abs(v1[j]))
        for j in range(k))
    residual = max(r_to0, r_to1)
    return VerificationReport(
        "connection-zero-one", params.n, complex(z), residual, tol,
        residual < tol, None, {"to_zero": r_to0, "to_one": r_to1},
        provenance="loaded series bases vs sine-quotient matrices, both ways")


def check_corollary(params: Parameters, z: float,
                    tol: float = 1e-8,
                    series_tol: float = _SERIES_TOL) -> VerificationReport:
    """Expansion of each 0-side solution over the 1-side basis, transcribed
    directly from the corollary display (independently of c_01)."""
    n = params.n
    al, be = params.alpha_at, params.beta_at
    big_b = params.total_exponent
    s = sin_pi
    v0 = solution_vector("0", params, z, tol=series_tol, branch="pos_z").values
    v1 = solution_vector("1", params, z, tol=series_tol).values
    worst = 0.0
    for j in range(1, n + 2):
        acc = 0j
        for i in range(1, n + 1):
            coeff = -(s(al(i)) * s(big_b - be(j) + al(i)) * s(be(j) - al(j))) \
                / (s(al(n + 1)) * s(big_b) * s(be(j) - al(i)))
            for kk in range(1, n + 1):
                if kk != i:
                    coeff *= s(be(kk) - al(i)) / s(al(kk) - al(i))
            acc += v1[i - 1] * coeff
        acc += v1[n] * (-s(be(j) - al(j)) / s(big_b))
        worst = max(worst, abs(acc - v0[j - 1]) / max(1.0, abs(v0[j - 1])))
    return VerificationReport(
        "corollary", n, complex(z), worst, tol, worst < tol, None, {},
        provenance="corollary display reproduces the 0-side basis")


def check_connection_inf0(params: Parameters, z: float = -0.5,
                          tol: float | None = None) -> VerificationReport:
    """Quadrature-loaded bases at 0 and infinity against the inf0 matrix.

    Series for the two bases have disjoint convergence regions in z, so
    this identity is checked with direct integration on both sides.
    """
    n = params.n
    if tol is None:
        tol = _QUAD_CMP[n]
    qt = _QUAD_TOL[n]
    f_zero = [integrate_loaded_domain(DomainSpec("D0", i, n, z), params, qt).value
              for i in range(1, n + 2)]
    f_inf = [integrate_loaded_domain(DomainSpec("Dinf", i, n, z), params, qt).value
             for i in range(1, n + 2)]
    e = c_inf0(params).entries
    k = n + 1
    residual = max(
        abs(sum(f_zero[i] * e[i][j] for i in range(k)) - f_inf[j])
        / max(1.0, abs(f_inf[j]))
        for j in range(k))
    return VerificationReport(
        "connection-inf-zero", n, complex(z), residual, tol, residual < tol,
        None, {}, provenance="tanh-sinh loaded integrals vs inf0 matrix")


def check_periodicity(kind: str, params: Parameters, dalpha, dbeta,
                      tol: float = 1e-10) -> VerificationReport:
    residual = periodicity_residual(kind, params, dalpha, dbeta)
    return VerificationReport(
        f"periodicity-hat-{kind}", params.n, None, residual, tol,
        residual < tol, None,
        {"dalpha": list(dalpha), "dbeta": list(dbeta)},
        provenance="hat-normalized matrices are integer-shift invariant")


# ---------------------------------------------------------------------------
# parameter samplers
# ---------------------------------------------------------------------------

def _uniform(rng: random.Random, lo: float, hi: float) -> float:
    return lo + (hi - lo) * rng.random()


def sample_generic(rng: random.Random, n: int, margin: float,
                   im_half: float = 0.5,
                   max_tries: int = 200000) -> Parameters:
    """Wide draw: Re in [-2, 2], genericity margin enforced by rejection."""
    for _ in range(max_tries):
        alpha = tuple(complex(_uniform(rng, -2, 2), _uniform(rng, -im_half, im_half))
                      for _ in range(n + 1))
        beta = tuple(complex(_uniform(rng, -2, 2), _uniform(rng, -im_half, im_half))
                     for _ in range(n))
        p = Parameters(n, alpha, beta)
        if validate(p).margin >= margin:
            return p
    raise GenericityError("sampler exhausted its tries (generic draw)")


def sample_banded(rng: random.Random, n: int, margin: float = 1e-3,
                  im_half: float = 0.3,
                  max_tries: int = 200000) -> Parameters:
    """Draw inside bands that keep every series-side real-part condition
    satisfied structurally: Re(alpha) in [0.1, 0.6], Re(beta) in [0.7, 0.9]."""
    for _ in range(max_tries):
        alpha = tuple(complex(_uniform(rng, 0.1, 0.6), _uniform(rng, -im_half, im_half))
                      for _ in range(n + 1))
        beta = tuple(complex(_uniform(rng, 0.7, 0.9), _uniform(rng, -im_half, im_half))
                     for _ in range(n))
        p = Parameters(n, alpha, beta)
        if validate(p).margin >= margin:
            return p
    raise GenericityError("sampler exhausted its tries (banded draw)")


def sample_quadrature(rng: random.Random, n: int, specs,
                      margin: float = 0.05, im_half: float = 0.2,
                      max_tries: int = 50000) -> Parameters:
    """Draw parameters whose exponents pass the integrability and decay
    audits of every requested domain (larger Re(beta) so ray integrals
    decay), with the genericity margin on top."""
    for _ in range(max_tries):
        alpha = [complex(_uniform(rng, 0.1, 0.6), _uniform(rng, -im_half, im_half))
                 for _ in range(n)]
        alpha.append(complex(_uniform(rng, 0.5, 0.6),
                             _uniform(rng, -im_half, im_half)))
        beta = tuple(complex(_uniform(rng, 1.15, 1.4), _uniform(rng, -im_half, im_half))
                     for _ in range(n))
        p = Parameters(n, tuple(alpha), beta)
        if validate(p).margin < margin:
            continue
        try:
            for spec in specs:
                _Plan(spec, p)
        except Exception:
            continue
        return p
    raise GenericityError("sampler exhausted its tries (quadrature draw)")


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def _aggregate(identity: str, n: int, z, residuals, tol: float, seed: int,
               details: dict | None = None) -> VerificationReport:
    worst = max(residuals)
    info = {"draws": len(residuals)}
    if details:
        info.update(details)
    return VerificationReport(identity, n, z, worst, tol, worst < tol,
                              seed, info)


def run_inverse(seed: int = 0, n_values=(1, 2, 3, 4, 5), draws: int = 100,
                tol: float = 1e-10, margin: float = 1e-4):
    rng = random.Random(f"inverse:{seed}")
    reports = []
    for n in n_values:
        residuals, escalated = [], 0
        for _ in range(draws):
            p = sample_generic(rng, n, margin)
            r = check_inverse(p, tol)
            residuals.append(r.residual)
            escalated += int(r.details["escalated"])
        reports.append(_aggregate("inverse", n, None, residuals, tol, seed,
                                  {"escalated": escalated, "margin": margin}))
    return reports


def _connection_draws(seed: int, n_values, draws: int):
    rng = random.Random(f"connection01:{seed}")
    return {n: [sample_banded(rng, n) for _ in range(draws)] for n in n_values}


def run_connection01(seed: int = 0, n_values=(1, 2, 3), draws: int = 20,
                     zs=(0.3, 0.5, 0.7), tol: float = 1e-8):
    pool = _connection_draws(seed, n_values, draws)
    reports = []
    for n in n_values:
        for z in zs:
            residuals = [check_connection_01(p, z, tol).residual
                         for p in pool[n]]
            reports.append(_aggregate("connection-zero-one", n, complex(z),
                                      residuals, tol, seed))
    return reports


def run_corollary(seed: int = 0, n_values=(1, 2, 3), draws: int = 20,
                  zs=(0.3, 0.5, 0.7), tol: float = 1e-8):
    pool = _connection_draws(seed, n_values, draws)   # same draws as above
    reports = []
    for n in n_values:
        for z in zs:
            residuals = [check_corollary(p, z, tol).residual for p in pool[n]]
            reports.append(_aggregate("corollary", n, complex(z), residuals,
                                      tol, seed))
    return reports


def run_inf0(seed: int = 0, gauss_draws: int = 100, quad_draws=None):
    if quad_draws is None:
        quad_draws = {1: 3, 2: 2}
    rng = random.Random(f"inf0:{seed}")
    reports = []
    gauss_tol = 1e-10
    worst = {"one0": [], "inf0": []}
    for _ in range(gauss_draws):
        p = sample_generic(rng, 1, margin=1e-3)
        for kind, ctor in (("one0", c_10), ("inf0", c_inf0)):
            ref = gauss_reference(p, kind).entries
            mine = ctor(p).entries
            dev = max(abs(x - y) / max(1.0, abs(x))
                      for rx, ry in zip(ref, mine) for x, y in zip(rx, ry))
            worst[kind].append(dev)
    for kind in ("one0", "inf0"):
        reports.append(_aggregate(f"gamma-reference-{kind}", 1, None,
                                  worst[kind], gauss_tol, seed))
    z = -0.5
    for n in sorted(quad_draws):
        specs = [DomainSpec("D0", i, n, z) for i in range(1, n + 2)] \
            + [DomainSpec("Dinf", i, n, z) for i in range(1, n + 2)]
        residuals = []
        for _ in range(quad_draws[n]):
            p = sample_quadrature(rng, n, specs)
            residuals.append(check_connection_inf0(p, z).residual)
        reports.append(_aggregate("connection-inf-zero", n, complex(z),
                                  residuals, _QUAD_CMP[n], seed))
    return reports


def run_residues(seed: int = 0, draws: int = 200, tol: float = 1e-11,
                 margin: float = 0.05):
    rng = random.Random(f"residues:{seed}")
    reports = []
    for case in ("i_offdiag", "i_diag", "ii", "iii", "iv"):
        for n in (1, 2, 3):
            if case == "i_offdiag" and n < 2:
                continue
            residuals = []
            for k in range(draws):
                p = sample_generic(rng, n, margin, im_half=0.3)
                i = j = None
                if case in ("i_offdiag", "i_diag"):
                    i = 1 + (k % n)
                    if case == "i_offdiag":
                        j = 1 + (i % n)
                elif case == "ii":
                    i = 1 + (k % (n + 1))
                elif case == "iii":
                    j = 1 + (k % n)
                residuals.append(residue_sum_check(case, p, i=i, j=j).residual)
            reports.append(_aggregate(f"residue-{case}", n, None, residuals,
                                      tol, seed))
    return reports


def run_periodicity(seed: int = 0, n_values=(1, 2, 3), shifts: int = 50,
                    tol: float = 1e-10):
    rng = random.Random(f"periodicity:{seed}")
    reports = []
    for n in n_values:
        residuals = {"one0": [], "inf0": []}
        p = None
        for k in range(shifts):
            if k % 10 == 0:
                p = sample_generic(rng, n, margin=1e-3)
            da = tuple(rng.randint(-2, 2) for _ in range(n + 1))
            db = tuple(rng.randint(-2, 2) for _ in range(n))
            for kind in ("one0", "inf0"):
                residuals[kind].append(periodicity_residual(kind, p, da, db))
        for kind in ("one0", "inf0"):
            reports.append(_aggregate(f"periodicity-hat-{kind}", n, None,
                                      residuals[kind], tol, seed,
                                      {"shifts": shifts}))
    return reports


def _series_side(family: str, i: int, params: Parameters, z: float,
                 variant: str | None = None) -> complex:
    n = params.n
    if family == "D0":
        return _prefactor("0", i, params) \
            * f0(i, params, z, branch="neg_z", tol=_SERIES_TOL).value
    if family == "D0t":
        return _prefactor("0", i, params) \
            * f0(i, params, z, branch="pos_z", tol=_SERIES_TOL).value
    if family == "Dinf":
        return _prefactor("inf", i, params) \
            * finf(i, params, z, tol=_SERIES_TOL).value
    if i <= n:
        return _prefactor("1", i, params) \
            * f1_holo(i, params, z, tol=_SERIES_TOL,
                      _variant=variant or "alpha_i").value
    return _prefactor("1", i, params) \
        * f1_nonholo(params, z, tol=_SERIES_TOL,
                     _variant=variant or "pochhammer").value


def run_propositions(seed: int = 0, tol: float = 1e-6):
    """Loaded integrals vs Beta-prefactored series, plus the requirement
    that the rejected reading variants visibly fail the same comparison."""
    rng = random.Random(f"propositions:{seed}")
    reports = []
    z_for = {"D0": -0.5, "Dinf": -2.0, "D0t": 0.5, "D1t": 0.5}
    for n in (1, 2):
        specs = [DomainSpec(fam, i, n, z_for[fam])
                 for fam in ("D0", "Dinf", "D0t", "D1t")
                 for i in range(1, n + 2)]
        p = sample_quadrature(rng, n, specs)
        quad_vals = {}
        for fam in ("D0", "Dinf", "D0t", "D1t"):
            z = z_for[fam]
            residuals = []
            for i in range(1, n + 2):
                q = integrate_loaded_domain(DomainSpec(fam, i, n, z), p,
                                            _QUAD_TOL[n])
                quad_vals[(fam, i)] = q.value
                ser = _series_side(fam, i, p, z)
                residuals.append(abs(q.value - ser) / max(1.0, abs(q.value)))
            reports.append(_aggregate(f"integral-series-{fam}", n, complex(z),
                                      residuals, tol, seed))
        # rejected reading variants must fail by a wide margin
        fail_floor = 1e-2
        ref = quad_vals[("D1t", n + 1)]
        bad = _series_side("D1t", n + 1, p, 0.5, variant="literal")
        dev = abs(ref - bad) / max(1.0, abs(ref))
        reports.append(VerificationReport(
            "variant-nonholo-literal", n, complex(0.5), dev, fail_floor,
            dev >= fail_floor, seed, {"direction": "must_exceed"},
            provenance="non-Pochhammer reading must disagree with quadrature"))
        if n >= 2:
            ref = quad_vals[("D1t", 2)]
            bad = _series_side("D1t", 2, p, 0.5, variant="alpha1")
            dev = abs(ref - bad) / max(1.0, abs(ref))
            reports.append(VerificationReport(
                "variant-holo-alpha1", n, complex(0.5), dev, fail_floor,
                dev >= fail_floor, seed, {"direction": "must_exceed"},
                provenance="first-parameter reading must disagree with quadrature"))
    return reports


def run_suite(name: str, seed: int = 0, draws: int | None = None):
    """Run one verification suite (or "all") and return its reports."""
    if name == "all":
        out = []
        for s in SUITES:
            out.extend(run_suite(s, seed, draws))
        return out
    if name == "inverse":
        return run_inverse(seed, draws=draws or 100)
    if name == "connection01":
        return run_connection01(seed, draws=draws or 20)
    if name == "corollary":
        return run_corollary(seed, draws=draws or 20)
    if name == "inf0":
        return run_inf0(seed, gauss_draws=draws or 100)
    if name == "residues":
        return run_residues(seed, draws=draws or 200)
    if name == "periodicity":
        return run_periodicity(seed, shifts=draws or 50)
    if name == "propositions":
        return run_propositions(seed)
    raise ConfigError(f"unknown suite {name!r}; expected one of "
                      f"{SUITES + ('all',)}")

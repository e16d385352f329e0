"""Independent cross-checks for the connection machinery.

Three references that never touch the sine-quotient matrix displays:

* direct tanh-sinh quadrature of the loaded integral solutions (n <= 2),
* residue sums of the rational functions behind the inverse identity,
  evaluated with algebraic cancellation of matched root pairs,
* the classical Gamma-function connection coefficients for n = 1.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from ._quadrature import (BranchFixing, DomainSpec, QuadResult,
                          integrate_loaded_domain)
from .connection import ConnectionMatrix
from .exceptions import ConfigError, PoleError
from .params import Parameters
from .series import _prefactor
from .special import e_pi, log_gamma, sin_pi

__all__ = ["BranchFixing", "DomainSpec", "QuadResult", "integrate_loaded_domain",
           "RationalFunction", "ResidueCheck", "residue_sum_check",
           "gauss_reference"]

_RESIDUE_CASES = ("i_offdiag", "i_diag", "ii", "iii", "iv")
_POLE_SEPARATION = 1e-8


@dataclass(frozen=True)
class RationalFunction:
    """const * prod(x - num_roots) / prod(x - den_roots), simple poles only."""
    const: complex
    num_roots: tuple[complex, ...]
    den_roots: tuple[complex, ...]

    def residue_at(self, p: complex) -> complex:
        hits = [r for r in self.den_roots if r == p]
        if len(hits) != 1:
            raise PoleError(f"{p} is not a simple pole")
        val = self.const
        for r in self.num_roots:
            val *= p - r
        for r in self.den_roots:
            if r != p:
                val /= p - r
        return val

    def residue_at_infinity(self) -> complex:
        gap = len(self.den_roots) - len(self.num_roots)
        if gap < 1:
            raise PoleError("degree at infinity is nonnegative")
        return -self.const if gap == 1 else 0j

    def check_pole_separation(self) -> None:
        roots = self.den_roots
        for a in range(len(roots)):
            for b in range(a + 1, len(roots)):
                if abs(roots[a] - roots[b]) < _POLE_SEPARATION:
                    raise PoleError(
                        f"pole collision: |{roots[a]} - {roots[b]}| < "
                        f"{_POLE_SEPARATION}")


@dataclass(frozen=True)
class ResidueCheck:
    case: str
    n: int
    value: complex          # sum of residues at the beta-type poles
    expected: complex
    residual: float
    details: dict


def _unit_data(params: Parameters):
    n = params.n
    a = [e_pi(params.alpha_at(l)) for l in range(1, n + 2)]
    b = [e_pi(params.beta_at(l)) for l in range(1, n + 1)] + [-1 + 0j]
    big_a = 1 + 0j
    for v in a:
        big_a *= v
    big_b = 1 + 0j
    for v in b[:-1]:
        big_b *= v
    return a, b, big_a, big_b


def _case_function(case: str, params: Parameters, i: int | None,
                   j: int | None) -> tuple[RationalFunction, dict]:
    n = params.n
    a, b, A, Bb = _unit_data(params)
    a2 = [v * v for v in a]
    b2 = [v * v for v in b]
    info: dict = {}

    def others(excluded: set[int]) -> list[complex]:
        return [a2[l] for l in range(n + 1) if (l + 1) not in excluded]

    if case in ("i_offdiag", "i_diag"):
        if i is None or not 1 <= i <= n:
            raise ConfigError("case i requires 1 <= i <= n")
        if case == "i_offdiag":
            if n < 2:
                raise ConfigError("case i_offdiag requires n >= 2")
            if j is None or not 1 <= j <= n or j == i:
                raise ConfigError("case i_offdiag requires j <= n, j != i")
        else:
            j = i
        r0 = Bb * Bb * a2[i - 1] / (A * A)
        const = 2j * a[i - 1] * a[n]
        num = others({i, j, n + 1}) + [r0]
        den = list(b2) if i != j else [a2[i - 1]] + list(b2)
        f = RationalFunction(const, tuple(num), tuple(den))
        info["r0"] = r0
    elif case == "ii":
        if i is None or not 1 <= i <= n + 1:
            raise ConfigError("case ii requires 1 <= i <= n + 1")
        r0 = Bb * Bb * a2[i - 1] / (A * A)
        const = -A / 2j
        num = others({i}) + [r0]
        den = [0j] + list(b2)
        f = RationalFunction(const, tuple(num), tuple(den))
        info["r0"] = r0
    elif case == "iii":
        if j is None or not 1 <= j <= n:
            raise ConfigError("case iii requires 1 <= j <= n")
        const = 2j * Bb * a[j - 1] * a[n] / A
        num = others({j, n + 1})
        f = RationalFunction(const, tuple(num), tuple(b2))
    elif case == "iv":
        const = -Bb / (2j * A)
        f = RationalFunction(const, tuple(a2), tuple([0j] + list(b2)))
    else:
        raise ConfigError(f"unknown residue case {case!r}; "
                          f"expected one of {_RESIDUE_CASES}")
    return f, info


def residue_sum_check(case: str, params: Parameters, i: int | None = None,
                      j: int | None = None) -> ResidueCheck:
    """Verify one residue identity behind the matrix inverse relations.

    The rational functions are assembled with matched numerator/denominator
    roots cancelled algebraically, so only genuinely distinct simple poles
    remain. ``value`` is the sum of residues at the beta-type poles; the
    expected value comes from the remaining residues (alpha-type pole,
    x = 0, and the residue at infinity) via the global residue theorem,
    with the closed sine forms pinned in ``details`` where they exist.
    """
    n = params.n
    a, b, A, Bb = _unit_data(params)
    b2 = [v * v for v in b]
    f, info = _case_function(case, params, i, j)
    f.check_pole_separation()

    value = 0j
    for p in b2:
        value += f.residue_at(p)

    details: dict = dict(info)
    if case == "i_offdiag" or case == "iii":
        expected = 0j
    elif case == "i_diag":
        pole = a[i - 1] * a[i - 1]
        res_alpha = f.residue_at(pole)
        sine = sin_pi(params.total_exponent) / (
            sin_pi(params.beta_at(i) - params.alpha_at(i))
            * sin_pi(params.alpha_at(i)))
        for l in range(1, n + 1):
            if l != i:
                sine *= (sin_pi(params.alpha_at(i) - params.alpha_at(l))
                         / sin_pi(params.alpha_at(i) - params.beta_at(l)))
        expected = -sine
        details["alpha_pole_residue"] = res_alpha
        details["alpha_pole_vs_sine"] = abs(res_alpha - sine)
    elif case == "ii":
        res0 = f.residue_at(0j)
        resinf = f.residue_at_infinity()
        expected = -(res0 + resinf)
        details["res0"] = res0
        details["resinf"] = resinf
    else:  # iv
        res0 = f.residue_at(0j)
        resinf = f.residue_at_infinity()
        expected = -sin_pi(params.total_exponent)
        details["res0"] = res0
        details["resinf"] = resinf
        details["closure_vs_sine"] = abs(-(res0 + resinf) - expected)

    residual = abs(value - expected)
    return ResidueCheck(case, n, value, expected, residual, details)


# ---------------------------------------------------------------------------
# n = 1 Gamma-function reference
# ---------------------------------------------------------------------------

def _gquot(num: list[complex], den: list[complex]) -> complex:
    s = 0j
    for v in num:
        s += log_gamma(v)
    for v in den:
        s -= log_gamma(v)
    return cmath.exp(s)


def _inv2(m: list[list[complex]]) -> list[list[complex]]:
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if det == 0:
        raise PoleError("reference matrix is singular")
    return [[m[1][1] / det, -m[0][1] / det],
            [-m[1][0] / det, m[0][0] / det]]


def gauss_reference(params: Parameters, target: str) -> ConnectionMatrix:
    """n = 1 connection matrices from the classical Gamma-quotient formulas.

    Completely independent of the sine-quotient displays: the two-term
    connection coefficients are assembled from log-Gamma values and
    converted to the loaded normalization with the Beta prefactors.
    ``target`` is one of ``one0``, ``zero1``, ``inf0``.
    """
    if params.n != 1:
        raise ConfigError("the Gamma reference exists for n = 1 only")
    if target not in ("one0", "zero1", "inf0"):
        raise ConfigError(f"unsupported reference target {target!r}")
    a, b = params.alpha_at(1), params.alpha_at(2)
    c = params.beta_at(1)

    p0 = [_prefactor("0", i, params) for i in (1, 2)]
    p1 = [_prefactor("1", i, params) for i in (1, 2)]
    pinf = [_prefactor("inf", i, params) for i in (1, 2)]

    if target in ("one0", "zero1"):
        # rows: 0-side sources; columns: coefficients over the 1-side parts
        g = [[_gquot([2 - c, c - a - b], [1 - a, 1 - b]),
              _gquot([2 - c, a + b - c], [a - c + 1, b - c + 1])],
             [_gquot([c, c - a - b], [c - a, c - b]),
              _gquot([c, a + b - c], [a, b])]]
        c01 = [[p0[jj] * g[jj][ii] / p1[ii] for jj in range(2)]
               for ii in range(2)]
        entries = c01 if target == "zero1" else _inv2(c01)
    else:
        # rows: 0-side sources; columns: coefficients over the infinity parts
        g = [[_gquot([2 - c, b - a], [b - c + 1, 1 - a]),
              _gquot([2 - c, a - b], [a - c + 1, 1 - b])],
             [_gquot([c, b - a], [b, c - a]),
              _gquot([c, a - b], [a, c - b])]]
        m = [[p0[jj] * g[jj][ii] / pinf[ii] for jj in range(2)]
             for ii in range(2)]
        entries = _inv2(m)
    return ConnectionMatrix(kind=target, n=1,
                            entries=tuple(tuple(row) for row in entries))

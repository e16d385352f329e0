"""Levin u-transform sequence acceleration.

Incremental single-triangle formulation: two running arrays (numerator and
denominator of the transform) are updated in place as each new term arrives,
so the best available estimate is ready after every term. The remainder
estimate is the u-variant, omega_k = (beta + k) * a_k with beta = 1.

On monotone (logarithmically convergent) series the transform is correct
but ill-conditioned: estimates improve down to a precision-dependent floor
and then drift away as rounding noise is amplified. ``levin_sum`` therefore
keeps the best estimate seen so far and aborts once the step size has grown
three orders of magnitude past its running minimum, returning that snapshot;
the caller decides whether its error estimate is good enough or whether to
rerun the sum in higher precision.

The arithmetic is deliberately generic: the same code runs on Python
``complex`` for the fast path and on ``mpmath.mpc`` when a caller needs to
escape a double-precision plateau.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

_BETA = 1.0
_OMEGA_FLOOR = 1e-300         # keep 1/omega finite when a term underflows
_TURNAROUND = 1e3             # delta growth factor that signals noise takeover
_MP_TYPES = (mpmath.mpf, mpmath.mpc)


@dataclass
class LevinResult:
    value: complex
    error_estimate: float
    terms_used: int
    converged: bool
    abs_sum: float = 0.0      # sum of |term| over the terms actually consumed


class _LevinU:
    """One u-transform triangle; ``update`` returns the current estimate."""

    def __init__(self) -> None:
        self._numer: list = []
        self._denom: list = []
        self._count = 0

    def update(self, partial_sum, omega):
        n = self._count
        # the recurrence coefficients must live in the operands' arithmetic:
        # double-rounded coefficients inject noise the transform amplifies,
        # capping accuracy no matter how precise the terms are
        one = mpmath.mpf(1) if isinstance(omega, _MP_TYPES) else 1.0
        term = one / (_BETA + n)
        self._denom.append(term / omega)
        self._numer.append(partial_sum * self._denom[n])
        if n > 0:
            ratio = (_BETA + n - 1) * term
            for j in range(1, n + 1):
                fact = (n - j + _BETA) * term
                self._numer[n - j] = self._numer[n - j + 1] - fact * self._numer[n - j]
                self._denom[n - j] = self._denom[n - j + 1] - fact * self._denom[n - j]
                term = term * ratio
        self._count += 1
        return self._numer[0] / self._denom[0]


def levin_sum(term_at, tol: float, max_terms: int, min_terms: int = 8) -> LevinResult:
    """Sum ``term_at(0) + term_at(1) + ...`` with u-transform acceleration.

    Convergence is declared once two consecutive estimate changes both fall
    below tol/2 (after at least ``min_terms`` terms). Exactly-terminating
    series (three consecutive zero terms) short-circuit to the partial sum.
    A non-converged result carries the best estimate seen (smallest pair of
    consecutive deltas) with converged=False; the caller decides whether
    that error estimate suffices or a higher-precision retry is needed.
    """
    triangle = _LevinU()
    partial = None
    value = None
    prev_delta = None
    zero_run = 0
    abs_sum = 0.0
    used = 0
    best_val = None
    best_est = math.inf
    min_delta = math.inf

    for k in range(max_terms):
        a = term_at(k)
        partial = a if partial is None else partial + a
        abs_sum += float(abs(a))
        used = k + 1
        if a == 0:
            zero_run += 1
            if zero_run >= 3:
                return LevinResult(partial, 0.0, used, True, abs_sum)
            continue
        zero_run = 0
        omega = (_BETA + k) * a
        if abs(omega) < _OMEGA_FLOOR:
            omega = omega.__class__(_OMEGA_FLOOR)
        new = triangle.update(partial, omega)
        if value is not None:
            delta = float(abs(new - value))
            if prev_delta is not None:
                est = delta + prev_delta
                if est < best_est:
                    best_est = est
                    best_val = new
                if k >= min_terms and delta < tol / 2 and prev_delta < tol / 2:
                    return LevinResult(new, est, used, True, abs_sum)
                if k >= min_terms and delta > _TURNAROUND * max(min_delta, 5e-324):
                    break               # rounding noise has taken over
            min_delta = min(min_delta, delta)
            prev_delta = delta
        value = new

    if best_val is None:
        best_val = value if value is not None else partial
    return LevinResult(best_val, best_est, used, False, abs_sum)

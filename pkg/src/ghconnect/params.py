"""Parameter bookkeeping: the (alpha, beta) tuples, genericity checks,
interval sums, and the derived integrand exponents.

Conventions used everywhere in the package:

* ``n`` is the equation order parameter; there are n+1 upper parameters
  alpha_1..alpha_{n+1} and n lower parameters beta_1..beta_n.
* ``beta_{n+1} = 1`` implicitly; :meth:`Parameters.beta_at` exposes it, and
  the genericity set / interval sums treat beta as the extended tuple.
* Public indices are 1-based (matching the formulas); the internal tuples
  are plain 0-based Python tuples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .exceptions import ConfigError

__all__ = [
    "Parameters",
    "ExponentSet",
    "Violation",
    "GenericityReport",
    "validate",
    "to_exponents",
    "partial_sum",
    "shift",
]


def _coerce(values, what: str) -> tuple[complex, ...]:
    out = []
    for v in values:
        if isinstance(v, (int, float, complex)):
            c = complex(v)
        else:
            raise ConfigError(f"{what} entries must be numbers, got {type(v).__name__}")
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise ConfigError(f"{what} entries must be finite, got {c}")
        out.append(c)
    return tuple(out)


@dataclass(frozen=True)
class Parameters:
    """Immutable parameter set (n, alpha_1..alpha_{n+1}, beta_1..beta_n)."""

    n: int
    alpha: tuple[complex, ...]
    beta: tuple[complex, ...]

    def __init__(self, n: int, alpha, beta):
        if not isinstance(n, int) or n < 1:
            raise ConfigError(f"n must be a positive integer, got {n!r}")
        alpha = _coerce(alpha, "alpha")
        beta = _coerce(beta, "beta")
        if len(alpha) != n + 1:
            raise ConfigError(f"alpha must have n+1 = {n + 1} entries, got {len(alpha)}")
        if len(beta) != n:
            raise ConfigError(f"beta must have n = {n} entries, got {len(beta)}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    # -- 1-based accessors -------------------------------------------------

    def alpha_at(self, i: int) -> complex:
        if not 1 <= i <= self.n + 1:
            raise ConfigError(f"alpha index out of range: {i}")
        return self.alpha[i - 1]

    def beta_at(self, i: int) -> complex:
        """beta_i for 1 <= i <= n+1, with the implicit beta_{n+1} = 1."""
        if not 1 <= i <= self.n + 1:
            raise ConfigError(f"beta index out of range: {i}")
        return 1 + 0j if i == self.n + 1 else self.beta[i - 1]

    @property
    def total_exponent(self) -> complex:
        """B = beta_1 + ... + beta_n - alpha_1 - ... - alpha_{n+1}."""
        return sum(self.beta) - sum(self.alpha)

    def key(self) -> tuple:
        """Hashable identity used for caching derived tables."""
        return (self.n, self.alpha, self.beta)


@dataclass(frozen=True)
class ExponentSet:
    """Integrand exponents lambda_1..lambda_n and mu_1..mu_{n+1}."""

    lambda_: tuple[complex, ...]
    mu: tuple[complex, ...]


@dataclass(frozen=True)
class Violation:
    kind: str                      # "alpha-beta" | "beta-beta" | "alpha-alpha" | "total-exponent"
    indices: tuple[int, int] | None
    value: complex
    distance: float                # distance from value to the nearest Gaussian integer point


@dataclass(frozen=True)
class GenericityReport:
    ok: bool
    margin: float                  # min integer-distance over the whole checked set
    violations: tuple[Violation, ...] = field(default_factory=tuple)


def _int_distance(w: complex) -> float:
    return math.hypot(w.real - round(w.real), w.imag)


def validate(params: Parameters, eps_generic: float = 1e-8) -> GenericityReport:
    """Check every non-integrality constraint the identities need.

    The checked set (beta extended by beta_{n+1} = 1, so the bare
    parameters are covered through the j = n+1 column):

    * alpha_i - beta_j for all 1 <= i, j <= n+1,
    * beta_i - beta_j and alpha_i - alpha_j for i != j,
    * the total exponent B.

    Pure: never raises, returns a report with per-violation records and the
    minimal integer distance (the "margin") over the whole set.
    """
    n = params.n
    checked: list[tuple[str, tuple[int, int] | None, complex]] = []
    for i in range(1, n + 2):
        for j in range(1, n + 2):
            checked.append(("alpha-beta", (i, j), params.alpha_at(i) - params.beta_at(j)))
    for i in range(1, n + 2):
        for j in range(i + 1, n + 2):
            checked.append(("beta-beta", (i, j), params.beta_at(i) - params.beta_at(j)))
            checked.append(("alpha-alpha", (i, j), params.alpha_at(i) - params.alpha_at(j)))
    checked.append(("total-exponent", None, params.total_exponent))

    margin = math.inf
    violations = []
    for kind, idx, value in checked:
        d = _int_distance(value)
        margin = min(margin, d)
        if d < eps_generic:
            violations.append(Violation(kind, idx, value, d))
    return GenericityReport(ok=not violations, margin=margin, violations=tuple(violations))


def to_exponents(params: Parameters) -> ExponentSet:
    """lambda_i = alpha_{i+1} - beta_i (i <= n); mu_i = beta_i - alpha_i - 1
    (i <= n+1, beta_{n+1} = 1)."""
    n = params.n
    lam = tuple(params.alpha_at(i + 1) - params.beta_at(i) for i in range(1, n + 1))
    mu = tuple(params.beta_at(i) - params.alpha_at(i) - 1 for i in range(1, n + 2))
    return ExponentSet(lambda_=lam, mu=mu)


_SEQ_LEN = {"alpha": lambda n: n + 1, "beta": lambda n: n + 1,
            "lambda": lambda n: n, "mu": lambda n: n + 1}


def partial_sum(params: Parameters, seq: str, i: int, j: int) -> complex:
    """Interval sum with the standard three-case convention.

    For a sequence x of length L:  i <= j sums x_i..x_j;  i == j+1 is the
    empty sum 0;  i >= j+2 is minus the sum x_{j+1}..x_{i-1}.  A reference
    is valid precisely when the elements it touches lie inside [1, L]
    (so sentinels like lambda_{1,0} and mu_{n+2,k} are legal).
    """
    if seq not in _SEQ_LEN:
        raise ConfigError(f"unknown sequence {seq!r}; expected alpha/beta/lambda/mu")
    n = params.n
    length = _SEQ_LEN[seq](n)

    if seq == "alpha":
        elem = params.alpha_at
    elif seq == "beta":
        elem = params.beta_at
    else:
        exps = to_exponents(params)
        data = exps.lambda_ if seq == "lambda" else exps.mu
        def elem(k: int, _data=data) -> complex:
            return _data[k - 1]

    if i <= j:
        lo, hi, sign = i, j, 1
    elif i == j + 1:
        return 0j
    else:
        lo, hi, sign = j + 1, i - 1, -1
    if lo < 1 or hi > length:
        raise ConfigError(
            f"index out of range: {seq}_{{{i},{j}}} touches elements {lo}..{hi} of [1, {length}]"
        )
    return sign * sum(elem(k) for k in range(lo, hi + 1))


def shift(params: Parameters, dalpha, dbeta) -> Parameters:
    """Integer-shifted copy: alpha_m += dalpha_m, beta_m += dbeta_m."""
    dalpha = tuple(dalpha)
    dbeta = tuple(dbeta)
    if len(dalpha) != params.n + 1 or len(dbeta) != params.n:
        raise ConfigError(
            f"shift lengths must be (n+1, n) = ({params.n + 1}, {params.n}), "
            f"got ({len(dalpha)}, {len(dbeta)})"
        )
    if not all(isinstance(d, int) for d in dalpha + dbeta):
        raise ConfigError("shift offsets must be integers")
    return Parameters(
        params.n,
        tuple(a + d for a, d in zip(params.alpha, dalpha)),
        tuple(b + d for b, d in zip(params.beta, dbeta)),
    )

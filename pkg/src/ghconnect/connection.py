"""Sine-quotient connection matrices between the loaded solution vectors.

Convention (fixed throughout): matrices act on row vectors of loaded
solutions, ``(target row) * C = (source row)``, i.e. column j of C holds the
coefficients expanding the j-th source solution over the target basis.

Kinds:

* ``one0``  — 1-side sources over the 0-side basis (0 < z < 1 overlap).
* ``zero1`` — 0-side sources over the 1-side basis (the inverse direction).
* ``inf0``  — infinity-side sources over the 0-side basis (z < 0 overlap).
* ``one_inf`` — composed product (inf0)^(-1) * (one0); no sine display.
* ``hat_one0`` / ``hat_inf0`` — scaling-normalized variants invariant under
  integer parameter shifts.

Every matrix whose entries have a sine display is built twice, from two
independently transcribed readings (the entry display and the
theorem/proposition sum formulas read column-wise); construction fails if
the two disagree beyond 1e-13. Denominator sines below pi * eps_generic
raise DegenerateMatrixError before any division happens.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .exceptions import DegenerateMatrixError, ConfigError, GHConnectError
from .params import Parameters, shift as shift_params
from .special import e_pi, sin_pi

__all__ = ["ConnectionMatrix", "c_10", "c_01", "c_inf0", "c_one_inf",
           "scaling_matrices", "c_hat", "periodicity_residual"]

_CONVENTION = ("(target row) * C = (source row); column j holds the "
               "coefficients of source solution j over the target basis")
_AGREE_TOL = 1e-13
DEFAULT_EPS_GENERIC = 1e-8


@dataclass(frozen=True)
class ConnectionMatrix:
    kind: str
    n: int
    entries: tuple[tuple[complex, ...], ...]   # row-major, (n+1) x (n+1)
    convention: str = _CONVENTION

    def as_ndarray(self) -> np.ndarray:
        return np.array(self.entries, dtype=complex)


# ---------------------------------------------------------------------------
# sine contexts: identical assembly code runs in doubles or in mpmath
# ---------------------------------------------------------------------------

class _DoubleCtx:
    one = 1 + 0j

    @staticmethod
    def sin(x) -> complex:
        return sin_pi(x)

    @staticmethod
    def magnitude(x) -> float:
        return abs(x)

    @staticmethod
    def lift(x) -> complex:
        return x

    @staticmethod
    def total_exponent(params: Parameters) -> complex:
        return params.total_exponent


class _MpCtx:
    """mpmath context; construct inside a workdps block."""

    def __init__(self) -> None:
        self.one = mpmath.mpc(1)

    @staticmethod
    def sin(x):
        return mpmath.sinpi(mpmath.mpc(x))

    @staticmethod
    def magnitude(x) -> float:
        return float(abs(x))

    @staticmethod
    def lift(x):
        return mpmath.mpc(x)

    @staticmethod
    def total_exponent(params: Parameters):
        out = mpmath.mpc(0)
        for b in params.beta:
            out += mpmath.mpc(b)
        for a in params.alpha:
            out -= mpmath.mpc(a)
        return out


def _lifted(params: Parameters, ctx):
    """Parameter accessors rounding through the context.

    Sine arguments are differences of parameters; forming them in doubles
    and lifting afterwards would cap every escalated rebuild at double
    accuracy, exactly where a small denominator needs the extra digits.
    """
    def al(k: int):
        return ctx.lift(params.alpha_at(k))

    def be(k: int):
        return ctx.lift(params.beta_at(k))

    return al, be


def _den(ctx, value, eps: float, label: str):
    """Evaluate a denominator sine, refusing near-degenerate arguments."""
    s = ctx.sin(value)
    if ctx.magnitude(s) < math.pi * eps:
        raise DegenerateMatrixError(
            f"near-degenerate denominator: |sin(pi*({label}))| = "
            f"{ctx.magnitude(s):.3e} below pi*eps_generic"
        )
    return s


# ---------------------------------------------------------------------------
# entry transcriptions
# ---------------------------------------------------------------------------

def _entries_one0_display(params: Parameters, ctx, eps: float):
    """Row/column entry display of the 1->0 matrix."""
    n = params.n
    al, be = _lifted(params, ctx)
    rows = []
    for i in range(1, n + 2):
        prod = ctx.one
        for k in range(1, n + 2):
            if k == i:
                continue
            prod = prod * ctx.sin(al(k) - be(i)) / _den(ctx, be(k) - be(i), eps,
                                                        f"beta_{k}-beta_{i}")
        row = []
        for j in range(1, n + 1):
            num = ctx.sin(be(j) - al(j)) * ctx.sin(al(n + 1))
            den = (_den(ctx, be(i) - al(j), eps, f"beta_{i}-alpha_{j}") *
                   _den(ctx, be(i) - al(n + 1), eps, f"beta_{i}-alpha_{n + 1}"))
            row.append(num / den * prod)
        row.append(prod)
        rows.append(row)
    return rows


def _entries_one0_sum(params: Parameters, ctx, eps: float):
    """The same matrix read off the connection theorem's sum formulas."""
    n = params.n
    al, be = _lifted(params, ctx)
    cols = []
    for src in range(1, n + 1):
        col = []
        for tgt in range(1, n + 2):
            coeff = (ctx.sin(be(src) - al(src)) * ctx.sin(al(n + 1))
                     / _den(ctx, be(tgt) - al(src), eps, f"beta_{tgt}-alpha_{src}")
                     / _den(ctx, be(tgt) - al(n + 1), eps, f"beta_{tgt}-alpha_{n + 1}"))
            for k in range(1, n + 2):
                if k == tgt:
                    continue
                coeff = coeff * ctx.sin(al(k) - be(tgt)) / _den(
                    ctx, be(k) - be(tgt), eps, f"beta_{k}-beta_{tgt}")
            col.append(coeff)
        cols.append(col)
    last = []
    for tgt in range(1, n + 2):
        coeff = ctx.one
        for k in range(1, n + 2):
            if k == tgt:
                continue
            coeff = coeff * ctx.sin(al(k) - be(tgt)) / _den(
                ctx, be(k) - be(tgt), eps, f"beta_{k}-beta_{tgt}")
        last.append(coeff)
    cols.append(last)
    return [[cols[j][i] for j in range(n + 1)] for i in range(n + 1)]


def _entries_inf0_display(params: Parameters, ctx, eps: float):
    n = params.n
    al, be = _lifted(params, ctx)
    rows = []
    for i in range(1, n + 2):
        prod = ctx.one
        for k in range(1, n + 2):
            if k == i:
                continue
            prod = prod * ctx.sin(al(k) - be(i)) / _den(ctx, be(k) - be(i), eps,
                                                        f"beta_{k}-beta_{i}")
        row = []
        for j in range(1, n + 2):
            row.append(ctx.sin(be(j) - al(j))
                       / _den(ctx, be(i) - al(j), eps, f"beta_{i}-alpha_{j}") * prod)
        rows.append(row)
    return rows


def _entries_inf0_sum(params: Parameters, ctx, eps: float):
    """Same matrix from the infinity->0 proposition's sum formula."""
    n = params.n
    al, be = _lifted(params, ctx)
    cols = []
    for src in range(1, n + 2):
        col = []
        for tgt in range(1, n + 2):
            coeff = ctx.sin(be(src) - al(src)) / _den(
                ctx, be(tgt) - al(src), eps, f"beta_{tgt}-alpha_{src}")
            for l in range(1, n + 2):
                if l == tgt:
                    continue
                coeff = coeff * ctx.sin(al(l) - be(tgt)) / _den(
                    ctx, be(l) - be(tgt), eps, f"beta_{l}-beta_{tgt}")
            col.append(coeff)
        cols.append(col)
    return [[cols[j][i] for j in range(n + 1)] for i in range(n + 1)]


def _entries_zero1(params: Parameters, ctx, eps: float):
    n = params.n
    al, be = _lifted(params, ctx)
    B = ctx.total_exponent(params)
    sB = _den(ctx, B, eps, "total exponent B")
    if ctx.magnitude(sB) < math.pi * eps:     # unreachable; _den already threw
        raise DegenerateMatrixError("resonant total exponent")
    rows = []
    for i in range(1, n + 1):
        pre = -ctx.sin(al(i)) / (_den(ctx, al(n + 1), eps, f"alpha_{n + 1}") * sB)
        for k in range(1, n + 1):
            if k == i:
                continue
            pre = pre * ctx.sin(be(k) - al(i)) / _den(ctx, al(k) - al(i), eps,
                                                      f"alpha_{k}-alpha_{i}")
        row = []
        for j in range(1, n + 2):
            row.append(pre * ctx.sin(B - be(j) + al(i)) * ctx.sin(be(j) - al(j))
                       / _den(ctx, be(j) - al(i), eps, f"beta_{j}-alpha_{i}"))
        rows.append(row)
    rows.append([-ctx.sin(be(j) - al(j)) / sB for j in range(1, n + 2)])
    return rows


def _to_matrix(kind: str, n: int, rows) -> ConnectionMatrix:
    entries = tuple(tuple(complex(v) for v in row) for row in rows)
    return ConnectionMatrix(kind=kind, n=n, entries=entries)


def _check_agreement(kind: str, a, b) -> None:
    worst = 0.0
    for ra, rb in zip(a, b):
        for va, vb in zip(ra, rb):
            num = abs(complex(va) - complex(vb))
            worst = max(worst, num / max(1.0, abs(complex(va))))
    if worst > _AGREE_TOL:
        raise GHConnectError(
            f"internal: dual transcriptions of {kind} disagree by {worst:.3e}"
        )


# ---------------------------------------------------------------------------
# public constructors
# ---------------------------------------------------------------------------

def c_10(params: Parameters, eps_generic: float = DEFAULT_EPS_GENERIC) -> ConnectionMatrix:
    """Connection matrix from the 1-side to the 0-side basis (kind one0)."""
    ctx = _DoubleCtx()
    disp = _entries_one0_display(params, ctx, eps_generic)
    summ = _entries_one0_sum(params, ctx, eps_generic)
    _check_agreement("one0", disp, summ)
    return _to_matrix("one0", params.n, disp)


def c_inf0(params: Parameters, eps_generic: float = DEFAULT_EPS_GENERIC) -> ConnectionMatrix:
    """Connection matrix from the infinity-side to the 0-side basis (kind inf0)."""
    ctx = _DoubleCtx()
    disp = _entries_inf0_display(params, ctx, eps_generic)
    summ = _entries_inf0_sum(params, ctx, eps_generic)
    _check_agreement("inf0", disp, summ)
    return _to_matrix("inf0", params.n, disp)


def c_01(params: Parameters, eps_generic: float = DEFAULT_EPS_GENERIC) -> ConnectionMatrix:
    """Connection matrix from the 0-side to the 1-side basis (kind zero1).

    Shares the 1e-13 dual-form guarantee indirectly: its column reading is
    verified against the corollary display by the verification suite; here
    the construction guards all denominators, in particular the resonance
    sin(pi*B).
    """
    ctx = _DoubleCtx()
    try:
        rows = _entries_zero1(params, ctx, eps_generic)
    except DegenerateMatrixError as exc:
        if "total exponent" in str(exc):
            raise DegenerateMatrixError(
                f"resonant total exponent: B = {params.total_exponent}"
            ) from exc
        raise
    return _to_matrix("zero1", params.n, rows)


def c_one_inf(params: Parameters, eps_generic: float = DEFAULT_EPS_GENERIC) -> ConnectionMatrix:
    """Composed product (inf0)^(-1) * (one0): 1-side sources over the
    infinity-side basis. Product only — no sine display exists for it."""
    a = c_inf0(params, eps_generic).as_ndarray()
    b = c_10(params, eps_generic).as_ndarray()
    try:
        x = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise DegenerateMatrixError(f"inf0 matrix numerically singular: {exc}") from exc
    return _to_matrix("one_inf", params.n, x.tolist())


def scaling_matrices(params: Parameters):
    """Diagonal local-monodromy scalings (N_0, N_1, N_inf).

    N_0 = diag(e(alpha_i)); N_1 = N_inf = e(B) * diag(e(beta_i)) with the
    extended beta_{n+1} = 1 (so its last diagonal entry is -e(B)).
    """
    n = params.n
    B = params.total_exponent
    n0 = _diag([e_pi(params.alpha_at(i)) for i in range(1, n + 2)])
    n1 = _diag([e_pi(B) * e_pi(params.beta_at(i)) for i in range(1, n + 2)])
    return n0, n1, n1


def _diag(vals):
    k = len(vals)
    return tuple(tuple(vals[i] if i == j else 0j for j in range(k)) for i in range(k))


def _matmul(a, b):
    k = len(a)
    return tuple(
        tuple(sum(a[i][m] * b[m][j] for m in range(k)) for j in range(k))
        for i in range(k)
    )


def c_hat(kind: str, params: Parameters,
          eps_generic: float = DEFAULT_EPS_GENERIC) -> ConnectionMatrix:
    """Shift-invariant normalization of a connection matrix.

    hat_one0: N0^(-1) diag(-e(beta_i)) C10 N1;  hat_inf0: N0^(-1) Cinf0 Ninf.
    Invariant under integer shifts of any alpha_m or beta_m.
    """
    if kind not in ("one0", "inf0"):
        raise ConfigError(f"c_hat kind must be one0 or inf0, got {kind!r}")
    n = params.n
    n0_inv = _diag([e_pi(-params.alpha_at(i)) for i in range(1, n + 2)])
    if kind == "one0":
        mid = _diag([-e_pi(params.beta_at(i)) for i in range(1, n + 2)])
        core = c_10(params, eps_generic).entries
        _, n1, _ = scaling_matrices(params)
        out = _matmul(_matmul(_matmul(n0_inv, mid), core), n1)
        return _to_matrix("hat_one0", n, out)
    core = c_inf0(params, eps_generic).entries
    _, _, ninf = scaling_matrices(params)
    out = _matmul(_matmul(n0_inv, core), ninf)
    return _to_matrix("hat_inf0", n, out)


def periodicity_residual(kind: str, params: Parameters, dalpha, dbeta,
                         eps_generic: float = DEFAULT_EPS_GENERIC) -> float:
    """max-norm change of the hat-matrix under an integer parameter shift."""
    base = c_hat(kind, params, eps_generic).entries
    moved = c_hat(kind, shift_params(params, dalpha, dbeta), eps_generic).entries
    return max(
        abs(a - b)
        for ra, rb in zip(base, moved)
        for a, b in zip(ra, rb)
    )


# ---------------------------------------------------------------------------
# precision-escalation hooks for the inverse check (used by verify)
# ---------------------------------------------------------------------------

def entries_mp(kind: str, params: Parameters, dps: int,
               eps_generic: float = DEFAULT_EPS_GENERIC):
    """Entry lists recomputed in mpmath at the given precision.

    Returns nested lists of mpmath.mpc. Used by the inverse check when the
    double-precision error bound cannot reach the required tolerance.
    """
    builders = {"one0": _entries_one0_display, "zero1": _entries_zero1,
                "inf0": _entries_inf0_display}
    if kind not in builders:
        raise ConfigError(f"no mp entry builder for kind {kind!r}")
    with mpmath.workdps(dps):
        return builders[kind](params, _MpCtx(), eps_generic)

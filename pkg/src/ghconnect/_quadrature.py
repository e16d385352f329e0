"""Direct numerical evaluation of the loaded integral solutions (n <= 2).

Every fundamental-solution integral runs over ordered chains of variables
confined to an interval or a ray. Each chain is mapped onto the unit cube
by stick-breaking anchored at the end where singular factors accumulate:

* bounded chain, k members: distances from the anchor are
  d_m = span * v_1 ... v_m, so member distances, adjacent gaps
  d_m (1 - v_{m+1}) and the opposite-end gap span (1 - v_1) are exact
  monomials times (1 - v) factors — no subtractive cancellation;
* ray chain: successive gaps are G_j = v_j / (1 - v_j) and distances from
  the finite end are the cumulative sums, again all-positive.

The cube integral is evaluated with a tensorized tanh-sinh rule entirely
in log space (the ray map has huge dynamic range), refining the step until
two successive levels agree. Integrability and decay of every factor is
audited symbolically per stick variable before any evaluation; violations
raise QuadratureError rather than returning garbage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import ConfigError, QuadratureError
from .params import Parameters, to_exponents

__all__ = ["BranchFixing", "DomainSpec", "QuadResult", "integrate_loaded_domain"]

_TAU_MAX = 6.5          # tanh-sinh truncation; e^{-0.05*pi*sinh(6.5)} ~ 1e-23
_BASE_H = 0.5
_MAX_LEVEL_1D = 7
_MAX_LEVEL_2D = 5
_RE_MARGIN = 0.05       # endpoint exponents must clear -1 by this much
_DECAY_MARGIN = 0.05    # ray decay exponents must clear -1 by this much
_CHUNK_ROWS = 256

_FAMILIES = ("D0", "Dinf", "D0t", "D1t")


@dataclass(frozen=True)
class BranchFixing:
    """Signs that make every integrand base positive on the domain."""
    epsilon: tuple[int, ...]    # one per coordinate factor t_1..t_n
    eta: tuple[int, ...]        # one per gap factor (t_0-t_1)..(t_n-t_{n+1})


@dataclass(frozen=True)
class DomainSpec:
    """Which loaded integral to evaluate.

    family: D0 / Dinf (z < 0 bases at 0 and infinity) or D0t / D1t
    (0 < z < 1 bases at 0 and 1); index: basis member 1..n+1.
    """
    family: str
    index: int
    n: int
    z: float

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ConfigError(f"unknown domain family {self.family!r}")
        if self.n < 1:
            raise ConfigError("n must be >= 1")
        if not 1 <= self.index <= self.n + 1:
            raise ConfigError(f"index must be in 1..{self.n + 1}, got {self.index}")
        z = float(self.z)
        if self.family in ("D0", "Dinf") and not z < 0:
            raise ConfigError(f"family {self.family} requires z < 0, got {z}")
        if self.family in ("D0t", "D1t") and not 0 < z < 1:
            raise ConfigError(f"family {self.family} requires 0 < z < 1, got {z}")
        object.__setattr__(self, "z", z)


@dataclass(frozen=True)
class QuadResult:
    value: complex
    error_estimate: float
    levels_used: int
    branch: BranchFixing


# ---------------------------------------------------------------------------
# chain geometry
# ---------------------------------------------------------------------------

class _Chain:
    def __init__(self, kind: str, members: tuple[int, ...], anchor: float,
                 direction: int, span: float | None = None):
        self.kind = kind            # "bounded" | "ray"
        self.members = members      # t-indices; bounded: farthest-from-anchor
                                    # first; ray: nearest-finite-end first
        self.anchor = anchor        # bounded anchor point / ray finite end
        self.direction = direction  # position = anchor + direction * distance
        self.span = span            # bounded only
        self.sticks: tuple[int, ...] = ()


def _chains_for(spec: DomainSpec) -> tuple[list[_Chain], int]:
    n, i, z = spec.n, spec.index, spec.z
    ch: list[_Chain] = []
    if spec.family == "D0":
        if i <= n:
            ch.append(_Chain("bounded", tuple(range(n, i - 1, -1)), 0.0, -1, span=-z))
        if i >= 2:
            ch.append(_Chain("ray", tuple(range(1, i)), 1.0, +1))
    elif spec.family == "Dinf":
        if i <= n:
            ch.append(_Chain("ray", tuple(range(n, i - 1, -1)), z, -1))
        if i >= 2:
            ch.append(_Chain("bounded", tuple(range(1, i)), 0.0, +1, span=1.0))
    elif spec.family == "D0t":
        if i <= n:
            ch.append(_Chain("bounded", tuple(range(n, i - 1, -1)), 0.0, +1, span=z))
        if i >= 2:
            ch.append(_Chain("ray", tuple(range(1, i)), 1.0, +1))
    else:  # D1t
        if i <= n:
            ch.append(_Chain("ray", tuple(range(n, i - 1, -1)), 0.0, -1))
            if i >= 2:
                ch.append(_Chain("bounded", tuple(range(1, i)), 0.0, +1, span=1.0))
        else:
            ch.append(_Chain("bounded", tuple(range(n, 0, -1)), 1.0, -1, span=1.0 - z))
    stick = 0
    for c in ch:
        c.sticks = tuple(range(stick, stick + len(c.members)))
        stick += len(c.members)
    return ch, stick


def _sample_positions(spec: DomainSpec, chains: list[_Chain]) -> dict[int, float]:
    """An interior point of the domain, used only to fix signs."""
    pos = {0: 1.0, spec.n + 1: spec.z}
    for c in chains:
        if c.kind == "bounded":
            d = c.span
            for p, t in enumerate(c.members, start=1):
                d *= 0.37
                pos[t] = c.anchor + c.direction * d
        else:
            s = 0.0
            for p, t in enumerate(c.members, start=1):
                s += 0.59 * (0.8 ** p)
                pos[t] = c.anchor + c.direction * s
    return pos


# ---------------------------------------------------------------------------
# factor resolution
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Mono:
    chain: int
    pos: int                    # base = d_pos (distance from bounded anchor)


@dataclass(frozen=True)
class _GapB:
    chain: int
    p: int                      # base = d_p * (1 - v at local stick p), d_0 = span


@dataclass(frozen=True)
class _RayG:
    chain: int
    j: int                      # base = G_j, the j-th ray gap (0-based)


@dataclass(frozen=True)
class _Affine:
    c0: float                                       # nonnegative constant
    bterms: tuple[tuple[int, int, int], ...]        # (chain, pos, +-1): bounded d
    rterms: tuple[tuple[int, int], ...]             # (chain, pos): ray s, coeff +1


@dataclass(frozen=True)
class _Factor:
    c: complex
    form: object
    label: str


def _endpoint(spec: DomainSpec, loc, t_idx: int):
    """(constant part, optional (chain, pos)) decomposition of a position."""
    if t_idx == 0:
        return 1.0, None
    if t_idx == spec.n + 1:
        return spec.z, None
    ci, pos, chain = loc[t_idx]
    return chain.anchor, (ci, pos)


def _affine_general(eta: int, ea, eb, chains) -> _Affine:
    (ca, ta), (cb, tb) = ea, eb
    c0 = eta * (ca - cb)
    bterms, rterms = [], []
    for term, sgn in ((ta, eta), (tb, -eta)):
        if term is None:
            continue
        ci, pos = term
        coeff = sgn * chains[ci].direction
        if chains[ci].kind == "bounded":
            bterms.append((ci, pos, coeff))
        else:
            if coeff != 1:
                raise QuadratureError(
                    "internal: ray distance entered a base with negative sign")
            rterms.append((ci, pos))
    if c0 < -1e-12:
        raise QuadratureError("internal: negative constant in positive base")
    return _Affine(max(c0, 0.0), tuple(bterms), tuple(rterms))


def _resolve_factors(spec: DomainSpec, params: Parameters,
                     chains: list[_Chain]):
    n, z = spec.n, spec.z
    exps = to_exponents(params)
    loc = {}
    for ci, c in enumerate(chains):
        for p, t in enumerate(c.members, start=1):
            loc[t] = (ci, p, c)
    sample = _sample_positions(spec, chains)

    factors: list[_Factor] = []
    epsilon, eta = [], []

    for m in range(1, n + 1):                      # coordinate factors t_m
        e = 1 if sample[m] > 0 else -1
        epsilon.append(e)
        ci, pos, c = loc[m]
        if c.kind == "bounded" and c.anchor == 0.0:
            form: object = _Mono(ci, pos)
        elif c.kind == "bounded":
            form = _Affine(e * c.anchor, ((ci, pos, e * c.direction),), ())
            if form.c0 <= 0:
                raise QuadratureError("internal: nonpositive affine constant")
        else:
            if e * c.direction != 1:
                raise QuadratureError(
                    "internal: ray coordinate with negative distance sign")
            c0 = e * c.anchor
            if c0 < 0:
                raise QuadratureError("internal: negative ray coordinate offset")
            form = _Affine(c0, (), ((ci, pos),))
        factors.append(_Factor(exps.lambda_[m - 1], form, f"coordinate t{m}"))

    for m in range(1, n + 2):                      # gap factors t_{m-1} - t_m
        diff = sample[m - 1] - sample[m]
        et = 1 if diff > 0 else -1
        eta.append(et)
        ea = _endpoint(spec, loc, m - 1)
        eb = _endpoint(spec, loc, m)
        ta, tb = ea[1], eb[1]
        form = None
        if ta is not None and tb is not None and ta[0] == tb[0] \
                and abs(ta[1] - tb[1]) == 1:
            ci = ta[0]
            p = min(ta[1], tb[1])
            form = _GapB(ci, p) if chains[ci].kind == "bounded" else _RayG(ci, p)
        elif (ta is None) != (tb is None):
            const = ea[0] if ta is None else eb[0]
            ci, pos = tb if ta is None else ta
            c = chains[ci]
            if c.kind == "bounded" and abs(const - c.anchor) < 1e-14:
                form = _Mono(ci, pos)
            elif c.kind == "bounded" and pos == 1 \
                    and abs(const - (c.anchor + c.direction * c.span)) < 1e-14:
                form = _GapB(ci, 0)
            elif c.kind == "ray" and pos == 1 and abs(const - c.anchor) < 1e-14:
                form = _RayG(ci, 0)
        if form is None:
            form = _affine_general(et, ea, eb, chains)
        factors.append(_Factor(exps.mu[m - 1], form, f"gap t{m - 1}-t{m}"))

    return factors, BranchFixing(tuple(epsilon), tuple(eta))


# ---------------------------------------------------------------------------
# integrability audit
# ---------------------------------------------------------------------------

def _audit(chains: list[_Chain], factors: list[_Factor], nsticks: int) -> None:
    p0 = [0j] * nsticks         # v -> 0 exponent per stick
    p1 = [0j] * nsticks         # v -> 1 exponent (bounded sticks)
    growth = [0j] * nsticks     # base growth exponent as a ray gap -> inf

    for f in factors:
        form = f.form
        if isinstance(form, _Mono):
            st = chains[form.chain].sticks
            for q in range(form.pos):
                p0[st[q]] += f.c
        elif isinstance(form, _GapB):
            st = chains[form.chain].sticks
            for q in range(form.p):
                p0[st[q]] += f.c
            p1[st[form.p]] += f.c
        elif isinstance(form, _RayG):
            s = chains[form.chain].sticks[form.j]
            p0[s] += f.c
            growth[s] += f.c
        else:
            for ci, pos in form.rterms:
                st = chains[ci].sticks
                for q in range(pos):
                    growth[st[q]] += f.c

    for c in chains:            # Jacobian of the bounded stick-breaking map
        if c.kind == "bounded":
            k = len(c.members)
            for q in range(k - 1):
                p0[c.sticks[q]] += (k - 1 - q)

    ray_sticks = set()
    for c in chains:
        if c.kind == "ray":
            ray_sticks.update(c.sticks)

    for s in range(nsticks):
        if p0[s].real <= -1 + _RE_MARGIN:
            raise QuadratureError(
                f"integrability condition violated: exponent sum "
                f"{p0[s]:.6g} at the singular end (stick {s}) is not above "
                f"-1 + {_RE_MARGIN}")
        if s in ray_sticks:
            if growth[s].real >= -1 - _DECAY_MARGIN:
                raise QuadratureError(
                    f"integral does not decay: growth exponent {growth[s]:.6g} "
                    f"on ray gap (stick {s}) is not below -1 - {_DECAY_MARGIN}")
        elif p1[s].real <= -1 + _RE_MARGIN:
            raise QuadratureError(
                f"integrability condition violated: gap exponent {p1[s]:.6g} "
                f"(stick {s}) is not above -1 + {_RE_MARGIN}")


# ---------------------------------------------------------------------------
# log-space tensor tanh-sinh evaluation
# ---------------------------------------------------------------------------

class _Plan:
    def __init__(self, spec: DomainSpec, params: Parameters):
        self.chains, self.nsticks = _chains_for(spec)
        self.factors, self.branch = _resolve_factors(spec, params, self.chains)
        _audit(self.chains, self.factors, self.nsticks)

    def eval_chunk(self, LOGV, LOG1MV):
        tables = []
        for c in self.chains:
            if c.kind == "bounded":
                log_d = [math.log(c.span)]
                for s in c.sticks:
                    log_d.append(log_d[-1] + LOGV[s])
                tables.append(("bounded", log_d))
            else:
                log_g = [LOGV[s] - LOG1MV[s] for s in c.sticks]
                log_s = [log_g[0]]
                for g in log_g[1:]:
                    log_s.append(np.logaddexp(log_s[-1], g))
                tables.append(("ray", log_g, log_s))

        total = 0j
        for f in self.factors:
            form = f.form
            if isinstance(form, _Mono):
                lb = tables[form.chain][1][form.pos]
            elif isinstance(form, _GapB):
                c = self.chains[form.chain]
                lb = tables[form.chain][1][form.p] + LOG1MV[c.sticks[form.p]]
            elif isinstance(form, _RayG):
                lb = tables[form.chain][1][form.j]
            else:
                lb = self._affine_log(form, tables)
            total = total + f.c * lb

        for ci, c in enumerate(self.chains):       # Jacobians
            if c.kind == "bounded":
                log_d = tables[ci][1]
                jac = log_d[0]
                for m in range(1, len(c.members)):
                    jac = jac + log_d[m]
                total = total + jac
            else:
                for s in c.sticks:
                    total = total - 2.0 * LOG1MV[s]
        return total

    def _affine_log(self, form: _Affine, tables):
        if any(sg < 0 for _, _, sg in form.bterms):
            # mixed signs never involve ray growth in the same linear part
            p = form.c0
            for ci, pos, sg in form.bterms:
                p = p + sg * np.exp(tables[ci][1][pos])
            pmin = float(np.min(p)) if isinstance(p, np.ndarray) else float(p)
            if pmin <= 0.0:
                raise QuadratureError(
                    "internal: integrand base lost positivity")
            lb = np.log(p)
        else:
            lb = math.log(form.c0) if form.c0 > 0 else -math.inf
            for ci, pos, _ in form.bterms:
                lb = np.logaddexp(lb, tables[ci][1][pos])
        for ci, pos in form.rterms:
            lb = np.logaddexp(lb, tables[ci][2][pos - 1])
        return lb


def _axis(level: int):
    h = _BASE_H / 2 ** level
    K = int(math.ceil(_TAU_MAX / h))
    tau = h * np.arange(-K, K + 1)
    u = math.pi * np.sinh(tau)
    with np.errstate(over="ignore"):
        logv = -np.log1p(np.exp(-u))
        log1mv = -np.log1p(np.exp(u))
    logw = logv + log1mv + np.log(math.pi * np.cosh(tau)) + math.log(h)
    return logv, log1mv, logw


def _eval_level(plan: _Plan, level: int) -> complex:
    logv, log1mv, logw = _axis(level)
    bad = ~np.isfinite(logv) | ~np.isfinite(log1mv)
    m = logv.size
    # off-scale nodes hit -inf logs and turn into NaN inside eval_chunk;
    # they are masked to -inf right below, so the invalid ops are expected
    with np.errstate(invalid="ignore"):
        if plan.nsticks == 1:
            llog = plan.eval_chunk([logv], [log1mv]) + logw
            llog = np.where(bad, -np.inf, llog)
            return complex(np.exp(llog).sum())
        total = 0j
        for r0 in range(0, m, _CHUNK_ROWS):
            r1 = min(r0 + _CHUNK_ROWS, m)
            lv = [logv[r0:r1, None], logv[None, :]]
            l1 = [log1mv[r0:r1, None], log1mv[None, :]]
            llog = plan.eval_chunk(lv, l1) + logw[r0:r1, None] + logw[None, :]
            llog = np.where(bad[r0:r1, None] | bad[None, :], -np.inf, llog)
            total += np.exp(llog).sum()
    return complex(total)


def integrate_loaded_domain(spec: DomainSpec, params: Parameters,
                            tol: float | None = None) -> QuadResult:
    """Evaluate one loaded integral solution by tanh-sinh quadrature.

    Supports n <= 2. Refines until two successive levels agree within
    0.5 * tol * max(1, |I|); raises QuadratureError on stagnation or when
    the audited integrability/decay conditions fail (margin 0.05).
    """
    if params.n != spec.n:
        raise ConfigError(f"parameter n = {params.n} != domain n = {spec.n}")
    if spec.n > 2:
        raise ConfigError("quadrature is implemented for n <= 2 only")
    if tol is None:
        tol = 1e-8 if spec.n == 1 else 1e-6
    plan = _Plan(spec, params)
    max_level = _MAX_LEVEL_1D if plan.nsticks == 1 else _MAX_LEVEL_2D
    prev: complex | None = None
    delta = math.inf
    for level in range(max_level + 1):
        val = _eval_level(plan, level)
        if prev is not None:
            delta = abs(val - prev)
            if level >= 2 and delta <= 0.5 * tol * max(1.0, abs(val)):
                return QuadResult(val, delta, level, plan.branch)
        prev = val
    raise QuadratureError(
        f"quadrature stagnation: last two levels differ by {delta:.3e}, "
        f"target {tol:.1e}, at refinement level {max_level}")

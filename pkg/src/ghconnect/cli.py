"""Command-line interface for evaluating bases, matrices and verifications.

Usage:
  ghconnect eval   --point {0,1,inf} --z Z PARAMS [--tol T] [--output FMT]
  ghconnect matrix --kind {one0,zero1,inf0,one_inf,hat_one0,hat_inf0} PARAMS
  ghconnect verify --suite NAME [--seed S] [--draws K] [--output FMT]
  ghconnect oracle --method gauss      --kind KIND PARAMS
  ghconnect oracle --method quadrature --family FAM --index I --z Z PARAMS
  ghconnect oracle --method residue    --case CASE [--i I] [--j J] PARAMS
  ghconnect bench  [--seed S] [--output FMT]

PARAMS is either ``--params FILE`` (JSON with keys n / alpha / beta, complex
entries as [re, im] pairs) or inline ``--n N --alpha LIST --beta LIST`` with
comma-separated complex numbers ("0.2+0.3i" or "0.2+0.3j").

Exit codes:
  0  success
  1  verification failure (at least one report failed)
  2  configuration error (arguments, parameter shapes, genericity)
  3  numerical refusal (series or quadrature refusal, gamma pole,
     near-degenerate matrix denominator)

Machine-readable errors go to stderr as {"error": slug, "message": ...}.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from . import _jsonfmt
from .connection import c_01, c_10, c_hat, c_inf0, c_one_inf
from .exceptions import (ConfigError, DegenerateMatrixError, GenericityError,
                         PoleError, QuadratureError, SeriesError)
from .oracle import DomainSpec, gauss_reference, integrate_loaded_domain, residue_sum_check
from .params import Parameters, validate
from .series import f0, solution_vector
from .verify import SUITES, run_suite, sample_banded

_MATRIX_KINDS = ("one0", "zero1", "inf0", "one_inf", "hat_one0", "hat_inf0")
_RESIDUE_CASES = ("i_offdiag", "i_diag", "ii", "iii", "iv")


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace("i", "j").replace(" ", ""))
    except ValueError:
        raise ConfigError(f"cannot parse complex number {text!r}") from None


def _add_param_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--params", metavar="FILE",
                   help="JSON file with keys n, alpha, beta")
    p.add_argument("--n", type=int, help="series depth (alpha has n+1 entries)")
    p.add_argument("--alpha", help="comma-separated upper parameters")
    p.add_argument("--beta", help="comma-separated lower parameters")


def _add_output_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", choices=("human", "json"), default="human")


def _params_from_args(args) -> Parameters:
    if args.params:
        try:
            with open(args.params, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read {args.params}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON in {args.params}: {exc}") from None
        return _jsonfmt.parse_params(data)
    if args.n is None or args.alpha is None or args.beta is None:
        raise ConfigError("provide --params FILE or all of --n/--alpha/--beta")
    alpha = tuple(_parse_complex(s) for s in args.alpha.split(","))
    beta = tuple(_parse_complex(s) for s in args.beta.split(","))
    return Parameters(args.n, alpha, beta)


def _fmt_c(v: complex) -> str:
    return "%.12g %s %.12gi" % (v.real, "+" if v.imag >= 0 else "-", abs(v.imag))


def _cmd_eval(args) -> int:
    params = _params_from_args(args)
    z = _parse_complex(args.z)
    vec = solution_vector(args.point, params, z, tol=args.tol)
    if args.output == "json":
        print(_jsonfmt.dumps({
            "point": vec.point,
            "z": [vec.z.real, vec.z.imag],
            "values": [[v.real, v.imag] for v in vec.values],
            "branch": vec.branch_note,
        }))
    else:
        print(f"loaded solution vector at point {vec.point}, z = {_fmt_c(vec.z)}")
        print(f"  ({vec.branch_note})")
        for i, v in enumerate(vec.values, start=1):
            print(f"  F_{i} = {_fmt_c(v)}")
    return 0


def _cmd_matrix(args) -> int:
    params = _params_from_args(args)
    builders = {
        "one0": c_10, "zero1": c_01, "inf0": c_inf0, "one_inf": c_one_inf,
        "hat_one0": lambda p: c_hat("one0", p),
        "hat_inf0": lambda p: c_hat("inf0", p),
    }
    m = builders[args.kind](params)
    if args.output == "json":
        print(_jsonfmt.dumps(_jsonfmt.matrix_to_dict(m)))
    else:
        print(f"{m.kind} connection matrix, n = {m.n}  ({m.convention})")
        for row in m.entries:
            print("  [" + ", ".join(_fmt_c(v) for v in row) + "]")
    return 0


def _cmd_verify(args) -> int:
    reports = run_suite(args.suite, seed=args.seed, draws=args.draws)
    failures = 0
    for r in reports:
        if not r.passed:
            failures += 1
        if args.output == "json":
            print(_jsonfmt.dumps(r.to_json_dict()))
        else:
            zs = "" if r.z is None else f"  z={_fmt_c(r.z)}"
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.identity}  n={r.n}"
                  f"{zs}  residual={r.residual:.3e}  tol={r.tolerance:.1e}")
    if args.output == "human":
        print(f"{len(reports) - failures}/{len(reports)} checks passed")
    return 1 if failures else 0


def _cmd_oracle(args) -> int:
    params = _params_from_args(args)
    if args.method == "gauss":
        if args.kind is None or args.kind not in ("one0", "zero1", "inf0"):
            raise ConfigError("--method gauss needs --kind one0|zero1|inf0")
        m = gauss_reference(params, args.kind)
        if args.output == "json":
            print(_jsonfmt.dumps(_jsonfmt.matrix_to_dict(m)))
        else:
            print(f"gamma-function reference for {args.kind}, n = 1")
            for row in m.entries:
                print("  [" + ", ".join(_fmt_c(v) for v in row) + "]")
        return 0
    if args.method == "quadrature":
        if args.family is None or args.index is None or args.z is None:
            raise ConfigError(
                "--method quadrature needs --family, --index and --z")
        spec = DomainSpec(args.family, args.index, params.n,
                          float(_parse_complex(args.z).real))
        res = integrate_loaded_domain(spec, params, args.tol)
        if args.output == "json":
            print(_jsonfmt.dumps({
                "family": args.family, "index": args.index, "n": params.n,
                "z": [spec.z, 0.0],
                "value": [res.value.real, res.value.imag],
                "error_estimate": res.error_estimate,
                "levels_used": res.levels_used,
            }))
        else:
            print(f"integral over {args.family}_{args.index}, z = {spec.z:g}")
            print(f"  value = {_fmt_c(res.value)}")
            print(f"  error estimate {res.error_estimate:.3e} "
                  f"after {res.levels_used} levels")
        return 0
    if args.method == "residue":
        if args.case is None:
            raise ConfigError("--method residue needs --case")
        chk = residue_sum_check(args.case, params, i=args.i, j=args.j)
        if args.output == "json":
            print(_jsonfmt.dumps({
                "case": chk.case, "n": chk.n,
                "value": [chk.value.real, chk.value.imag],
                "expected": [chk.expected.real, chk.expected.imag],
                "residual": chk.residual,
                "details": chk.details,
            }))
        else:
            print(f"residue closure, case {chk.case}, n = {chk.n}")
            print(f"  sum over unit-circle poles = {_fmt_c(chk.value)}")
            print(f"  expected                  = {_fmt_c(chk.expected)}")
            print(f"  residual = {chk.residual:.3e}")
        return 0
    raise ConfigError(f"unknown oracle method {args.method!r}")


def _cmd_bench(args) -> int:
    rows = []
    for n in range(1, 7):
        params = sample_banded(random.Random(f"bench:{args.seed}:{n}"), n)
        for tol in (1e-6, 1e-10, 1e-14):
            t0 = time.perf_counter()
            solution_vector("0", params, 0.5, tol=tol)
            ms = (time.perf_counter() - t0) * 1e3
            terms = f0(n + 1, params, 0.5, "pos_z", tol).terms_used
            rows.append({"n": n, "tol": tol, "ms": round(ms, 3),
                         "terms": terms})
    if args.output == "json":
        for row in rows:
            print(_jsonfmt.dumps(row))
    else:
        print("series evaluation at z = 0.5 (full 0-side vector)")
        print("   n      tol        ms    terms")
        for row in rows:
            print(f"  {row['n']:2d}  {row['tol']:8.0e}  {row['ms']:8.3f}"
                  f"  {row['terms']:7d}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ghconnect",
        description="generalized hypergeometric connection problem: bases, "
                    "matrices, verification suites")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a loaded solution vector")
    _add_param_args(p)
    _add_output_arg(p)
    p.add_argument("--point", choices=("0", "1", "inf"), required=True)
    p.add_argument("--z", required=True, help="evaluation point")
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("matrix", help="print a connection matrix")
    _add_param_args(p)
    _add_output_arg(p)
    p.add_argument("--kind", choices=_MATRIX_KINDS, required=True)
    p.set_defaults(func=_cmd_matrix)

    p = sub.add_parser("verify", help="run a verification suite")
    _add_output_arg(p)
    p.add_argument("--suite", choices=SUITES + ("all",), required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--draws", type=int, default=None,
                   help="override the per-cell draw count")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oracle", help="independent reference computations")
    _add_param_args(p)
    _add_output_arg(p)
    p.add_argument("--method", choices=("gauss", "quadrature", "residue"),
                   required=True)
    p.add_argument("--kind", choices=("one0", "zero1", "inf0"))
    p.add_argument("--family", choices=("D0", "Dinf", "D0t", "D1t"))
    p.add_argument("--index", type=int)
    p.add_argument("--z")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--case", choices=_RESIDUE_CASES)
    p.add_argument("--i", type=int, default=None)
    p.add_argument("--j", type=int, default=None)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("bench", help="time series evaluation across n and tol")
    _add_output_arg(p)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_bench)

    return ap


def _fail(slug: str, exc: Exception, code: int) -> int:
    sys.stderr.write(_jsonfmt.dumps({"error": slug, "message": str(exc)}) + "\n")
    return code


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        return _fail("config", exc, 2)
    except GenericityError as exc:
        return _fail("genericity", exc, 2)
    except SeriesError as exc:
        return _fail("series-refusal", exc, 3)
    except QuadratureError as exc:
        return _fail("quadrature-refusal", exc, 3)
    except PoleError as exc:
        return _fail("pole", exc, 3)
    except DegenerateMatrixError as exc:
        return _fail("degenerate-matrix", exc, 3)


if __name__ == "__main__":
    sys.exit(main())

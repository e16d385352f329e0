"""Map the 0<->1 connection residual over complex z in the overlap lens.

The two series bases converge on |z| < 1 and |1 - z| < 1; their identity
F1(z) = F0(z) @ C10 should hold on the whole open lens, not only on the real
segment the verification suite samples. This script grids the lens and
reports the worst componentwise relative residual per row of the grid, plus
an exponent map (one digit = -log10 of the local residual).

Usage:
  python scripts/complex_z_lens.py [--n N --alpha LIST --beta LIST]
                                   [--grid K] [--edge-margin M]
                                   [--tol T] [--output {human,json}]

Exit codes: 0 success, 2 bad arguments.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from ghconnect.connection import c_10
from ghconnect.exceptions import ConfigError, SeriesError
from ghconnect.params import Parameters
from ghconnect.series import solution_vector


def parse_args(argv=None) -> argparse.Namespace:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--alpha", default="0.21,0.43,0.87",
                    help="comma-separated upper parameters")
    ap.add_argument("--beta", default="1.13,0.59",
                    help="comma-separated lower parameters")
    ap.add_argument("--grid", type=int, default=9,
                    help="points per axis across the lens bounding box")
    ap.add_argument("--edge-margin", type=float, default=0.08,
                    help="skip z closer than this to either disk boundary")
    ap.add_argument("--tol", type=float, default=1e-12,
                    help="series truncation tolerance")
    ap.add_argument("--output", choices=("human", "json"), default="human")
    return ap.parse_args(argv)


def lens_points(grid: int, edge: float):
    """Grid points inside both unit disks, away from their boundaries."""
    xs = np.linspace(-0.1, 1.1, grid)
    ys = np.linspace(-0.75, 0.75, grid)
    for y in ys:
        row = []
        for x in xs:
            z = complex(x, y)
            if abs(z) < 1 - edge and abs(1 - z) < 1 - edge:
                row.append(z)
        yield y, row


def residual_at(params: Parameters, mat: np.ndarray, z: complex,
                tol: float) -> float | None:
    try:
        f0 = np.array(solution_vector("0", params, z, tol).values)
        f1 = np.array(solution_vector("1", params, z, tol).values)
    except SeriesError:
        return None                 # near-boundary refusal: leave the cell open
    return float(np.max(np.abs(f0 @ mat - f1) / np.abs(f1)))


def main(argv=None) -> int:
    args = parse_args(argv)
    try:
        alpha = tuple(complex(v.replace("i", "j")) for v in args.alpha.split(","))
        beta = tuple(complex(v.replace("i", "j")) for v in args.beta.split(","))
        params = Parameters(args.n, alpha, beta)
        mat = c_10(params).as_ndarray()
    except (ValueError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    rows, worst, count, skipped = [], 0.0, 0, 0
    for y, zs in lens_points(args.grid, args.edge_margin):
        cells = []
        for z in zs:
            res = residual_at(params, mat, z, args.tol)
            if res is None:
                skipped += 1
                continue
            worst = max(worst, res)
            count += 1
            cells.append((z, res))
        rows.append((y, cells))

    if args.output == "json":
        doc = {
            "n": args.n,
            "grid_points": count,
            "worst_residual": worst,
            "rows": [
                {"im": y, "points": [[z.real, z.imag, r] for z, r in cells]}
                for y, cells in rows
            ],
        }
        print(json.dumps(doc, indent=1))
        return 0

    print(f"0<->1 connection residual on the lens, n = {args.n}, "
          f"{count} points ({skipped} refused near the boundary), "
          f"series tol {args.tol:g}")
    for y, cells in rows:
        if not cells:
            continue
        digits = "".join(
            str(min(9, int(-np.log10(max(r, 1e-300))))) if r > 0 else "*"
            for _, r in cells)
        row_worst = max(r for _, r in cells)
        print(f"  Im z = {y:+.3f}  [{digits}]  worst {row_worst:.3e}")
    print(f"worst residual over the lens: {worst:.3e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

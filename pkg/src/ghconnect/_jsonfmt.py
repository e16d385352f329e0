"""Byte-stable JSON output and tolerant parameter parsing.

Serialization renders every float with %.17g and keeps dict insertion
order, so identical inputs always produce identical bytes (the rerun
determinism contract). Complex numbers serialize as [re, im] pairs.
"""

from __future__ import annotations

import json

from .exceptions import ConfigError
from .params import Parameters


def _format_float(x: float) -> str:
    if x != x or x in (float("inf"), float("-inf")):
        raise ConfigError("non-finite float in JSON output")
    s = "%.17g" % x
    # "%.17g" may print integral values without a dot; keep them as-is,
    # json parsers accept both forms.
    return s


def dumps(obj) -> str:
    """Deterministic JSON encoder (insertion-ordered dicts, %.17g floats)."""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _format_float(obj)
    if isinstance(obj, complex):
        return "[%s, %s]" % (_format_float(obj.real), _format_float(obj.imag))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, dict):
        parts = []
        for k, v in obj.items():
            if not isinstance(k, str):
                raise ConfigError("JSON object keys must be strings")
            parts.append("%s: %s" % (json.dumps(k), dumps(v)))
        return "{" + ", ".join(parts) + "}"
    raise ConfigError(f"cannot serialize {type(obj).__name__} to JSON")


def _as_complex(v, what: str) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2 \
            and all(isinstance(c, (int, float)) for c in v):
        return complex(v[0], v[1])
    raise ConfigError(f"{what} must be a number or an [re, im] pair")


def parse_params(data) -> Parameters:
    """Build Parameters from the {"n", "alpha", "beta"} JSON shape."""
    if not isinstance(data, dict):
        raise ConfigError("parameter JSON must be an object")
    try:
        n = data["n"]
        alpha = data["alpha"]
        beta = data["beta"]
    except KeyError as exc:
        raise ConfigError(f"parameter JSON missing key {exc.args[0]!r}") from None
    if not isinstance(n, int) or n < 1:
        raise ConfigError("n must be a positive integer")
    if not isinstance(alpha, list) or not isinstance(beta, list):
        raise ConfigError("alpha and beta must be lists")
    a = tuple(_as_complex(v, "alpha entry") for v in alpha)
    b = tuple(_as_complex(v, "beta entry") for v in beta)
    return Parameters(n, a, b)


def params_to_dict(p: Parameters) -> dict:
    return {
        "n": p.n,
        "alpha": [[a.real, a.imag] for a in p.alpha],
        "beta": [[b.real, b.imag] for b in p.beta],
    }


def matrix_to_dict(m) -> dict:
    return {
        "kind": m.kind,
        "n": m.n,
        "convention": m.convention,
        "entries": [[[e.real, e.imag] for e in row] for row in m.entries],
    }

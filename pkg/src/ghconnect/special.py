"""Scalar special functions used throughout the package.

All routines work on Python complex numbers (floats are accepted and
upcast). The design constraints that matter here:

* ``sin_pi`` and ``e_pi`` reduce the real part of the argument by an exact
  integer subtraction before calling libm, so ``sin_pi(z + k)`` equals
  ``±sin_pi(z)`` *bit for bit* for integer ``k``. The periodicity checks of
  the hat-matrices lean on this.
* ``log_gamma`` delegates to mpmath (correctly rounded to double precision);
  everything built on top of it works in log space and exponentiates once.
"""

from __future__ import annotations

import cmath
import math

import mpmath

from .exceptions import ConfigError, PoleError

_MP_DPS = 25  # enough for a correctly-rounded double


def _as_complex(z) -> complex:
    if isinstance(z, complex):
        return z
    if isinstance(z, (int, float)):
        return complex(z)
    raise ConfigError(f"expected a number, got {type(z).__name__}")


def _is_nonpositive_integer(z: complex) -> bool:
    if z.imag != 0.0:
        return False
    r = z.real
    return r <= 0.0 and r == math.floor(r)


def sin_pi(z) -> complex:
    """sin(pi*z) with exact argument reduction in the real direction.

    The real part is reduced by the nearest integer (an exact float
    operation for |Re z| < 2^52), so accuracy does not degrade near
    integers and integer shifts flip the sign exactly.
    """
    z = _as_complex(z)
    x, y = z.real, z.imag
    k = round(x)
    r = x - k                                   # exact; |r| <= 0.5
    if y == 0.0:
        val = complex(math.sin(math.pi * r), 0.0)
    else:
        sr = math.sin(math.pi * r)
        cr = math.cos(math.pi * r)
        val = complex(sr * math.cosh(math.pi * y), cr * math.sinh(math.pi * y))
    return -val if (k & 1) else val


def e_pi(z) -> complex:
    """exp(i*pi*z), reduced the same way as :func:`sin_pi`."""
    z = _as_complex(z)
    x, y = z.real, z.imag
    k = round(x)
    r = x - k                                   # exact; |r| <= 0.5
    scale = math.exp(-math.pi * y)
    val = complex(scale * math.cos(math.pi * r), scale * math.sin(math.pi * r))
    return -val if (k & 1) else val


def log_gamma(z) -> complex:
    """Principal branch of log Gamma(z).

    Parameters
    ----------
    z : complex
        Anywhere off the pole set {0, -1, -2, ...}.

    Returns
    -------
    complex
        log Gamma(z), relative error below 1e-13 for |z| <= 50.

    Raises
    ------
    PoleError
        If z is a non-positive integer ("gamma pole").
    """
    z = _as_complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"gamma pole at z = {z}")
    with mpmath.workdps(_MP_DPS):
        val = mpmath.loggamma(mpmath.mpc(z.real, z.imag))
        return complex(val)


def log_beta(a, b) -> complex:
    """log of Euler's Beta, computed as lgamma(a)+lgamma(b)-lgamma(a+b)."""
    a = _as_complex(a)
    b = _as_complex(b)
    for name, v in (("a", a), ("b", b)):
        if _is_nonpositive_integer(v):
            raise PoleError(f"beta pole: argument {name} = {v}")
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b)


def beta(a, b) -> complex:
    """Euler Beta B(a, b).

    Pole of Gamma(a) or Gamma(b) raises PoleError ("beta pole"); a pole of
    the *denominator* Gamma(a+b) alone gives an honest zero.
    """
    a = _as_complex(a)
    b = _as_complex(b)
    for name, v in (("a", a), ("b", b)):
        if _is_nonpositive_integer(v):
            raise PoleError(f"beta pole: argument {name} = {v}")
    if _is_nonpositive_integer(a + b):
        return 0j
    return cmath.exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b))


def pochhammer(a, k: int) -> complex:
    """Rising factorial (a)_k as a plain product; (a)_0 = 1 exactly."""
    if not isinstance(k, int) or k < 0:
        raise ConfigError(f"pochhammer order must be a non-negative int, got {k!r}")
    a = _as_complex(a)
    out = 1 + 0j
    for m in range(k):
        out *= a + m
    return out

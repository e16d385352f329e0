"""Exception hierarchy shared by all ghconnect modules.

Every refusal the library can issue maps onto one of these classes; the CLI
translates them into exit codes (ConfigError -> 2, everything else -> 3,
verification failures are not exceptions and exit 1).
"""

from __future__ import annotations


class GHConnectError(Exception):
    """Base class for all ghconnect errors."""


class ConfigError(GHConnectError):
    """Malformed user input: bad flags, unparsable numbers, wrong lengths."""


class GenericityError(GHConnectError):
    """Parameters violate a non-integrality (genericity) requirement."""


class Refusal(GHConnectError):
    """Base class for honest numerical refusals (CLI exit code 3)."""


class SeriesError(Refusal):
    """Series evaluation refused or failed.

    ``partial`` carries the value accumulated so far when the refusal happened
    mid-sum ("max terms exceeded"); it is None for up-front refusals such as
    "outside disk".
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class QuadratureError(Refusal):
    """Quadrature refused (non-integrable exponent) or failed to converge."""


class PoleError(Refusal):
    """A gamma/beta evaluation hit a pole, or residue poles collided."""


class DegenerateMatrixError(Refusal):
    """A connection-matrix denominator sine is below the genericity floor."""

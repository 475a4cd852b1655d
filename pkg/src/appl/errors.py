"""Exception types shared across the package."""

from __future__ import annotations


class ApplError(Exception):
    """Base class for every error raised by this package."""


class CarrierMismatch(ApplError):
    def __init__(self, carrier: str, value: object):
        super().__init__(f"value {value!r} does not belong to carrier {carrier!r}")
        self.carrier = carrier
        self.value = value


class InfiniteBasisDecomposition(ApplError):
    def __init__(self, value: object, detail: str = ""):
        msg = f"no finite basis decomposition for {value}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.value = value


class UnsupportedInfiniteSum(ApplError):
    pass


class StarDidNotStabilize(ApplError):
    pass


class FastPathUnavailable(ApplError):
    pass


class UnsupportedGeneratorAlgebra(ApplError):
    pass


class DomainSpecError(ApplError):
    pass


class ParseError(ApplError):
    """Syntax error carrying a 1-based line and column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.reason = message


class DerivationShapeError(ApplError):
    """A derivation node has the wrong arity or payload for its rule."""

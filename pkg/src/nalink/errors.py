"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class NalinkError(Exception):
    """Base class for every error raised by the package."""


class PolynomialSyntaxError(NalinkError, ValueError):
    pass


class ZeroPolynomial(NalinkError, ValueError):
    pass


class NeedsExtension(NalinkError):
    """The computation needs a root of ``minimal_polynomial`` that is not in the field.

    Not a failure: callers may adjoin a root and retry.  The polynomial is a
    monic univariate coefficient tuple (low degree first) over the field in
    use, irreducible over it.
    """

    def __init__(self, minimal_polynomial, message: str | None = None):
        self.minimal_polynomial = tuple(minimal_polynomial)
        from nalink.arith.upoly import to_str

        text = to_str(self.minimal_polynomial)
        super().__init__(message or f"needs a root of {text}")


class TowerBoundExceeded(NalinkError):
    def __init__(self, minimal_polynomial, reason: str):
        self.minimal_polynomial = tuple(minimal_polynomial)
        self.reason = reason
        from nalink.arith.upoly import to_str

        super().__init__(f"{reason} (minimal polynomial {to_str(self.minimal_polynomial)})")


class CenterOffLocus(NalinkError, ValueError):
    pass


class BlowupCapExceeded(NalinkError):
    pass


class NotNormalCrossings(NalinkError, ValueError):
    pass


class BadParameters(NalinkError, ValueError):
    pass


class ContractionError(NalinkError):
    """A Castelnuovo contraction that is not allowed; ``reason`` names the rule."""

    reason = "NotContractible"

    def __init__(self, vertex: str, detail: str = ""):
        self.vertex = vertex
        super().__init__(f"{self.reason} at {vertex}{': ' + detail if detail else ''}")


class NotMinusOne(ContractionError):
    reason = "NotMinusOne"


class NotRational(ContractionError):
    reason = "NotRational"


class BoundaryVertex(ContractionError):
    reason = "BoundaryVertex"


class TriplePoint(ContractionError):
    reason = "TriplePoint"


class NodeOnImage(ContractionError):
    reason = "NodeOnImage"


class EmptyBoundary(NalinkError, ValueError):
    pass


class InvalidVertexSet(NalinkError, ValueError):
    pass


class NonSimpleComponent(NalinkError, ValueError):
    pass


class UnknownVertex(NalinkError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown vertex"


class EmptyIdeal(NalinkError, ValueError):
    pass


class NotCenteredInZ(NalinkError, ValueError):
    pass


class DivisionUndefined(NalinkError, ZeroDivisionError):
    pass

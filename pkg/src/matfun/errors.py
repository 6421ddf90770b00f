"""Exception hierarchy.

Every library error carries a ``kind`` string; the CLI serializes it verbatim
into ``{"error": {"kind": ..., "detail": ...}}``.
"""


class MatfunError(Exception):
    kind = "MatfunError"


class InvalidInput(MatfunError, ValueError):
    """Malformed or out-of-contract input (CLI exit code 1)."""

    kind = "InvalidInput"


class DimensionMismatch(InvalidInput):
    kind = "DimensionMismatch"


class PoleAtNode(MatfunError):
    kind = "PoleAtNode"


class PoleAtEigenvalue(PoleAtNode):
    kind = "PoleAtEigenvalue"


class SingularMatrix(MatfunError):
    kind = "SingularMatrix"


class Unsupported(MatfunError):
    kind = "Unsupported"


class DivisionByZeroPolynomial(MatfunError, ZeroDivisionError):
    kind = "DivisionByZeroPolynomial"


class NodesTooClose(MatfunError):
    kind = "NodesTooClose"


class NodeCollision(NodesTooClose):
    kind = "NodeCollision"


class IllConditioned(MatfunError):
    kind = "IllConditioned"


class DegenerateCondition(MatfunError):
    kind = "DegenerateCondition"


class NonRealInput(MatfunError):
    kind = "NonRealInput"


class NoConvergence(MatfunError):
    kind = "NoConvergence"


class InconsistentMultiplicities(MatfunError):
    kind = "InconsistentMultiplicities"


class IdentityCheckFailed(MatfunError):
    kind = "IdentityCheckFailed"


class RankMismatch(MatfunError):
    kind = "RankMismatch"


class DependentCycles(MatfunError):
    kind = "DependentCycles"


class VerificationFailed(MatfunError):
    kind = "VerificationFailed"

"""Exception hierarchy.

Everything raised on purpose by the package derives from :class:`ConresError`.
Bad inputs raise a :class:`ValidationError` and numerical or structural
failures during a computation raise a :class:`ComputationError`. The CLI
maps these two families to separate exit codes.
"""


class ConresError(Exception):
    """Base class for all package errors."""


class ValidationError(ConresError, ValueError):
    """Input does not satisfy a documented precondition."""


class ComputationError(ConresError, ArithmeticError):
    """A computation could not be completed on valid input."""


# -- graph and signature validation -----------------------------------------

class DisconnectedGraph(ValidationError):
    pass


class SelfLoop(ValidationError):
    pass


class DuplicateEdge(ValidationError):
    pass


class NonpositiveWeight(ValidationError):
    pass


class VertexOutOfRange(ValidationError):
    pass


class NonOrthogonalSignature(ValidationError):
    pass


class EdgeSetMismatch(ValidationError):
    pass


class NonOrthogonalSwitch(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class InvalidParameter(ValidationError):
    pass


class InvalidIndexSet(ValidationError):
    pass


class SamePair(ValidationError):
    pass


class EmptyBoundary(ValidationError):
    pass


class NotOrthonormalInput(ValidationError):
    pass


class NotACycle(ValidationError):
    pass


class NotInternallyDisjoint(ValidationError):
    pass


class NotAnEdge(ValidationError):
    """Chung's resistance was requested for a non-edge of an inconsistent graph."""


class DocumentParseError(ConresError):
    """A graph document is not well-formed JSON or misses required fields."""


# -- computation failures ------------------------------------------------------

class SingularBlock(ComputationError):
    pass


class NotHarmonic(ComputationError):
    pass


class NotInKernel(ComputationError):
    pass


class UnreachableConditioning(ComputationError):
    """The conditioning event of a conditioned walk has (numerically) zero probability."""


class DegenerateConditioning(UnreachableConditioning):
    pass


class AllCensored(ComputationError):
    """No Monte Carlo walk produced a usable sample."""


class KernelDegeneracy(ComputationError):
    pass


class CriterionMismatch(ComputationError):
    pass

"""Exception hierarchy shared by all modules."""


class LoccohError(Exception):
    """Base class for every error raised by the package."""


class ComputationError(LoccohError):
    pass


class CompositionNotZero(ComputationError):
    pass


class ShapeMismatch(ComputationError):
    pass


class NegativeExponent(LoccohError, ValueError):
    pass


class InhomogeneousEntry(ComputationError):
    pass


class InfinitePiece(ComputationError):
    pass


class EmptyIdeal(LoccohError, ValueError):
    pass


class RadicalsDiffer(LoccohError, ValueError):
    pass


class NotStabilized(ComputationError):
    def __init__(self, degrees, message=None):
        self.degrees = list(degrees)
        super().__init__(message or f"not stabilized in {len(self.degrees)} degree(s), e.g. {self.degrees[:5]}")


class TooManyGenerators(LoccohError, ValueError):
    pass


class LiftFailed(ComputationError):
    pass


class OutsideClass(ComputationError):
    pass


class NotAGroup(LoccohError, ValueError):
    pass


class NoFunctionalSupplied(LoccohError, ValueError):
    pass


class SchemaError(LoccohError, ValueError):
    pass


class CertificateFailed(LoccohError):
    """A certificate task or a stated expectation did not hold."""

"""Exception hierarchy.

Every domain error derives from :class:`ChypError` so the CLI can map the
whole family to a single exit code.
"""


class ChypError(ValueError):
    """Base class for domain errors raised by the library."""


class NonInteriorPoint(ChypError):
    pass


class BadTolerance(ChypError):
    pass


class NoNullEigenvector(ChypError):
    pass


class NotHyperbolic(ChypError):
    pass


class ExistenceViolated(ChypError):
    pass


class WrongSignature(ChypError):
    pass


class NotPositiveVector(ChypError):
    pass


class AsymptoticDegenerate(ChypError):
    pass


class BadN(ChypError):
    pass


class OutOfRange(ChypError):
    pass


class NoSolution(ChypError):
    pass


class NotHyperbolicTriangle(ChypError):
    pass


class SharedEndpoint(ChypError):
    pass


class PairingMismatch(ChypError):
    def __init__(self, label, message=""):
        super().__init__(f"side pairing {label}: {message}" if message else str(label))
        self.label = label


class NoClosure(ChypError):
    def __init__(self, maxsteps):
        super().__init__(f"geodesic did not close within {maxsteps} steps")
        self.maxsteps = maxsteps


class DegenerateTangency(ChypError):
    pass


class NumericalAmbiguity(ChypError):
    pass


class NotInGamma(ChypError):
    pass


class NotASurface(ChypError):
    pass

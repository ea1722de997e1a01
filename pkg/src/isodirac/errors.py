"""Exception classes raised by the library.

Every error raised on bad input derives from :class:`InputError`, so the CLI
can map it to exit status 2 without knowing the individual classes.
"""


class IsoDiracError(Exception):
    pass


class InputError(IsoDiracError, ValueError):
    """Malformed or unsupported input data."""


class InternalCheckError(IsoDiracError, RuntimeError):
    """A self-check failed; signals a bug, not a data condition."""


# surface
class NonBipartite(InputError):
    pass


class WhiteAngleSum(InputError):
    pass


class EulerMismatch(InputError):
    pass


class NonPositiveAngle(InputError):
    pass


class InvalidRotation(InputError):
    pass


class Disconnected(InputError):
    pass


class NotIncident(InputError):
    pass


class DegenerateCorner(InputError):
    pass


# homology
class SingularSolve(InternalCheckError):
    pass


class NotACycle(InputError):
    pass


# cochains
class OddVertexCount(InputError):
    pass


# spin structures
class NonIntegralConeAngle(InputError):
    pass


class EvenConeAngle(InputError):
    pass


class HolonomyMismatch(InternalCheckError):
    pass


class Gf2Inconsistent(InternalCheckError):
    pass


class StarUnreachable(InputError):
    pass


class NonIntegerWinding(InternalCheckError):
    pass


class NotPlusMinus2g(InputError):
    pass


# Dirac operators and partition functions
class CurvatureIdentityFailed(InternalCheckError):
    pass


class NonSquare(InputError):
    pass


class ConditionsViolated(InputError):
    pass


class OddQ0Unresolvable(InputError):
    pass


# builders
class AngleOutOfRange(InputError):
    pass


class ConstructionInvalid(InputError):
    pass


class WhiteDegreeTooSmall(InputError):
    pass

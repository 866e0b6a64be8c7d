"""Exception types shared across the package.

Every operation raises a subclass of FreesetError so callers (and the CLI,
which maps them to exit code 2 or 3) can distinguish bad input from internal
degeneracy.
"""


class FreesetError(Exception):
    """Base class for all package errors."""


# ---------------------------------------------------------------------------
# Embedded-graph construction and surgery
# ---------------------------------------------------------------------------

class NonPlanarRotation(FreesetError):
    """Rotation system fails the Euler identity V - E + F = 2."""


class MultiEdgeOrLoop(FreesetError):
    pass


class Disconnected(FreesetError):
    pass


class TooSmall(FreesetError):
    pass


class DisconnectedResult(FreesetError):
    pass


class UnknownElement(FreesetError):
    pass


# ---------------------------------------------------------------------------
# Curve certificates
# ---------------------------------------------------------------------------

class InvalidCurve(FreesetError):
    """A certificate failed validation; message carries the locus."""


class InconsistentSides(FreesetError):
    pass


class NotOnBoundary(FreesetError):
    pass


class OuterEdge(FreesetError):
    pass


class NotACycle(FreesetError):
    pass


class TooFew(FreesetError):
    pass


class NotIndependent(FreesetError):
    pass


class NotCaressed(FreesetError):
    pass


# ---------------------------------------------------------------------------
# Extractors
# ---------------------------------------------------------------------------

class NotTriangulation(FreesetError):
    pass


class NotMaximalOuterplane(FreesetError):
    pass


class ChainTooShort(FreesetError):
    pass


class AntichainTooShort(FreesetError):
    pass


class BadLevelAssignment(FreesetError):
    pass


class NotSpanningTree(FreesetError):
    pass


class NoIndependentPair(FreesetError):
    pass


# ---------------------------------------------------------------------------
# Geometric realization
# ---------------------------------------------------------------------------

class SingularSystem(FreesetError):
    pass


class DegenerateOutput(FreesetError):
    """Verification failed after both the plain and the weighted solve."""


class YNotOnOuterFace(FreesetError):
    pass


class EpsilonExhausted(FreesetError):
    pass


class SizeMismatch(FreesetError):
    pass


class MergeConflict(FreesetError):
    pass


# ---------------------------------------------------------------------------
# Applications / oracle / IO
# ---------------------------------------------------------------------------

class TooLarge(FreesetError):
    pass


class VertexSetMismatch(FreesetError):
    pass


class GraphFormatError(FreesetError):
    """Syntax error in a text format; message includes the line number."""


class BadSpec(FreesetError):
    pass


class Unverified(FreesetError):
    pass

"""Exception hierarchy.

Every domain error carries its class name in ``code`` so the CLI can report
it verbatim.
"""


class ArtifactError(Exception):
    """Base class for all domain errors raised by this package."""

    @property
    def code(self) -> str:
        return type(self).__name__


class ZeroVector(ArtifactError):
    pass


class DimensionMismatch(ArtifactError):
    pass


class NotSquare(ArtifactError):
    pass


class EmptyInterior(ArtifactError):
    pass


class OutsidePolytope(ArtifactError):
    pass


class OnBoundary(ArtifactError):
    pass


class Unbounded(ArtifactError):
    pass


class Degenerate(ArtifactError):
    pass


class NotConvex(ArtifactError):
    pass


class NotMonotone(ArtifactError):
    pass


class OriginNotInterior(ArtifactError):
    pass


class NonPositiveEntry(ArtifactError):
    pass


class NotMarkov(ArtifactError):
    pass


class InvalidPath(ArtifactError):
    pass


class CutNotThroughCenter(ArtifactError):
    pass


class CutThroughVertex(ArtifactError):
    pass


class NodeCollision(ArtifactError):
    pass


class OutsideDomain(ArtifactError):
    pass


class OutOfRange(ArtifactError):
    pass


class NonPositiveOutput(ArtifactError):
    pass


class InvalidParams(ArtifactError):
    pass


class TailTooSmall(ArtifactError):
    pass


class NonIntegerVector(ArtifactError):
    pass

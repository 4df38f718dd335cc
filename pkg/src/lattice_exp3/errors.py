"""Exception types raised across the package."""


class LatticeExp3Error(ValueError):
    """Base class for all domain errors raised by this package."""


class DegenerateInput(LatticeExp3Error):
    """Basis vectors are (numerically) linearly dependent."""


class CollinearVertices(LatticeExp3Error):
    pass


class ZeroVector(LatticeExp3Error):
    pass


class EmptyInput(LatticeExp3Error):
    pass


class NotDistinct(LatticeExp3Error):
    """Two projective angles coincide within tolerance."""


class ObtuseTriangle(LatticeExp3Error):
    pass


class InvalidDegenerate(LatticeExp3Error):
    """Collinear triangle that is not of the allowed one-zero-side form."""


class OutOfRange(LatticeExp3Error):
    pass


class BothZero(LatticeExp3Error):
    pass


class PoleHit(LatticeExp3Error):
    pass


class InvalidPolyline(LatticeExp3Error):
    pass


class TooManyCrossings(LatticeExp3Error):
    pass


class NoGenericDirection(LatticeExp3Error):
    pass


class NonKnotDiagram(LatticeExp3Error):
    """Jones evaluation produced fractional powers of t (a link, not a knot)."""

"""Exception types raised across the package."""


class RatlqError(Exception):
    """Base class for every error raised by this package."""


class NonPolynomialKnotValue(RatlqError):
    """A knot invariant failed to reduce to a Laurent polynomial."""


class PairingFailed(RatlqError):
    """Index compression could not pair up the requested side."""


class DeltaInhomogeneous(RatlqError):
    """S_i - Q_ii - 2A_i is not constant over the basis."""

    def __init__(self, index, value, expected):
        super().__init__(
            f"delta grading breaks at index {index}: got {value}, expected {expected}"
        )
        self.index = index
        self.value = value
        self.expected = expected


class DimensionMismatch(RatlqError):
    """A diagram or quiver has the wrong number of basis points."""


class RayDegenerate(RatlqError):
    """A winding-number ray passed exactly through a curve vertex."""


class ComponentsCollide(RatlqError):
    """The two points of a configuration-space loop met."""


class MismatchReport(RatlqError):
    """Two computation routes disagree."""

    def __init__(self, routes, color, difference):
        super().__init__(f"routes {routes[0]} and {routes[1]} disagree at color {color}")
        self.routes = routes
        self.color = color
        self.difference = difference

"""Exception hierarchy shared by the library and the CLI."""


class RayVoronoiError(Exception):
    """Base class for every error raised by this package."""


class DegenerateInputError(RayVoronoiError, ValueError):
    """Coincident points, zero-length vectors and similar malformed geometry."""


class DegenerateConeError(DegenerateInputError):
    """A cone whose two generators are parallel."""


class PreconditionError(RayVoronoiError, ValueError):
    """An operation was called outside its domain (e.g. a site on the boundary)."""


class ValidationError(RayVoronoiError):
    """Raised by the build when :func:`rayvoronoi.world.validate` reports errors."""

    def __init__(self, report):
        self.report = report
        super().__init__(str(report))

    def __reduce__(self):
        return (self.__class__, (self.report,))


class InternalLogicError(RayVoronoiError, RuntimeError):
    """A state the algorithm should never reach; always indicates a bug or a tolerance problem."""

    def __init__(self, message, site=None):
        self.detail = message
        self.site = site
        if site is not None:
            message = f"cell {site}: {message}"
        super().__init__(message)

    def __reduce__(self):
        return (self.__class__, (self.detail, self.site))


class InconsistentCellError(InternalLogicError):
    """Consecutive vertices of a cell do not share an inducing line."""

"""Exception taxonomy shared by all graphc modules."""


class GraphcError(Exception):
    """Base class for all errors raised by graphc."""


class StructuralError(GraphcError, ValueError):
    """A diagram record is malformed (bad ids, bad decorations)."""


class GradingError(GraphcError, ValueError):
    """Vectors or diagrams of incompatible (type, order, degree) were mixed."""


class InvalidMoveError(GraphcError, ValueError):
    """A decoration move was applied to a diagram type that lacks it."""


class NoArcError(GraphcError, ValueError):
    """Arc contraction requested on a diagram with fewer than two external vertices."""


class NotContractibleError(GraphcError, ValueError):
    """Edge contraction requested on a non-regular edge (no internal endpoint)."""


class CapExceededError(GraphcError, RuntimeError):
    """A generation cell exceeded the configured resource cap."""

    def __init__(self, cell, cap):
        self.cell = cell
        self.cap = cap
        vi, e, ve = cell
        super().__init__(
            f"cell (vi={vi}, e={e}, ve={ve}) exceeded the cap of {cap} diagrams"
        )


class CompletenessError(GraphcError, RuntimeError):
    """A differential produced a diagram missing from the target basis."""


class CacheCorruptionError(GraphcError, RuntimeError):
    """An on-disk basis file failed its checksum or could not be parsed."""


class StaleCacheError(GraphcError, RuntimeError):
    """An on-disk basis file was written by an incompatible format version."""


class NoClassError(GraphcError, RuntimeError):
    """A cohomology representative was requested where the group is trivial."""


class ConventionError(GraphcError, RuntimeError):
    """A sign-convention consistency check failed (signals a bug upstream)."""

"""Exception types shared across the package."""


class QuasiHopfError(Exception):
    """Base class for all structured errors raised by this package."""


class ShapeMismatch(QuasiHopfError, ValueError):
    """Dimensions, legs, or fields do not line up."""


class NotInvertible(QuasiHopfError, ValueError):
    """An element or map required to be invertible is singular."""


class GaugeNotNormalized(QuasiHopfError, ValueError):
    """A gauge transformation fails its counit normalization."""


class WitnessNotNormalized(QuasiHopfError, ValueError):
    """A twist witness fails its counit normalization."""


class AntipodeRequired(QuasiHopfError, ValueError):
    """The construction needs a full quasi-Hopf structure."""


class AntipodeNotInvertible(QuasiHopfError, ValueError):
    """The antipode matrix is singular but its inverse is needed."""


class MixedBase(QuasiHopfError, ValueError):
    """Two inputs reference different base structures."""


class VariantMismatch(QuasiHopfError, ValueError):
    """Module data and context disagree about sidedness."""


class NotRational(QuasiHopfError, ValueError):
    """A module over the smash product fails the rationality property."""


class ParseError(QuasiHopfError, ValueError):
    """A structure file is malformed."""

    def __init__(self, message, path=None, where=None):
        self.path = path
        self.where = where
        prefix = ""
        if path:
            prefix += "%s: " % path
        if where:
            prefix += "[%s] " % where
        super().__init__(prefix + message)


class HashMismatch(ParseError):
    """A companion file reference has a stale content hash."""


class BadField(QuasiHopfError, ValueError):
    """The requested field cannot carry the requested structure."""


class UsageError(QuasiHopfError, ValueError):
    """Bad command-line invocation (exit code 2)."""

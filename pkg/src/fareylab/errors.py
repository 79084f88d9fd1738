class FareyError(Exception):
    """Base class for errors raised by fareylab."""


class GraphError(FareyError, ValueError):
    """Malformed graph input or a query naming a vertex/edge that is not there."""


class CapError(FareyError):
    """A size or level cap was exceeded."""


class NotStrongError(FareyError):
    """A base set is not strong in the graph it was required to be strong in."""


class AmalgamationError(FareyError):
    pass


class ModelSpecError(FareyError, ValueError):
    pass

"""Exception hierarchy shared by every olctkit module."""


class OLCTError(Exception):
    """Base class for all olctkit errors."""


class UnimodularityError(OLCTError, ValueError):
    """Raised when a parameter matrix violates ad - bc = 1."""


class NonFiniteError(OLCTError, ValueError):
    """Raised when an input contains NaN or infinity."""


class DomainError(OLCTError, ValueError):
    """Raised when an argument is outside the domain of an operation."""


class GridError(OLCTError, ValueError):
    """Raised on incompatible or non-uniform sampling grids."""


class UsageError(OLCTError):
    """Raised by the command-line front end on bad arguments."""

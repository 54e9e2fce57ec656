"""Error taxonomy shared by every module.

Three failure kinds are distinguished so callers (and the command line
driver) can map them to distinct exit codes:

* ``DomainError``   -- the input is mathematically invalid (a non-partition,
                       mismatched sizes, an empty symmetry class, ...).
* ``ResourceError`` -- the input is valid but exceeds a documented size cap.
* ``NumericError``  -- a computation failed to meet its own consistency
                       checks (rank mismatch, disagreeing dual routes, ...).
"""


class KchiError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(KchiError, ValueError):
    """Mathematically invalid input."""


class ResourceError(KchiError, RuntimeError):
    """Valid input that exceeds a documented size cap."""


class NumericError(KchiError, ArithmeticError):
    """A computation failed an internal consistency check."""

"""
Exception hierarchy shared by the algebra modules and the command-line layer.

The CLI maps ``VerificationError`` to exit code 2 and every other
``Sk1LabError`` to exit code 1.
"""


class Sk1LabError(Exception):
    """Base class for all errors raised by sk1-lab."""


class InputError(Sk1LabError):
    """Malformed descriptor or violated precondition."""


class SizeBoundError(InputError):
    """A homology computation would exceed the configured size bound."""


class PrecisionError(InputError):
    """The working p-adic precision is too low to resolve the requested result."""


class VerificationError(Sk1LabError):
    """A self-check failed (chain-map checks, integrality, multiply-back, suites)."""

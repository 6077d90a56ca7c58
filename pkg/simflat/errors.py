"""
Error types
===========

Every failure raised by the library derives from ``SimflatError`` so that the
CLI and the API can map domain errors separately from programming faults.
"""


class SimflatError(Exception):
    """Base class for all library errors."""


class RankDeficient(SimflatError):
    """Generators do not span a full-rank lattice."""


class SingularForm(SimflatError):
    """A bilinear form that must be invertible is singular."""


class DimMismatch(SimflatError):
    """Operands live in different dimensions or have mismatched shapes."""


class NotPositiveDefinite(SimflatError):
    """A form required to be positive definite is not."""


class NotIntegral(SimflatError):
    """A lattice/form pair has non-integral Gram entries."""


class OrderCapExceeded(SimflatError):
    """An enumeration grew beyond its configured cap (group possibly infinite)."""


class ReducibleEndomorphism(SimflatError):
    """The endomorphism SF^-1 does not have an irreducible minimal polynomial."""


class NotInvariant(SimflatError):
    """A lattice is not invariant under the acting matrices."""


class ChainDiverged(SimflatError):
    """The radical idealizer process did not stabilize within the step cap."""


class NotHomogeneous(SimflatError):
    """The natural module is not a multiple of a single irreducible module."""


class BadParameter(SimflatError):
    """A constructor received a parameter outside its domain."""


class UnsupportedField(SimflatError):
    """The commuting field or algebra is outside what the library can decide."""


class MalformedEntry(SimflatError):
    """A text file (matrix, group or database) could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GeneratorMismatch(SimflatError):
    """Generators found by a search do not close to the order the search computed."""


class BadInput(SimflatError):
    """The input group does not satisfy the operation's preconditions."""


class NoMatch(SimflatError):
    """No database entry matches the input group."""

"""Exceptions raised by kfourteen."""


class KFourteenError(Exception):

    """Base class of all errors raised on purpose by kfourteen."""


class DegenerateModelError(KFourteenError):

    """A Weierstrass model has identically vanishing discriminant or a
    two-torsion model is degenerate.

    Attributes:
        certificate: the vanishing quantity, e.g. 'Delta == 0' (str).
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class InvalidCoefficientsError(KFourteenError):

    """A coefficient tuple violates the invariants of its family.

    Attributes:
        names: the offending coefficient names (tuple).
    """

    def __init__(self, message, names=()):
        super().__init__(message)
        self.names = tuple(names)


class PreconditionError(KFourteenError):

    """An operation was called outside of its domain."""


class InternalInvariantError(KFourteenError):

    """A consistency check that cannot fail for exact input has failed."""


class UnknownNameError(KFourteenError):

    """An unknown lattice factor, graph, family or fibration was requested."""


class InputFormatError(KFourteenError):

    """Malformed user input.

    Attributes:
        pointer: JSON pointer to the offending part of the input (str).
    """

    def __init__(self, message, pointer=''):
        super().__init__(message)
        self.pointer = pointer

"""Exception types raised by :mod:`condexp`.

Every precondition violation derives from :class:`InputError` (the CLI maps
these to exit status 2). :class:`VerificationFailure` signals a check that ran
and found a counterexample (exit status 1).
"""


class CondexpError(Exception):
    """Base class for all package errors."""


class InputError(CondexpError, ValueError):
    """A value or argument violates an operation's precondition."""


class DuplicateAtom(InputError):
    pass


class EmptyAtomList(InputError):
    pass


class UnknownAtom(InputError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class AlgebraMismatch(InputError):
    pass


class NonpositiveEpsilon(InputError):
    pass


class NotSplittable(InputError):
    pass


class InvalidPartition(InputError):
    pass


class RatioOutOfRange(InputError):
    pass


class DepthZero(InputError):
    pass


class IncompleteTower(InputError):
    pass


class BranchTooLong(InputError):
    pass


class TruncationExceedsBranch(InputError):
    pass


class ParseError(InputError):
    pass


class VerificationFailure(CondexpError):
    pass

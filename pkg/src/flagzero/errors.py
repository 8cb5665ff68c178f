"""Exception hierarchy.

Everything a caller can trigger with bad input derives from
:class:`FlagzeroError`; the CLI maps those to exit status 1.
:class:`InternalInconsistency` marks states that valid inputs can never
reach and is a bug signal rather than a domain error.
"""


class FlagzeroError(Exception):
    pass


class UnsupportedType(FlagzeroError):
    pass


class GroupTooLarge(FlagzeroError):
    pass


class NamespaceMismatch(FlagzeroError):
    pass


class NotSymmetric(FlagzeroError):
    pass


class NotInvariant(FlagzeroError):
    pass


class DegreeError(FlagzeroError):
    pass


class HypothesisFails(FlagzeroError):
    pass


class InvalidQuery(FlagzeroError, ValueError):
    pass


class ParseError(FlagzeroError):
    pass


class InternalInconsistency(RuntimeError):
    pass

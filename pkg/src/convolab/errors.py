"""Exception types shared across the package."""


class ConvolabError(Exception):
    """Base class for all errors raised by this package."""


class TableInvalid(ConvolabError):
    """A multiplication table violates a group axiom.

    The message names the failed axiom and the offending indices.
    """


class SpecOutOfRange(ConvolabError):
    """A group specification exceeds the configured order cap."""


class GroupMismatch(ConvolabError):
    """Two objects that must live on the same group do not."""


class CoefficientsInvalid(ConvolabError):
    """Mixture coefficients are empty, negative, or do not sum to 1."""


class DimensionMismatch(ConvolabError):
    """Matrix or vector shapes are incompatible."""


class NotAGeneralizedInverse(ConvolabError):
    """A claimed generalized inverse fails the defining identity."""


class SupportNotClosed(ConvolabError):
    """A measure's support is not closed under the group operation."""


class GroupNotInvolutive(ConvolabError):
    """The group has an element whose square is not the identity."""


class PreconditionViolated(ConvolabError):
    """An operation's documented precondition does not hold."""


class UnsupportedGroup(ConvolabError):
    """No unitary dual construction is available for this group."""


class RationalizationFailed(ConvolabError):
    """A float candidate rounded to rationals fails exact verification."""


class ClosureBudgetExceeded(ConvolabError):
    """A closure computation hit its element budget before stabilizing."""

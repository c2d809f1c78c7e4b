"""Exception hierarchy.

Everything raised on purpose derives from :class:`StochannelError`.
:class:`NumericFailure` marks failures of an algorithm on valid input
(the CLI maps those to exit code 2, everything else to exit code 1).
"""


class StochannelError(ValueError):
    pass


class NumericFailure(StochannelError):
    pass


# prob-core
class EmptyVector(StochannelError):
    pass


class NegativeWeight(StochannelError):
    pass


class NotNormalized(StochannelError):
    pass


class IndexOutOfRange(StochannelError, IndexError):
    pass


class DimensionMismatch(StochannelError):
    pass


# channel-algebra
class RaggedMatrix(StochannelError):
    pass


class ParameterOutOfRange(StochannelError):
    pass


class NotSquare(StochannelError):
    pass


class InvalidPermutation(StochannelError):
    pass


# capacity-engine
class NoConvergence(NumericFailure):
    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class TooLarge(StochannelError):
    pass


# finite-monoid
class BadTable(StochannelError):
    pass


class NoIdentity(StochannelError):
    pass


class NotAssociative(StochannelError):
    pass


class MonoidMismatch(StochannelError):
    pass


class NotHomomorphism(StochannelError):
    pass


class NotAGroup(StochannelError):
    pass


class NotDoublyStochastic(StochannelError):
    pass


class DecompositionFailed(NumericFailure):
    pass


# cli
class InputError(StochannelError):
    pass

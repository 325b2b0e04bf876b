"""Exception hierarchy shared by all modules."""


class JordHeckeError(Exception):
    """Base class for every error raised by this package."""


# registry
class DuplicateId(JordHeckeError):
    pass


class BrokenPartnerLink(JordHeckeError):
    pass


class NoPartner(JordHeckeError):
    pass


class UnknownRep(JordHeckeError, KeyError):
    pass


# parameters
class EpsilonIncomplete(JordHeckeError):
    pass


class FlavorMismatch(JordHeckeError):
    pass


class InvalidParameter(JordHeckeError, ValueError):
    pass


# cuspidal support
class NonEvenSize(JordHeckeError, ValueError):
    pass


class NonOddSize(JordHeckeError, ValueError):
    pass


class RepeatedSize(JordHeckeError, ValueError):
    pass


class NotAdjacent(JordHeckeError):
    pass


class EpsilonMismatch(JordHeckeError):
    pass


class NotRelevant(JordHeckeError):
    pass


# root data
class InconsistentPartnerData(JordHeckeError):
    pass


class NoRoots(JordHeckeError):
    pass


class OddHalving(JordHeckeError):
    pass


class UnmatchedRow(JordHeckeError):
    pass


class NotApplicable(JordHeckeError):
    pass


class NotCuspidalBase(JordHeckeError):
    pass


# hecke algebra
class RankTooLarge(JordHeckeError):
    pass


class ContextMismatch(JordHeckeError):
    pass


# cli
class EmptySupply(JordHeckeError):
    pass


class IoError(JordHeckeError, OSError):
    pass

"""Exception types raised across the package.

Each carries the CLI exit code it maps to, so the command layer can
translate failures without a lookup table.
"""


class CsNeighborlyError(ValueError):
    exit_code = 1


class ParseError(CsNeighborlyError):
    exit_code = 2


class RankDeficient(CsNeighborlyError):
    exit_code = 3


class TooLarge(CsNeighborlyError):
    exit_code = 4


class PreconditionFailed(CsNeighborlyError):
    exit_code = 5


class InvalidSubset(CsNeighborlyError):
    exit_code = 2


class EmptySubset(InvalidSubset):
    pass


class BadParams(CsNeighborlyError):
    exit_code = 2


class BadS(BadParams):
    pass


class DegenerateAfterRetries(CsNeighborlyError):
    pass

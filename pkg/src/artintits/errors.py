"""Exception types shared across the package.

Contract violations raise specific subclasses so callers (and the CLI) can
map them to exit codes; ``InvariantBreach`` marks conditions that the theory
guarantees and whose failure therefore indicates a transcription bug, not a
legitimate runtime outcome.
"""


class ArtinTitsError(Exception):
    """Base class for all package errors."""


# -- graph construction ------------------------------------------------------

class DuplicateName(ArtinTitsError):
    pass


class AsymmetricOrMissingEntry(ArtinTitsError):
    pass


class BadLabel(ArtinTitsError):
    pass


class UnknownGenerator(ArtinTitsError):
    pass


class GraphMismatch(ArtinTitsError):
    pass


# -- enumeration / classification -------------------------------------------

class CapExceeded(ArtinTitsError):
    pass


class NotFinite(ArtinTitsError):
    pass


class NotSpherical(ArtinTitsError):
    pass


class NotFreeOfInfinity(ArtinTitsError):
    pass


# -- word calculus -----------------------------------------------------------

class SideConditionViolated(ArtinTitsError):
    pass


class NotColored(ArtinTitsError):
    pass


class SupportViolation(ArtinTitsError):
    pass


class OracleSubsetMismatch(ArtinTitsError):
    pass


# -- oracles -----------------------------------------------------------------

class EmbeddingSelfCheckFailed(ArtinTitsError):
    pass


class NotCommutingComponents(ArtinTitsError):
    pass


class NoOracleAvailable(ArtinTitsError):
    pass


# -- cube paths ---------------------------------------------------------------

class PrepathLinkViolation(ArtinTitsError):
    pass


class InvariantBreach(ArtinTitsError):
    """A condition guaranteed by the underlying theory failed at runtime."""


# -- virtual braids ------------------------------------------------------------

class StrandMismatch(ArtinTitsError):
    pass


class IndexOutOfRange(ArtinTitsError):
    pass


class BadN(ArtinTitsError):
    pass

"""Exception types shared across the package."""


class RamsplitError(Exception):
    """Base class for all package errors."""


class ParseError(RamsplitError):
    """Malformed textual input (elements, classes, traces, configs)."""


class PrecisionExhaustion(RamsplitError):
    """An operation would drop effective pi-adic precision below the floor."""


class SideConditionError(RamsplitError):
    """A rewrite move's side conditions fail on the given class."""


class EngineSearchError(RamsplitError):
    """The reduction engine could not certify a claim within its strategies."""


class DomainError(RamsplitError):
    """Operation precondition violated (zero inverse, wrong level, ...)."""

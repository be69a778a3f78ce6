"""Exception taxonomy shared across the toolkit.

The CLI maps these onto exit codes: parse and validation problems exit 2,
domain errors 3, resource refusals 4.
"""


class CantorKitError(Exception):
    """Base class for all toolkit errors."""


class ParseError(CantorKitError):
    """Input text (spec document, preset name, fraction) could not be parsed."""


class ValidationError(CantorKitError):
    """A value violates a structural invariant."""


class DomainError(CantorKitError):
    """An argument lies outside the mathematical domain of an operation."""


class ResourceLimitError(CantorKitError):
    """An enumeration would exceed the configured size limit."""

"""Exception types shared across the package."""


class InvalidArgumentError(ValueError):
    """An argument lies outside the domain of the requested operation."""


class ResourceLimitError(RuntimeError):
    """A request exceeds a configured cost guard (e.g. oracle enumeration caps)."""

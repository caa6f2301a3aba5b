class InputError(ValueError):
    """Malformed or inconsistent input (bad variable, wrong ambient, parse error)."""


class SizeLimitError(RuntimeError):
    """A computation was refused because it exceeds a hard size cap."""

"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or contract-violating input data."""


class InternalInvariantError(RuntimeError):
    """A structural invariant that must hold by construction failed."""


class SearchCapExceeded(RuntimeError):
    """A bounded exhaustive search hit its configured cap."""

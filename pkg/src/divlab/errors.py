"""Exception hierarchy shared by every divlab module."""


class DivlabError(ValueError):
    """A precondition was violated (bad input, infeasible parameters)."""


class DuplicateElementError(DivlabError):
    """A ground set was given the same value twice."""


class InfeasibleFamilyError(DivlabError):
    """A family generator cannot be realised for the requested parameters."""

    def __init__(self, message, minimal_n=None):
        super().__init__(message)
        self.minimal_n = minimal_n


class ConfigMismatchError(DivlabError):
    """A checkpoint was written by a run with a different configuration."""


class CorruptCheckpointError(DivlabError):
    """A checkpoint failed its integrity check."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class ResourceCapError(RuntimeError):
    """A computation would exceed a configured size or time budget."""

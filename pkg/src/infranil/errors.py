"""Exception hierarchy.  The CLI maps these onto exit codes."""


class InfranilError(Exception):
    """Base class for all library errors."""


class ValidationError(InfranilError):
    """Input group or map is malformed or inconsistent (CLI exit code 1)."""


class FsharpDataRequired(ValidationError):
    """Singular linear part without explicit f_* images."""


class StructuralInvariantError(InfranilError):
    """A guaranteed structural property failed to hold (CLI exit code 2).

    On valid input this never fires; seeing it means either the input slipped
    past validation or the engine has a bug.
    """


class BoostNotWellDefined(StructuralInvariantError):
    """A class-level boost spans more than one target class."""

class ScaleGuardError(RuntimeError):
    """An exhaustive computation was refused because it exceeds the work budget."""


class DegenerateDistanceError(ValueError):
    """A zero distance was passed where every theorem requires ``t != 0``."""

"""Exception types shared across the package."""


class DeaconescuError(Exception):
    """Base class for library errors."""


class ResourceLimitError(DeaconescuError):
    """A request would exceed the configured memory, brute-force or exponent budget."""


class CheckpointMismatchError(DeaconescuError):
    """A checkpoint was produced by an incompatible configuration."""

"""Exception types shared across the pipeline."""


class AtdeError(Exception):
    """Base class for all pipeline errors."""


class ConfigError(AtdeError, ValueError):
    """Malformed or invalid project configuration."""


class FrameSourceError(AtdeError, RuntimeError):
    """Problem reading frames from a frame directory."""


class DimensionMismatchError(FrameSourceError):
    """A frame's dimensions do not match the rest of the source."""


class RegionError(AtdeError, ValueError):
    """A region is degenerate or falls outside frame bounds."""


class YearMismatchError(AtdeError, RuntimeError):
    """Detected year-interval count disagrees with the configured span."""

    def __init__(self, interval_count: int, year_count: int):
        self.interval_count = interval_count
        self.year_count = year_count
        super().__init__(
            f"detected {interval_count} year intervals but the configured span "
            f"has {year_count} years; adjust the threshold, fix the year span, "
            f"or pass resample=True / --force-resample"
        )


class ScalingError(AtdeError, ValueError):
    """Invalid scale factor or normalization request."""


class SeedExclusionWarning(UserWarning):
    """A configured seed color falls outside its own detection bounds."""

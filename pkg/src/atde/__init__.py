"""atde: extract per-year territory pixel counts from animated map videos."""

from .clock import (
    ClockSeries,
    YearIndex,
    build_year_index,
    condense,
    emit_score_histogram,
    frame_delta_score,
    scan_clock,
)
from .errors import (
    AtdeError,
    ConfigError,
    DimensionMismatchError,
    FrameSourceError,
    RegionError,
    ScalingError,
    SeedExclusionWarning,
    YearMismatchError,
)
from .extractor import (
    YearSeries,
    extract_series,
    mean_seed_color,
    process_frame,
    render_validation_frame,
)
from .frames import FrameSource, open_frame_source, read_frame, write_frame
from .model import (
    ChannelRestriction,
    ProjectConfig,
    Region,
    SeedSpec,
    config_from_dict,
    load_config,
    save_config,
)
from .scaling import (
    ScaleRecord,
    apply_scale,
    count_water_pixels,
    relative_normalize,
    scale_factor,
)
from .segmentation import (
    HsvColor,
    apply_channel_restriction,
    count_mask,
    dnf,
    frame_to_hsv,
    in_range_mask,
    neighbor_counts,
    rgb_to_hsv,
    seed_bounds,
)
from .synth import FixtureSpec, GroundTruth, brute_force_dnf, generate_fixture, oracle_mask

__version__ = "0.1.0"

__all__ = [
    "AtdeError",
    "ChannelRestriction",
    "ClockSeries",
    "ConfigError",
    "DimensionMismatchError",
    "FixtureSpec",
    "FrameSource",
    "FrameSourceError",
    "GroundTruth",
    "HsvColor",
    "ProjectConfig",
    "Region",
    "RegionError",
    "ScaleRecord",
    "ScalingError",
    "SeedExclusionWarning",
    "SeedSpec",
    "YearIndex",
    "YearMismatchError",
    "YearSeries",
    "apply_channel_restriction",
    "apply_scale",
    "brute_force_dnf",
    "build_year_index",
    "condense",
    "config_from_dict",
    "count_mask",
    "count_water_pixels",
    "dnf",
    "emit_score_histogram",
    "extract_series",
    "frame_delta_score",
    "frame_to_hsv",
    "generate_fixture",
    "in_range_mask",
    "load_config",
    "mean_seed_color",
    "neighbor_counts",
    "open_frame_source",
    "oracle_mask",
    "process_frame",
    "read_frame",
    "relative_normalize",
    "render_validation_frame",
    "rgb_to_hsv",
    "save_config",
    "scale_factor",
    "scan_clock",
    "seed_bounds",
    "write_frame",
]

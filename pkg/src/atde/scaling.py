"""Cross-video scale normalization via invariant water-body pixel counts,
and relative normalization by the global maximum.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

from .errors import ScalingError
from .extractor import YearSeries
from .model import Region, SeedSpec
from .segmentation import count_mask, frame_to_hsv, in_range_mask, seed_bounds


@dataclass(frozen=True)
class ScaleRecord:
    label: str
    water_pixels: int
    factor: float

    def __post_init__(self):
        if self.factor <= 0:
            raise ScalingError(f"scale factor must be > 0, got {self.factor}")


def count_water_pixels(frame: np.ndarray, box: Region, water_seed: SeedSpec) -> int:
    """Count pixels inside the box matching the water seed bounds.

    Raw range masking only: the box is user-chosen to be homogeneous
    water, so no channel restriction or neighbor filtering applies.
    """
    cropped = box.crop(frame)
    mask = in_range_mask(frame_to_hsv(cropped), seed_bounds(water_seed))
    return count_mask(mask)


def scale_factor(water_pixels: int, reference_water_pixels: int) -> float:
    """Ratio of this video's water count to the reference video's."""
    if reference_water_pixels <= 0:
        raise ScalingError(
            f"reference water pixel count must be > 0, got {reference_water_pixels}"
        )
    return water_pixels / reference_water_pixels


def apply_scale(series: YearSeries, factor: float) -> YearSeries:
    """Divide every count by the scale factor, recording it on the series."""
    if factor <= 0:
        raise ScalingError(f"scale factor must be > 0, got {factor}")
    if series.scale_factor is not None:
        raise ScalingError(
            f"series {series.label!r} already scaled by {series.scale_factor}"
        )
    return series.with_values(
        [value / factor for value in series.values()], scale_factor=factor
    )


def relative_normalize(collection: Sequence[YearSeries]) -> list[YearSeries]:
    """Divide every value in every series by the single global maximum.

    Requires every series to be scaled first (apply_scale with factor 1.0
    is the explicit no-op for single-video use). The global maximum maps
    to exactly 1.0.
    """
    if not collection:
        raise ScalingError("cannot normalize an empty collection")
    for series in collection:
        if series.normalized:
            raise ScalingError(f"series {series.label!r} is already normalized")
        if series.scale_factor is None:
            raise ScalingError(
                f"series {series.label!r} is unscaled; apply a scale factor "
                f"(1.0 for the reference) before normalizing"
            )
    global_max = max(max(s.values(), default=0) for s in collection)
    if global_max <= 0:
        raise ScalingError("all series are zero; nothing to normalize")
    return [
        s.with_values([v / global_max for v in s.values()], normalized=True)
        for s in collection
    ]


def write_scales_csv(records: Sequence[ScaleRecord], path: Union[str, Path]) -> None:
    lines = ["label,water_pixels,factor"]
    lines += [f"{r.label},{r.water_pixels},{r.factor}" for r in records]
    Path(path).write_text("\n".join(lines) + "\n")

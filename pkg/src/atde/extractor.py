"""Per-year pipeline: segment each condensed frame, accumulate the
{year: pixel_count} series, and render validation frames.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .errors import AtdeError
from .model import RGB, ProjectConfig, SeedSpec
from .segmentation import (
    Mask,
    apply_channel_restriction,
    count_mask,
    dnf,
    frame_to_hsv,
    in_range_mask,
    seed_bounds,
)

Number = Union[int, float]


@dataclass(frozen=True)
class YearSeries:
    """Per-year pixel values for one video, with scaling metadata.

    Values are raw integer counts until a scale factor is applied, after
    which they are real-valued. Normalized series hold values in [0, 1].
    """

    label: str
    entries: tuple[tuple[int, Number], ...]
    scale_factor: Optional[float] = None
    normalized: bool = False

    def __post_init__(self):
        years = [y for y, _ in self.entries]
        if years and years != list(range(years[0], years[0] + len(years))):
            raise AtdeError("series years must ascend by 1")
        for year, value in self.entries:
            if value < 0:
                raise AtdeError(f"negative value {value} at year {year}")
            if self.normalized and value > 1:
                raise AtdeError(f"normalized value {value} at year {year} exceeds 1")

    def years(self) -> list[int]:
        return [y for y, _ in self.entries]

    def values(self) -> list[Number]:
        return [v for _, v in self.entries]

    def with_values(self, values: Sequence[Number], **changes) -> "YearSeries":
        entries = tuple((y, v) for (y, _), v in zip(self.entries, values))
        return replace(self, entries=entries, **changes)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "entries": [[y, v] for y, v in self.entries],
            "scale_factor": self.scale_factor,
            "normalized": self.normalized,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "YearSeries":
        return cls(
            label=str(doc["label"]),
            entries=tuple((int(y), v) for y, v in doc["entries"]),
            scale_factor=doc.get("scale_factor"),
            normalized=bool(doc.get("normalized", False)),
        )

    @classmethod
    def load(cls, path: Union[str, Path]) -> "YearSeries":
        return cls.from_dict(json.loads(Path(path).read_text()))


def mean_seed_color(spec: SeedSpec) -> RGB:
    """Per-channel arithmetic mean of the seed colors, floored."""
    n = len(spec.seeds)
    return tuple(sum(seed[c] for seed in spec.seeds) // n for c in range(3))


def process_frame(frame: np.ndarray, config: ProjectConfig) -> tuple[int, Mask]:
    """Segment one frame: range mask, channel restrictions in config
    order, then neighbor filtering. Counts cover map_region only (the
    whole frame when map_region is absent)."""
    if config.map_region is not None:
        frame = config.map_region.crop(frame)
    hsv = frame_to_hsv(frame)
    mask = in_range_mask(hsv, seed_bounds(config.territory_seed))
    for restriction in config.restrictions:
        mask = apply_channel_restriction(mask, frame, restriction)
    mask = dnf(mask, config.min_neighbors)
    return count_mask(mask), mask


def render_validation_frame(mask: Mask, mean_color: RGB) -> np.ndarray:
    """Detected pixels take the mean seed color, all others black."""
    frame = np.zeros((mask.shape[0], mask.shape[1], 3), dtype=np.uint8)
    frame[mask] = mean_color
    return frame


def extract_series(
    condensed: Sequence[tuple[int, np.ndarray]],
    config: ProjectConfig,
) -> tuple[YearSeries, list[np.ndarray]]:
    """Run process_frame over the condensed (year, frame) list.

    Returns the per-year count series plus one validation frame per input
    frame, in year order.
    """
    mean = mean_seed_color(config.territory_seed)
    entries: list[tuple[int, int]] = []
    validation: list[np.ndarray] = []
    for year, frame in condensed:
        count, mask = process_frame(frame, config)
        entries.append((year, count))
        validation.append(render_validation_frame(mask, mean))
    series = YearSeries(label=config.label, entries=tuple(entries))
    return series, validation


def write_series_csv(series: YearSeries, path: Union[str, Path]) -> None:
    lines = ["year,count"]
    lines += [f"{year},{value}" for year, value in series.entries]
    Path(path).write_text("\n".join(lines) + "\n")


def write_series_json(series: YearSeries, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(series.to_dict()) + "\n")

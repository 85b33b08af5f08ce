"""Configuration schema and shared geometry types.

Frames are carried throughout the pipeline as numpy arrays of shape
(height, width, 3), dtype uint8, row-major RGB. Binary masks are boolean
arrays of shape (height, width).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional, Sequence, Union

from .errors import ConfigError, RegionError

RGB = tuple[int, int, int]

DEFAULT_HSV_RANGE = 10
DEFAULT_LOWER_SV = 100
DEFAULT_UPPER_SV = 255
DEFAULT_MIN_NEIGHBORS = 5
DEFAULT_CLOCK_THRESHOLD = 50000.0

CHANNEL_INDEX = {"R": 0, "G": 1, "B": 2}
COMPARATORS = (">=", "<")


def _check_rgb(color: Sequence[int], where: str) -> RGB:
    if len(color) != 3:
        raise ConfigError(f"{where}: expected an [r, g, b] triple, got {color!r}")
    r, g, b = (int(c) for c in color)
    for c in (r, g, b):
        if not 0 <= c <= 255:
            raise ConfigError(f"{where}: channel value {c} outside [0, 255]")
    return (r, g, b)


@dataclass(frozen=True)
class Region:
    """Axis-aligned pixel rectangle: [x0, x1) x [y0, y1)."""

    x0: int
    y0: int
    x1: int
    y1: int

    def __post_init__(self):
        if not (0 <= self.x0 < self.x1 and 0 <= self.y0 < self.y1):
            raise RegionError(
                f"degenerate region: ({self.x0},{self.y0})-({self.x1},{self.y1})"
            )

    @property
    def width(self) -> int:
        return self.x1 - self.x0

    @property
    def height(self) -> int:
        return self.y1 - self.y0

    @property
    def area(self) -> int:
        return self.width * self.height

    def require_within(self, frame_width: int, frame_height: int) -> None:
        """Raise RegionError unless the region fits inside the given frame."""
        if self.x1 > frame_width or self.y1 > frame_height:
            raise RegionError(
                f"region ({self.x0},{self.y0})-({self.x1},{self.y1}) exceeds "
                f"frame bounds {frame_width}x{frame_height}"
            )

    def crop(self, frame):
        """Return the frame slice covered by this region (a view)."""
        self.require_within(frame.shape[1], frame.shape[0])
        return frame[self.y0 : self.y1, self.x0 : self.x1]

    def contains(self, other: "Region") -> bool:
        return (
            self.x0 <= other.x0
            and self.y0 <= other.y0
            and other.x1 <= self.x1
            and other.y1 <= self.y1
        )

    def to_list(self) -> list[int]:
        return [self.x0, self.y0, self.x1, self.y1]

    @classmethod
    def from_list(cls, values: Sequence[int], where: str = "region") -> "Region":
        if len(values) != 4:
            raise ConfigError(f"{where}: expected [x0, y0, x1, y1], got {values!r}")
        try:
            return cls(*(int(v) for v in values))
        except RegionError as exc:
            raise ConfigError(f"{where}: {exc}") from exc


@dataclass(frozen=True)
class SeedSpec:
    """Seed RGB colors plus the three detection hyperparameters.

    hsv_range is the hue half-width; lower_sv/upper_sv bound both
    saturation and value.
    """

    seeds: tuple[RGB, ...]
    hsv_range: int = DEFAULT_HSV_RANGE
    lower_sv: int = DEFAULT_LOWER_SV
    upper_sv: int = DEFAULT_UPPER_SV

    def __post_init__(self):
        if not self.seeds:
            raise ConfigError("seed spec needs at least one seed color")
        object.__setattr__(self, "seeds", tuple(_check_rgb(s, "seed") for s in self.seeds))
        if self.hsv_range < 0:
            raise ConfigError(f"hsv_range must be >= 0, got {self.hsv_range}")
        for name in ("lower_sv", "upper_sv"):
            v = getattr(self, name)
            if not 0 <= v <= 255:
                raise ConfigError(f"{name} must be in [0, 255], got {v}")
        if self.lower_sv > self.upper_sv:
            raise ConfigError(
                f"lower_sv ({self.lower_sv}) exceeds upper_sv ({self.upper_sv})"
            )

    def to_dict(self) -> dict:
        return {
            "seeds": [list(s) for s in self.seeds],
            "hsv_range": self.hsv_range,
            "lower_sv": self.lower_sv,
            "upper_sv": self.upper_sv,
        }

    @classmethod
    def from_dict(cls, doc: dict, where: str = "seed spec") -> "SeedSpec":
        if not isinstance(doc, dict):
            raise ConfigError(f"{where}: expected an object, got {doc!r}")
        if "seeds" not in doc:
            raise ConfigError(f"{where}: missing required field 'seeds'")
        unknown = set(doc) - {"seeds", "hsv_range", "lower_sv", "upper_sv"}
        if unknown:
            raise ConfigError(f"{where}: unknown fields {sorted(unknown)}")
        return cls(
            seeds=tuple(_check_rgb(s, f"{where}.seeds") for s in doc["seeds"]),
            hsv_range=int(doc.get("hsv_range", DEFAULT_HSV_RANGE)),
            lower_sv=int(doc.get("lower_sv", DEFAULT_LOWER_SV)),
            upper_sv=int(doc.get("upper_sv", DEFAULT_UPPER_SV)),
        )


@dataclass(frozen=True)
class ChannelRestriction:
    """Per-pixel predicate on one RGB channel: keep pixels where it holds."""

    channel: str
    op: str
    threshold: int

    def __post_init__(self):
        if self.channel not in CHANNEL_INDEX:
            raise ConfigError(f"restriction channel must be R, G or B, got {self.channel!r}")
        if self.op not in COMPARATORS:
            raise ConfigError(f"restriction op must be '>=' or '<', got {self.op!r}")
        if not 0 <= self.threshold <= 255:
            raise ConfigError(f"restriction threshold {self.threshold} outside [0, 255]")

    def to_dict(self) -> dict:
        return {"channel": self.channel, "op": self.op, "threshold": self.threshold}

    @classmethod
    def from_dict(cls, doc: dict, where: str = "restriction") -> "ChannelRestriction":
        if not isinstance(doc, dict):
            raise ConfigError(f"{where}: expected an object, got {doc!r}")
        for key in ("channel", "op", "threshold"):
            if key not in doc:
                raise ConfigError(f"{where}: missing required field '{key}'")
        return cls(str(doc["channel"]), str(doc["op"]), int(doc["threshold"]))


@dataclass(frozen=True)
class ProjectConfig:
    """Everything one extraction run needs, loadable from a JSON document."""

    frames: str
    clock_region: Region
    territory_seed: SeedSpec
    start_year: int
    end_year: int
    label: str
    map_region: Optional[Region] = None
    water_region: Optional[Region] = None
    water_seed: Optional[SeedSpec] = None
    restrictions: tuple[ChannelRestriction, ...] = ()
    min_neighbors: int = DEFAULT_MIN_NEIGHBORS
    clock_threshold: float = DEFAULT_CLOCK_THRESHOLD

    def __post_init__(self):
        object.__setattr__(self, "restrictions", tuple(self.restrictions))
        if self.start_year > self.end_year:
            raise ConfigError(
                f"start_year ({self.start_year}) exceeds end_year ({self.end_year})"
            )
        if not 0 <= self.min_neighbors <= 8:
            raise ConfigError(f"min_neighbors must be in [0, 8], got {self.min_neighbors}")
        if self.clock_threshold < 0:
            raise ConfigError(f"clock_threshold must be >= 0, got {self.clock_threshold}")

    @property
    def year_count(self) -> int:
        return self.end_year - self.start_year + 1

    def to_dict(self) -> dict:
        return {
            "frames": self.frames,
            "clock_region": self.clock_region.to_list(),
            "map_region": self.map_region.to_list() if self.map_region else None,
            "water_region": self.water_region.to_list() if self.water_region else None,
            "territory_seed": self.territory_seed.to_dict(),
            "water_seed": self.water_seed.to_dict() if self.water_seed else None,
            "restrictions": [r.to_dict() for r in self.restrictions],
            "min_neighbors": self.min_neighbors,
            "clock_threshold": self.clock_threshold,
            "start_year": self.start_year,
            "end_year": self.end_year,
            "label": self.label,
        }

    def with_overrides(self, **kwargs) -> "ProjectConfig":
        return replace(self, **kwargs)


_REQUIRED_FIELDS = ("frames", "clock_region", "territory_seed", "start_year", "end_year", "label")
_KNOWN_FIELDS = set(_REQUIRED_FIELDS) | {
    "map_region",
    "water_region",
    "water_seed",
    "restrictions",
    "min_neighbors",
    "clock_threshold",
}


def config_from_dict(doc: dict) -> ProjectConfig:
    """Build a validated ProjectConfig from a parsed JSON document."""
    if not isinstance(doc, dict):
        raise ConfigError(f"config document must be an object, got {type(doc).__name__}")
    unknown = set(doc) - _KNOWN_FIELDS
    if unknown:
        raise ConfigError(f"unknown config fields: {sorted(unknown)}")
    for key in _REQUIRED_FIELDS:
        if key not in doc:
            raise ConfigError(f"missing required config field '{key}'")

    def opt_region(key: str) -> Optional[Region]:
        value = doc.get(key)
        return None if value is None else Region.from_list(value, key)

    water_seed = doc.get("water_seed")
    clock_threshold = doc.get("clock_threshold", DEFAULT_CLOCK_THRESHOLD)
    try:
        clock_threshold = float(clock_threshold)
    except (TypeError, ValueError):
        raise ConfigError(f"clock_threshold: expected a number, got {clock_threshold!r}")

    return ProjectConfig(
        frames=str(doc["frames"]),
        clock_region=Region.from_list(doc["clock_region"], "clock_region"),
        map_region=opt_region("map_region"),
        water_region=opt_region("water_region"),
        territory_seed=SeedSpec.from_dict(doc["territory_seed"], "territory_seed"),
        water_seed=None if water_seed is None else SeedSpec.from_dict(water_seed, "water_seed"),
        restrictions=tuple(
            ChannelRestriction.from_dict(r, f"restrictions[{i}]")
            for i, r in enumerate(doc.get("restrictions", []))
        ),
        min_neighbors=int(doc.get("min_neighbors", DEFAULT_MIN_NEIGHBORS)),
        clock_threshold=clock_threshold,
        start_year=int(doc["start_year"]),
        end_year=int(doc["end_year"]),
        label=str(doc["label"]),
    )


def load_config(path: Union[str, Path]) -> ProjectConfig:
    """Load and validate a project config from a JSON file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    return config_from_dict(doc)


def save_config(config: ProjectConfig, path: Union[str, Path]) -> None:
    """Serialize a config so that load_config round-trips it unchanged."""
    Path(path).write_text(json.dumps(config.to_dict(), indent=2) + "\n")

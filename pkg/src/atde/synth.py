"""Synthetic fixture generation and brute-force reference implementations.

Fixtures are animated-map frame sequences with known per-year territory
areas and known repaint frames, so every stage of the pipeline can be
checked against ground truth. The oracles here re-derive segmentation
results pixel by pixel with scalar arithmetic and share no code with the
vectorized segmentation module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .errors import AtdeError
from .frames import FRAME_NAME, write_frame
from .model import RGB, CHANNEL_INDEX, ProjectConfig, Region

# Demo palette: three shades of one territory hue plus a similar-hue ocean
# color that segmentation confuses with territory until a green-channel
# restriction is applied.
DEMO_TERRITORY_SHADES: tuple[RGB, ...] = ((47, 170, 235), (103, 207, 254), (201, 238, 254))
DEMO_OCEAN: RGB = (49, 135, 235)

AMBIENT_MAX_CHANNEL = 20  # ambient strip channels in [0, 20): always out of gamut
AMBIENT_STRIP_PIXELS = 50


def _regions_intersect(a: Region, b: Region) -> bool:
    return not (a.x1 <= b.x0 or b.x1 <= a.x0 or a.y1 <= b.y0 or b.y1 <= a.y0)


@dataclass(frozen=True)
class FixtureSpec:
    """Recipe for a synthetic animated-map frame sequence."""

    width: int
    height: int
    areas: tuple[int, ...]  # per-year territory pixel area
    palette: tuple[RGB, ...]
    territory_region: Region
    clock_region: Region
    clock_delta: int  # in-window L1 change at each year repaint
    frames_per_year: int = 5
    noise_rate: float = 0.0
    distractors: tuple[tuple[Region, RGB], ...] = ()
    map_region: Optional[Region] = None
    background: RGB = (0, 0, 0)

    def __post_init__(self):
        if not self.areas:
            raise AtdeError("fixture needs at least one year")
        if not self.palette:
            raise AtdeError("fixture palette must be non-empty")
        if self.frames_per_year < 1:
            raise AtdeError("frames_per_year must be >= 1")
        if not 0.0 <= self.noise_rate <= 1.0:
            raise AtdeError(f"noise_rate {self.noise_rate} outside [0, 1]")
        if self.clock_delta < 1:
            raise AtdeError("clock_delta must be >= 1")
        for region in (self.territory_region, self.clock_region):
            region.require_within(self.width, self.height)
        if _regions_intersect(self.territory_region, self.clock_region):
            raise AtdeError("territory region must not overlap the clock region")
        for region, _ in self.distractors:
            region.require_within(self.width, self.height)
        if self.map_region is not None:
            self.map_region.require_within(self.width, self.height)
        capacity = self.territory_region.area
        for i, area in enumerate(self.areas):
            if not 0 <= area <= capacity:
                raise AtdeError(
                    f"year {i} area {area} exceeds territory region capacity {capacity}"
                )

    @property
    def years(self) -> int:
        return len(self.areas)

    @property
    def frame_count(self) -> int:
        return self.years * self.frames_per_year

    def to_dict(self) -> dict:
        return {
            "width": self.width,
            "height": self.height,
            "areas": list(self.areas),
            "palette": [list(c) for c in self.palette],
            "territory_region": self.territory_region.to_list(),
            "clock_region": self.clock_region.to_list(),
            "clock_delta": self.clock_delta,
            "frames_per_year": self.frames_per_year,
            "noise_rate": self.noise_rate,
            "distractors": [[r.to_list(), list(c)] for r, c in self.distractors],
            "map_region": self.map_region.to_list() if self.map_region else None,
            "background": list(self.background),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "FixtureSpec":
        def rgb(c) -> RGB:
            return (int(c[0]), int(c[1]), int(c[2]))

        return cls(
            width=int(doc["width"]),
            height=int(doc["height"]),
            areas=tuple(int(a) for a in doc["areas"]),
            palette=tuple(rgb(c) for c in doc["palette"]),
            territory_region=Region.from_list(doc["territory_region"], "territory_region"),
            clock_region=Region.from_list(doc["clock_region"], "clock_region"),
            clock_delta=int(doc["clock_delta"]),
            frames_per_year=int(doc.get("frames_per_year", 5)),
            noise_rate=float(doc.get("noise_rate", 0.0)),
            distractors=tuple(
                (Region.from_list(r, "distractor"), rgb(c))
                for r, c in doc.get("distractors", [])
            ),
            map_region=(
                Region.from_list(doc["map_region"], "map_region")
                if doc.get("map_region")
                else None
            ),
            background=rgb(doc.get("background", (0, 0, 0))),
        )


@dataclass(frozen=True)
class GroundTruth:
    """Exact pre-noise facts about a generated fixture."""

    counts: tuple[int, ...]  # per-year territory pixel counts
    change_points: tuple[int, ...]  # repaint frame indices
    masks: tuple[np.ndarray, ...] = field(repr=False, default=())  # per-frame, pre-noise

    def to_dict(self) -> dict:
        return {"counts": list(self.counts), "change_points": list(self.change_points)}


def _repaint_block_size(spec: FixtureSpec) -> tuple[int, int]:
    """Pick (pixel_count, per_pixel_delta) with product exactly clock_delta.

    Smallest workable pixel count wins, leaving the rest of the clock
    region free for the ambient strip. A single pixel can change by at
    most 255 per channel, 765 total.
    """
    for pixels in range(1, spec.clock_region.area + 1):
        if spec.clock_delta % pixels == 0 and spec.clock_delta // pixels <= 765:
            return pixels, spec.clock_delta // pixels
    raise AtdeError(
        f"clock region of {spec.clock_region.area} px cannot realize an exact "
        f"L1 repaint of {spec.clock_delta}"
    )


def _delta_color(per_pixel: int) -> RGB:
    r = min(per_pixel, 255)
    g = min(max(per_pixel - 255, 0), 255)
    b = min(max(per_pixel - 510, 0), 255)
    return (r, g, b)


def _region_pixels(region: Region) -> list[tuple[int, int]]:
    return [
        (y, x)
        for y in range(region.y0, region.y1)
        for x in range(region.x0, region.x1)
    ]


def generate_fixture(
    spec: FixtureSpec, seed: int, out_dir: Union[str, Path]
) -> GroundTruth:
    """Render the fixture into a frame directory and return ground truth.

    Deterministic for a fixed (spec, seed): reruns produce byte-identical
    files. The clock block repaints at the first frame of every year with
    an in-window L1 delta of exactly spec.clock_delta; an ambient strip
    inside the clock window jitters every other frame transition. Noise is
    injected only after ground truth is recorded.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)

    base = np.zeros((spec.height, spec.width, 3), dtype=np.uint8)
    base[:, :] = spec.background
    for region, color in spec.distractors:
        base[region.y0 : region.y1, region.x0 : region.x1] = color

    territory_pixels = _region_pixels(spec.territory_region)
    year_masks = []
    for area in spec.areas:
        mask = np.zeros((spec.height, spec.width), dtype=bool)
        for y, x in territory_pixels[:area]:
            mask[y, x] = True
        year_masks.append(mask)

    n_shades = len(spec.palette)
    shade_rows = np.zeros((spec.height, spec.width, 3), dtype=np.uint8)
    for y in range(spec.territory_region.y0, spec.territory_region.y1):
        shade_rows[y, :] = spec.palette[(y - spec.territory_region.y0) % n_shades]

    clock_pixels = _region_pixels(spec.clock_region)
    repaint_count, per_pixel = _repaint_block_size(spec)
    repaint_block = clock_pixels[:repaint_count]
    ambient_strip = clock_pixels[
        repaint_count : repaint_count
        + min(AMBIENT_STRIP_PIXELS, len(clock_pixels) - repaint_count)
    ]
    toggle_color = _delta_color(per_pixel)

    change_points = tuple(
        y * spec.frames_per_year for y in range(1, spec.years)
    )
    change_set = set(change_points)

    masks: list[np.ndarray] = []
    ambient = rng.integers(0, AMBIENT_MAX_CHANNEL, (len(ambient_strip), 3))
    for t in range(spec.frame_count):
        year_idx = t // spec.frames_per_year
        if t > 0 and t not in change_set:
            ambient = rng.integers(0, AMBIENT_MAX_CHANNEL, (len(ambient_strip), 3))

        frame = base.copy()
        mask = year_masks[year_idx]
        frame[mask] = shade_rows[mask]
        if year_idx % 2 == 1:
            for y, x in repaint_block:
                frame[y, x] = toggle_color
        for i, (y, x) in enumerate(ambient_strip):
            frame[y, x] = ambient[i]

        masks.append(mask)
        if spec.noise_rate > 0:
            flips = rng.random((spec.height, spec.width)) < spec.noise_rate
            values = rng.integers(0, 256, (spec.height, spec.width, 3), dtype=np.uint8)
            frame = np.where(flips[..., None], values, frame)

        write_frame(out_dir / FRAME_NAME.format(t), frame)

    truth = GroundTruth(
        counts=tuple(spec.areas),
        change_points=change_points,
        masks=tuple(masks),
    )
    manifest = {
        "spec": spec.to_dict(),
        "seed": seed,
        "ground_truth": truth.to_dict(),
    }
    (out_dir / "fixture.json").write_text(json.dumps(manifest, indent=2) + "\n")
    return truth


# --- brute-force oracles -------------------------------------------------
#
# Everything below re-derives segmentation results with scalar arithmetic,
# deliberately structured differently from the vectorized pipeline.


def _oracle_hsv(r: int, g: int, b: int) -> tuple[int, int, int]:
    mx = max(r, g, b)
    mn = min(r, g, b)
    d = mx - mn
    v = mx
    s = 0 if mx == 0 else (510 * d + mx) // (2 * mx)
    if d == 0:
        return 0, s, v
    # hue in sixths of the circle, wrapped into [0, 6d) before rounding
    if mx == r:
        n6 = (g - b) % (6 * d)
    elif mx == g:
        n6 = (b - r) + 2 * d
    else:
        n6 = (r - g) + 4 * d
    h = ((60 * n6 + d) // (2 * d)) % 180
    return h, s, v


def _hue_within(h: int, center: int, radius: int) -> bool:
    return min((h - center) % 180, (center - h) % 180) <= radius


def oracle_mask(frame: np.ndarray, config: ProjectConfig) -> np.ndarray:
    """Reference mask: literal per-pixel evaluation of the whole
    segmentation contract, for equivalence testing against process_frame."""
    if config.map_region is not None:
        r = config.map_region
        frame = frame[r.y0 : r.y1, r.x0 : r.x1]
    spec = config.territory_seed
    seed_hues = [_oracle_hsv(*seed)[0] for seed in spec.seeds]

    height, width = frame.shape[:2]
    detected = [[False] * width for _ in range(height)]
    for y in range(height):
        for x in range(width):
            r_, g_, b_ = (int(c) for c in frame[y, x])
            h, s, v = _oracle_hsv(r_, g_, b_)
            hit = False
            for hue in seed_hues:
                if (
                    _hue_within(h, hue, spec.hsv_range)
                    and spec.lower_sv <= s <= spec.upper_sv
                    and spec.lower_sv <= v <= spec.upper_sv
                ):
                    hit = True
                    break
            if hit:
                for restriction in config.restrictions:
                    value = (r_, g_, b_)[CHANNEL_INDEX[restriction.channel]]
                    if restriction.op == ">=":
                        ok = value >= restriction.threshold
                    else:
                        ok = value < restriction.threshold
                    if not ok:
                        hit = False
                        break
            detected[y][x] = hit

    filtered = brute_force_dnf(np.array(detected, dtype=bool), config.min_neighbors)
    return filtered


def brute_force_dnf(mask: np.ndarray, min_neighbors: int) -> np.ndarray:
    """Neighbor filtering by explicit 8-way enumeration per pixel."""
    height, width = mask.shape
    out = np.zeros_like(mask)
    offsets = [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)]
    for y in range(height):
        for x in range(width):
            if not mask[y, x]:
                continue
            n = 0
            for dy, dx in offsets:
                ny, nx = y + dy, x + dx
                if 0 <= ny < height and 0 <= nx < width and mask[ny, nx]:
                    n += 1
            if n >= min_neighbors:
                out[y, x] = True
    return out

"""Color segmentation: exact-integer HSV conversion, seed bounds, range
masks, channel restriction, and direct neighbor filtering.

Hue lives on the halved-degree scale [0, 180); saturation and value on
[0, 255]. All rounding is half-away-from-zero, done in integer arithmetic
so results are bit-reproducible across platforms.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DimensionMismatchError, SeedExclusionWarning
from .model import RGB, CHANNEL_INDEX, ChannelRestriction, SeedSpec

Mask = np.ndarray  # (H, W) bool


@dataclass(frozen=True)
class HsvColor:
    h: int  # [0, 180)
    s: int  # [0, 255]
    v: int  # [0, 255]

    def __post_init__(self):
        if not 0 <= self.h < 180:
            raise ValueError(f"hue {self.h} outside [0, 180)")
        for name in ("s", "v"):
            c = getattr(self, name)
            if not 0 <= c <= 255:
                raise ValueError(f"{name} component {c} outside [0, 255]")


BoundPair = tuple[HsvColor, HsvColor]
HsvBounds = list[BoundPair]


def _div_round_half_up(num: int, den: int) -> int:
    # round(num/den) with ties away from zero; num >= 0, den > 0 here
    return (2 * num + den) // (2 * den)


def rgb_to_hsv(color: RGB) -> HsvColor:
    """Convert one RGB triple to integer HSV.

    V = max channel; S = round(255 * (max-min) / max), 0 when max is 0;
    H = round(hexcone hue in degrees / 2) mod 180. Achromatic colors get
    hue 0.
    """
    r, g, b = (int(c) for c in color)
    for c in (r, g, b):
        if not 0 <= c <= 255:
            raise ValueError(f"RGB channel {c} outside [0, 255]")
    mx = max(r, g, b)
    mn = min(r, g, b)
    delta = mx - mn
    v = mx
    s = 0 if mx == 0 else _div_round_half_up(255 * delta, mx)
    if delta == 0:
        return HsvColor(0, s, v)
    # Halved hue as a rational p/delta; channel priority R, G, B on ties.
    if mx == r:
        p = 30 * (g - b)
        if p < 0:
            p += 180 * delta
    elif mx == g:
        p = 60 * delta + 30 * (b - r)
    else:
        p = 120 * delta + 30 * (r - g)
    h = _div_round_half_up(p, delta) % 180
    return HsvColor(h, s, v)


def frame_to_hsv(frame: np.ndarray) -> np.ndarray:
    """Vectorized rgb_to_hsv over an (H, W, 3) uint8 frame.

    Returns an (H, W, 3) uint8 array of (h, s, v) channels, bit-identical
    to applying rgb_to_hsv per pixel.
    """
    rgb = frame.astype(np.int64)
    r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]
    mx = np.max(rgb, axis=-1)
    mn = np.min(rgb, axis=-1)
    delta = mx - mn

    v = mx
    safe_v = np.maximum(mx, 1)
    s = (510 * delta + safe_v) // (2 * safe_v)
    s = np.where(mx == 0, 0, s)

    p_r = 30 * (g - b)
    p_r = np.where(p_r < 0, p_r + 180 * delta, p_r)
    p_g = 60 * delta + 30 * (b - r)
    p_b = 120 * delta + 30 * (r - g)
    p = np.select([mx == r, mx == g], [p_r, p_g], default=p_b)

    safe_delta = np.maximum(delta, 1)
    h = ((2 * p + safe_delta) // (2 * safe_delta)) % 180
    h = np.where(delta == 0, 0, h)

    return np.stack([h, s, v], axis=-1).astype(np.uint8)


def seed_bounds(spec: SeedSpec) -> HsvBounds:
    """Derive inclusive HSV bound pairs from a seed spec.

    Each seed contributes the hue interval [h - hsv_range, h + hsv_range]
    modulo 180; intervals that wrap past 0/180 split into two pairs.
    Saturation and value bounds come from lower_sv/upper_sv on every pair.

    Emits SeedExclusionWarning for any seed whose own color the derived
    bounds would not detect (its S or V falls under lower_sv / over
    upper_sv).
    """
    pairs: HsvBounds = []
    lo_sv, hi_sv = spec.lower_sv, spec.upper_sv
    for seed in spec.seeds:
        hsv = rgb_to_hsv(seed)
        if not (lo_sv <= hsv.s <= hi_sv and lo_sv <= hsv.v <= hi_sv):
            warnings.warn(
                f"seed {seed} (HSV {(hsv.h, hsv.s, hsv.v)}) falls outside its own "
                f"bounds (lower_sv={lo_sv}, upper_sv={hi_sv}) and will not be detected",
                SeedExclusionWarning,
                stacklevel=2,
            )
        if spec.hsv_range >= 90:
            hue_intervals = [(0, 179)]
        else:
            lo = hsv.h - spec.hsv_range
            hi = hsv.h + spec.hsv_range
            if lo < 0:
                hue_intervals = [(0, hi), (lo + 180, 179)]
            elif hi > 179:
                hue_intervals = [(lo, 179), (0, hi - 180)]
            else:
                hue_intervals = [(lo, hi)]
        for h_lo, h_hi in hue_intervals:
            pairs.append((HsvColor(h_lo, lo_sv, lo_sv), HsvColor(h_hi, hi_sv, hi_sv)))
    return pairs


def in_range_mask(frame_hsv: np.ndarray, bounds: HsvBounds) -> Mask:
    """Pixels falling inside ANY bound pair (all comparisons inclusive)."""
    if frame_hsv.ndim != 3 or frame_hsv.shape[2] != 3:
        raise DimensionMismatchError(
            f"expected an (H, W, 3) HSV array, got shape {frame_hsv.shape}"
        )
    h = frame_hsv[..., 0]
    s = frame_hsv[..., 1]
    v = frame_hsv[..., 2]
    mask = np.zeros(frame_hsv.shape[:2], dtype=bool)
    for lower, upper in bounds:
        mask |= (
            (h >= lower.h)
            & (h <= upper.h)
            & (s >= lower.s)
            & (s <= upper.s)
            & (v >= lower.v)
            & (v <= upper.v)
        )
    return mask


def apply_channel_restriction(
    mask: Mask, frame_rgb: np.ndarray, restriction: ChannelRestriction
) -> Mask:
    """Keep only mask pixels whose RGB channel satisfies the comparator."""
    if mask.shape != frame_rgb.shape[:2]:
        raise DimensionMismatchError(
            f"mask shape {mask.shape} does not match frame shape {frame_rgb.shape[:2]}"
        )
    channel = frame_rgb[..., CHANNEL_INDEX[restriction.channel]]
    if restriction.op == ">=":
        keep = channel >= restriction.threshold
    else:
        keep = channel < restriction.threshold
    return mask & keep


def neighbor_counts(mask: Mask) -> np.ndarray:
    """Count set pixels among each pixel's 8 neighbors (zero padding)."""
    padded = np.zeros((mask.shape[0] + 2, mask.shape[1] + 2), dtype=np.int32)
    padded[1:-1, 1:-1] = mask
    counts = (
        padded[:-2, :-2]
        + padded[:-2, 1:-1]
        + padded[:-2, 2:]
        + padded[1:-1, :-2]
        + padded[1:-1, 2:]
        + padded[2:, :-2]
        + padded[2:, 1:-1]
        + padded[2:, 2:]
    )
    return counts


def dnf(mask: Mask, min_neighbors: int) -> Mask:
    """Direct neighbor filtering: drop set pixels with fewer than
    min_neighbors set pixels among their 8 neighbors."""
    if not 0 <= min_neighbors <= 8:
        raise ConfigError(
            f"min_neighbors must be in [0, 8], got {min_neighbors} "
            f"(a 3x3 neighborhood has at most 8 neighbors)"
        )
    if min_neighbors == 0:
        return mask.copy()
    return mask & (neighbor_counts(mask) >= min_neighbors)


def count_mask(mask: Mask) -> int:
    """Number of set pixels."""
    return int(np.count_nonzero(mask))

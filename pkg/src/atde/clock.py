"""Temporal alignment: per-frame difference scores over the clock window,
change-point detection, and the one-frame-per-year condensed index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import AtdeError, DimensionMismatchError, YearMismatchError
from .model import Region


def frame_delta_score(frame_prev: np.ndarray, frame_curr: np.ndarray, window: Region) -> int:
    """Sum of |dR| + |dG| + |dB| over the window between two frames.

    Exact integer arithmetic; spikes when the on-screen digits repaint.
    """
    if frame_prev.shape != frame_curr.shape:
        raise DimensionMismatchError(
            f"frame shapes differ: {frame_prev.shape} vs {frame_curr.shape}"
        )
    a = window.crop(frame_prev).astype(np.int32)
    b = window.crop(frame_curr).astype(np.int32)
    return int(np.abs(a - b).sum())


@dataclass(frozen=True)
class ClockSeries:
    """Scores S_1..S_{T-1} plus the threshold and resulting change points.

    scores[i] is the score between frames i and i+1, i.e. S_{i+1}.
    change_points holds frame indices t with S_t strictly above the
    threshold; each such t is the first frame after a digit repaint.
    """

    scores: tuple[int, ...]
    threshold: float
    change_points: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        points = tuple(
            t for t in range(1, len(self.scores) + 1) if self.scores[t - 1] > self.threshold
        )
        object.__setattr__(self, "change_points", points)

    def score_at(self, t: int) -> int:
        """S_t for t in [1, frame_count)."""
        return self.scores[t - 1]


def scan_clock(
    frames: Iterable[np.ndarray], window: Region, threshold: float
) -> ClockSeries:
    """Score consecutive frame pairs over the clock window."""
    scores: list[int] = []
    prev = None
    for frame in frames:
        if prev is not None:
            scores.append(frame_delta_score(prev, frame, window))
        prev = frame
    if prev is None or not scores:
        raise AtdeError("clock scan needs at least 2 frames")
    return ClockSeries(scores=tuple(scores), threshold=threshold)


def emit_score_histogram(
    series: ClockSeries, bin_count: int
) -> list[tuple[float, float, int]]:
    """Equal-width histogram of the scores over [0, max score].

    Returns (bin_lo, bin_hi, count) rows; the last bin includes the max.
    """
    if bin_count < 1:
        raise AtdeError(f"bin_count must be >= 1, got {bin_count}")
    if not series.scores:
        raise AtdeError("cannot histogram an empty score series")
    top = max(series.scores)
    width = top / bin_count
    counts = [0] * bin_count
    for s in series.scores:
        idx = 0 if width == 0 else min(int(s / width), bin_count - 1)
        counts[idx] += 1
    return [(i * width, (i + 1) * width, counts[i]) for i in range(bin_count)]


@dataclass(frozen=True)
class YearIndex:
    """One (frame_index, year) entry per year, in ascending year order."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        years = [y for _, y in self.entries]
        if years and years != list(range(years[0], years[0] + len(years))):
            raise AtdeError("year index years must ascend by 1")

    def frame_indices(self) -> list[int]:
        return [f for f, _ in self.entries]

    def years(self) -> list[int]:
        return [y for _, y in self.entries]


def build_year_index(
    series: ClockSeries,
    frame_count: int,
    start_year: int,
    end_year: int,
    resample: bool = False,
) -> YearIndex:
    """Assign years to the intervals between change points.

    Intervals are [0, c1), [c1, c2), ..., [ck, T); each is represented by
    its first frame, and interval i gets start_year + i. If the interval
    count disagrees with the year span, raises YearMismatchError unless
    resample is set, in which case intervals map to years by nearest-rank
    linear interpolation (frames may then repeat when years outnumber
    intervals).
    """
    if start_year > end_year:
        raise AtdeError(f"start_year {start_year} exceeds end_year {end_year}")
    if len(series.scores) != frame_count - 1:
        raise AtdeError(
            f"score count {len(series.scores)} does not match frame count {frame_count}"
        )
    representatives = [0] + [t for t in series.change_points if t < frame_count]
    year_count = end_year - start_year + 1
    n = len(representatives)

    if n == year_count:
        chosen = representatives
    elif resample:
        if year_count == 1:
            chosen = [representatives[0]]
        else:
            # nearest-rank: position j of m years picks rank round(j*(n-1)/(m-1))
            chosen = [
                representatives[(2 * j * (n - 1) + (year_count - 1)) // (2 * (year_count - 1))]
                for j in range(year_count)
            ]
    else:
        raise YearMismatchError(n, year_count)

    return YearIndex(entries=tuple((f, start_year + j) for j, f in enumerate(chosen)))


def condense(
    frames: Sequence[np.ndarray], index: YearIndex
) -> list[tuple[int, np.ndarray]]:
    """Keep exactly the representative frame of each year, in year order."""
    total = len(frames)
    out = []
    for frame_index, year in index.entries:
        if not 0 <= frame_index < total:
            raise AtdeError(
                f"year index references frame {frame_index} but the source has "
                f"{total} frames"
            )
        out.append((year, frames[frame_index]))
    return out

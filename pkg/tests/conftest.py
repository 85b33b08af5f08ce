import numpy as np
import pytest

from atde.model import Region, SeedSpec
from atde.synth import FixtureSpec, generate_fixture

# Demo colors: three shades of one blue territory hue plus an ocean blue
# whose hue overlaps the territory band but whose green channel does not.
DARK = (47, 170, 235)
MID = (103, 207, 254)
PALE = (201, 238, 254)
OCEAN = (49, 135, 235)

# Hand-derived HSV equivalents (halved-degree hue, 0-255 S/V).
DARK_HSV = (100, 204, 235)
MID_HSV = (99, 152, 254)
PALE_HSV = (99, 53, 254)
OCEAN_HSV = (106, 202, 235)

FIG_INPUT = np.array(
    [
        [0, 1, 0, 0, 1],
        [1, 1, 0, 1, 0],
        [0, 1, 1, 1, 0],
        [0, 0, 1, 0, 0],
        [1, 0, 0, 0, 1],
    ],
    dtype=bool,
)

FIG_NEIGHBOR_COUNTS = np.array(
    [
        [3, 2, 3, 2, 1],
        [3, 4, 6, 3, 3],
        [3, 4, 5, 3, 2],
        [2, 4, 3, 4, 2],
        [0, 2, 1, 2, 0],
    ],
    dtype=np.int32,
)

# Input AND (neighbor count >= 3), which is what the filtering rule yields.
FIG_FILTERED = np.array(
    [
        [0, 0, 0, 0, 0],
        [1, 1, 0, 1, 0],
        [0, 1, 1, 1, 0],
        [0, 0, 1, 0, 0],
        [0, 0, 0, 0, 0],
    ],
    dtype=bool,
)


@pytest.fixture
def territory_seed():
    return SeedSpec(seeds=(DARK, MID, PALE))


@pytest.fixture
def two_shade_seed():
    return SeedSpec(seeds=(DARK, MID))


def solid_frame(color, width=8, height=8):
    frame = np.zeros((height, width, 3), dtype=np.uint8)
    frame[:, :] = color
    return frame


def four_block_frame():
    """2x2 grid of 20x20 blocks (dark, mid / pale, ocean) with 4 px gaps.

    Returns (frame, block regions dict). Background is black.
    """
    frame = np.zeros((48, 48, 3), dtype=np.uint8)
    blocks = {
        "dark": (Region(2, 2, 22, 22), DARK),
        "mid": (Region(26, 2, 46, 22), MID),
        "pale": (Region(2, 26, 22, 46), PALE),
        "ocean": (Region(26, 26, 46, 46), OCEAN),
    }
    for region, color in blocks.values():
        frame[region.y0 : region.y1, region.x0 : region.x1] = color
    return frame, blocks


def small_fixture_spec(noise_rate=0.0, frames_per_year=10, areas=(50, 80, 60)):
    """3-year, 30-frame fixture: clock repaints with L1 exactly 80000 at the
    first frame of each year; ambient in-window jitter stays under 3000."""
    return FixtureSpec(
        width=120,
        height=90,
        areas=tuple(areas),
        palette=(DARK, MID),
        territory_region=Region(4, 4, 64, 64),
        clock_region=Region(70, 50, 110, 90),
        clock_delta=80000,
        frames_per_year=frames_per_year,
        noise_rate=noise_rate,
        map_region=Region(0, 0, 66, 90),
    )


@pytest.fixture(scope="session")
def small_fixture(tmp_path_factory):
    """(spec, frames_dir, ground_truth) for the 30-frame fixture."""
    spec = small_fixture_spec()
    frames_dir = tmp_path_factory.mktemp("small_fixture") / "frames"
    truth = generate_fixture(spec, seed=42, out_dir=frames_dir)
    return spec, frames_dir, truth

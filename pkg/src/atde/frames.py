"""Frame directory IO.

The pipeline consumes an ordered directory of lossless 8-bit RGB images
named frame_000000.png, frame_000001.png, ... with no gaps. Decoding
compressed video into such a directory is left to an external tool; see
ffmpeg_extract_command for the incantation.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Iterator, Union

import numpy as np
from PIL import Image

from .errors import DimensionMismatchError, FrameSourceError

FRAME_PATTERN = re.compile(r"^frame_(\d{6})\.png$")
FRAME_NAME = "frame_{:06d}.png"
VALIDATION_NAME = "valid_{:06d}.png"


def ffmpeg_extract_command(video_path: str, out_dir: str) -> list[str]:
    """Command line that decodes a video into a conforming frame directory.

    Not executed by this package; run it yourself with ffmpeg on PATH.
    """
    return [
        "ffmpeg",
        "-i",
        video_path,
        "-vsync",
        "0",
        "-start_number",
        "0",
        f"{out_dir}/frame_%06d.png",
    ]


def read_frame(path: Union[str, Path]) -> np.ndarray:
    """Read one image file as an (H, W, 3) uint8 RGB array."""
    with Image.open(path) as img:
        return np.asarray(img.convert("RGB"), dtype=np.uint8)


def write_frame(path: Union[str, Path], frame: np.ndarray) -> None:
    """Write an (H, W, 3) uint8 RGB array as a lossless PNG."""
    Image.fromarray(np.ascontiguousarray(frame, dtype=np.uint8), "RGB").save(
        path, format="PNG"
    )


def write_mask_image(path: Union[str, Path], mask: np.ndarray) -> None:
    """Export a boolean mask as an 8-bit grayscale PNG (0 or 255)."""
    Image.fromarray(np.where(mask, 255, 0).astype(np.uint8), "L").save(path, format="PNG")


class FrameSource:
    """Ordered, random-access reader over a frame directory.

    All frames must share the dimensions of frame 0; every read is
    validated. Instances are cheap; each holds no open file handles, so
    independent iterators can be opened for parallel passes.
    """

    def __init__(self, directory: Union[str, Path]):
        self.directory = Path(directory)
        if not self.directory.is_dir():
            raise FrameSourceError(f"frame directory not found: {self.directory}")
        indices = sorted(
            int(m.group(1))
            for p in self.directory.iterdir()
            if (m := FRAME_PATTERN.match(p.name))
        )
        if not indices:
            raise FrameSourceError(f"no frames in {self.directory} (expected frame_000000.png, ...)")
        for expected, actual in enumerate(indices):
            if actual != expected:
                raise FrameSourceError(
                    f"frame directory {self.directory} has a gap: missing index {expected}"
                )
        self._count = len(indices)
        first = self[0]
        self.height, self.width = first.shape[:2]

    def __len__(self) -> int:
        return self._count

    def path_of(self, index: int) -> Path:
        return self.directory / FRAME_NAME.format(index)

    def __getitem__(self, index: int) -> np.ndarray:
        if not 0 <= index < self._count:
            raise FrameSourceError(
                f"frame index {index} out of range [0, {self._count})"
            )
        frame = read_frame(self.path_of(index))
        if hasattr(self, "width") and frame.shape[:2] != (self.height, self.width):
            raise DimensionMismatchError(
                f"frame {index} is {frame.shape[1]}x{frame.shape[0]} but frame 0 "
                f"is {self.width}x{self.height}"
            )
        return frame

    def __iter__(self) -> Iterator[np.ndarray]:
        for i in range(self._count):
            yield self[i]


def open_frame_source(locator: Union[str, Path]) -> FrameSource:
    """Open a frame directory, validating naming and contiguity."""
    return FrameSource(locator)

import numpy as np
import pytest

from atde.errors import DimensionMismatchError, FrameSourceError
from atde.frames import (
    FRAME_NAME,
    ffmpeg_extract_command,
    open_frame_source,
    read_frame,
    write_frame,
    write_mask_image,
)


def make_frames(directory, count, width=6, height=4, start=0):
    directory.mkdir(parents=True, exist_ok=True)
    for i in range(start, start + count):
        frame = np.full((height, width, 3), i % 256, dtype=np.uint8)
        write_frame(directory / FRAME_NAME.format(i), frame)


def test_png_roundtrip(tmp_path):
    frame = np.arange(4 * 6 * 3, dtype=np.uint8).reshape(4, 6, 3)
    path = tmp_path / "frame_000000.png"
    write_frame(path, frame)
    assert np.array_equal(read_frame(path), frame)


def test_iteration_in_order(tmp_path):
    make_frames(tmp_path / "f", 10)
    source = open_frame_source(tmp_path / "f")
    assert len(source) == 10
    values = [int(frame[0, 0, 0]) for frame in source]
    assert values == list(range(10))


def test_two_passes_identical(tmp_path):
    make_frames(tmp_path / "f", 5)
    source = open_frame_source(tmp_path / "f")
    first = [frame.tobytes() for frame in source]
    second = [frame.tobytes() for frame in source]
    assert first == second


def test_gap_reported_with_index(tmp_path):
    make_frames(tmp_path / "f", 4)
    make_frames(tmp_path / "f", 5, start=5)
    with pytest.raises(FrameSourceError, match="index 4"):
        open_frame_source(tmp_path / "f")


def test_empty_directory(tmp_path):
    (tmp_path / "f").mkdir()
    with pytest.raises(FrameSourceError, match="no frames"):
        open_frame_source(tmp_path / "f")


def test_missing_directory(tmp_path):
    with pytest.raises(FrameSourceError):
        open_frame_source(tmp_path / "nope")


def test_dimension_mismatch_named(tmp_path):
    make_frames(tmp_path / "f", 3, width=8, height=6)
    write_frame(tmp_path / "f" / FRAME_NAME.format(1), np.zeros((4, 6, 3), dtype=np.uint8))
    source = open_frame_source(tmp_path / "f")
    with pytest.raises(DimensionMismatchError, match="frame 1"):
        list(source)


def test_index_out_of_range(tmp_path):
    make_frames(tmp_path / "f", 3)
    source = open_frame_source(tmp_path / "f")
    with pytest.raises(FrameSourceError):
        source[3]


def test_mask_image_is_0_or_255(tmp_path):
    mask = np.array([[True, False], [False, True]])
    path = tmp_path / "mask.png"
    write_mask_image(path, mask)
    from PIL import Image

    data = np.asarray(Image.open(path))
    assert set(np.unique(data)) == {0, 255}


def test_ffmpeg_command_mentions_pattern():
    cmd = ffmpeg_extract_command("video.mp4", "outdir")
    assert "ffmpeg" in cmd[0]
    assert any("frame_%06d.png" in part for part in cmd)

"""Command-line surface: scan-clock, condense, extract, scale, normalize,
plot, synth, and the calibrate server.

All artifacts are written atomically (temp file + rename) and contain no
timestamps, so re-running a command on identical inputs reproduces every
output byte for byte.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path
from typing import Optional

import click
import numpy as np

from . import clock as clockmod
from .errors import AtdeError, ConfigError, SeedExclusionWarning
from .extractor import (
    YearSeries,
    extract_series,
    write_series_csv,
    write_series_json,
)
from .frames import FRAME_NAME, VALIDATION_NAME, open_frame_source, write_frame
from .model import CHANNEL_INDEX, ChannelRestriction, ProjectConfig, Region, SeedSpec, load_config, save_config
from .plotting import emit_plot
from .segmentation import frame_to_hsv, in_range_mask, seed_bounds
from .scaling import (
    ScaleRecord,
    apply_scale,
    count_water_pixels,
    relative_normalize,
    scale_factor,
    write_scales_csv,
)
from .synth import DEMO_OCEAN, DEMO_TERRITORY_SHADES, FixtureSpec, generate_fixture


def _colors_enabled() -> bool:
    return not os.environ.get("ATDE_NO_COLOR")


def _fail(stage: str, message: str) -> "click.exceptions.Exit":
    prefix = f"error [{stage}]: "
    if _colors_enabled():
        click.secho(prefix, fg="red", bold=True, err=True, nl=False)
    else:
        click.echo(prefix, err=True, nl=False)
    click.echo(message, err=True)
    sys.exit(1)


def _write_text(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def _write_frame_atomic(path: Path, frame) -> None:
    tmp = path.with_name(path.name + ".tmp.png")
    write_frame(tmp, frame)
    os.replace(tmp, path)


def _load_config_or_fail(stage: str, path: str) -> ProjectConfig:
    try:
        return load_config(path)
    except ConfigError as exc:
        _fail(stage, str(exc))


def _parse_rect(text: str) -> Region:
    parts = text.split(",")
    if len(parts) != 4:
        raise ConfigError(f"--rect expects x0,y0,x1,y1, got {text!r}")
    return Region(*(int(p.strip()) for p in parts))


def _scan(stage: str, config: ProjectConfig, threshold: Optional[float]):
    tau = config.clock_threshold if threshold is None else threshold
    try:
        source = open_frame_source(config.frames)
        series = clockmod.scan_clock(iter(source), config.clock_region, tau)
    except AtdeError as exc:
        _fail(stage, str(exc))
    return source, series


config_option = click.option(
    "--config", "config_path", required=True, type=click.Path(exists=True, dir_okay=False)
)
out_option = click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
threshold_option = click.option(
    "--threshold", type=float, default=None, help="Override the config clock threshold."
)


@click.group()
@click.version_option(package_name="atde")
def main():
    """Extract per-year territory pixel counts from animated map videos."""


@main.command("scan-clock")
@config_option
@out_option
@threshold_option
@click.option("--bins", type=int, default=20, show_default=True, help="Histogram bin count.")
def scan_clock_cmd(config_path: str, out_dir: str, threshold: Optional[float], bins: int):
    """Score frame-to-frame change inside the clock window."""
    config = _load_config_or_fail("scan-clock", config_path)
    _, series = _scan("scan-clock", config, threshold)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    _write_text(
        out / "scores.csv",
        "t,score\n" + "".join(f"{t},{s}\n" for t, s in enumerate(series.scores, start=1)),
    )
    _write_text(
        out / "changepoints.csv",
        "t\n" + "".join(f"{t}\n" for t in series.change_points),
    )
    try:
        hist = clockmod.emit_score_histogram(series, bins)
    except AtdeError as exc:
        _fail("scan-clock", str(exc))
    _write_text(
        out / "hist.csv",
        "bin_lo,bin_hi,count\n" + "".join(f"{lo:g},{hi:g},{n}\n" for lo, hi, n in hist),
    )
    click.echo(
        f"scanned {len(series.scores) + 1} frames: {len(series.change_points)} "
        f"change points at threshold {series.threshold:g}"
    )


def _condense(stage, config, threshold, force_resample):
    source, series = _scan(stage, config, threshold)
    try:
        index = clockmod.build_year_index(
            series, len(source), config.start_year, config.end_year, resample=force_resample
        )
        condensed = clockmod.condense(source, index)
    except AtdeError as exc:
        _fail(stage, str(exc))
    return condensed


@main.command("condense")
@config_option
@out_option
@threshold_option
@click.option("--force-resample", is_flag=True, help="Map intervals to years by nearest rank.")
def condense_cmd(config_path, out_dir, threshold, force_resample):
    """Write the one-frame-per-year condensed directory."""
    config = _load_config_or_fail("condense", config_path)
    condensed = _condense("condense", config, threshold, force_resample)
    out = Path(out_dir)
    frames_dir = out / "condensed"
    frames_dir.mkdir(parents=True, exist_ok=True)

    lines = ["year,frame"]
    for i, (year, frame) in enumerate(condensed):
        name = FRAME_NAME.format(i)
        _write_frame_atomic(frames_dir / name, frame)
        lines.append(f"{year},{name}")
    _write_text(out / "retained.csv", "\n".join(lines) + "\n")
    click.echo(f"retained {len(condensed)} frames in {frames_dir}")


@main.command("extract")
@config_option
@out_option
@threshold_option
@click.option("--force-resample", is_flag=True, help="Map intervals to years by nearest rank.")
def extract_cmd(config_path, out_dir, threshold, force_resample):
    """Extract the per-year pixel-count series plus validation frames."""
    config = _load_config_or_fail("extract", config_path)
    condensed = _condense("extract", config, threshold, force_resample)
    try:
        series, validation = extract_series(condensed, config)
    except AtdeError as exc:
        _fail("extract", str(exc))
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_series_csv(series, out / "series.csv")
    write_series_json(series, out / "series.json")
    for i, frame in enumerate(validation):
        _write_frame_atomic(out / VALIDATION_NAME.format(i), frame)
    click.echo(f"extracted {len(series.entries)} years for {config.label!r} into {out}")


@main.command("scale")
@click.option(
    "--config",
    "config_paths",
    required=True,
    multiple=True,
    type=click.Path(exists=True, dir_okay=False),
    help="One per video; repeatable.",
)
@out_option
@click.option("--rect", default=None, help="Water box override: x0,y0,x1,y1 (applies to all).")
@click.option("--reference", default=None, help="Label of the reference video (default: first).")
@click.option(
    "--frame", "frame_index", type=int, default=0, show_default=True,
    help="Frame index to count water pixels in.",
)
def scale_cmd(config_paths, out_dir, rect, reference, frame_index):
    """Count invariant water pixels per video and derive scale factors."""
    counts: list[tuple[str, int]] = []
    for path in config_paths:
        config = _load_config_or_fail("scale", path)
        box = config.water_region
        if rect:
            try:
                box = _parse_rect(rect)
            except (ConfigError, ValueError) as exc:
                _fail("scale", str(exc))
        if box is None:
            _fail("scale", f"{path}: no water_region in config and no --rect given")
        seed = config.water_seed
        if seed is None:
            _fail("scale", f"{path}: config has no water_seed")
        try:
            source = open_frame_source(config.frames)
            count = count_water_pixels(source[frame_index], box, seed)
        except AtdeError as exc:
            _fail("scale", str(exc))
        counts.append((config.label, count))

    labels = [label for label, _ in counts]
    ref_label = reference if reference is not None else labels[0]
    if ref_label not in labels:
        _fail("scale", f"reference label {ref_label!r} not among {labels}")
    ref_count = dict(counts)[ref_label]
    try:
        records = [
            ScaleRecord(label, count, scale_factor(count, ref_count))
            for label, count in counts
        ]
    except AtdeError as exc:
        _fail("scale", str(exc))
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_scales_csv(records, out / "scales.csv")
    for r in records:
        click.echo(f"{r.label}: {r.water_pixels} water px, factor {r.factor:g}")


def _read_scales_csv(path: Path) -> dict[str, float]:
    factors: dict[str, float] = {}
    for line in path.read_text().splitlines()[1:]:
        if not line.strip():
            continue
        label, _, factor = line.rsplit(",", 2)
        factors[label] = float(factor)
    return factors


@main.command("normalize")
@click.argument("series_files", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@out_option
@click.option(
    "--scales",
    "scales_path",
    default=None,
    type=click.Path(exists=True, dir_okay=False),
    help="scales.csv mapping labels to factors, applied before normalizing.",
)
def normalize_cmd(series_files, out_dir, scales_path):
    """Normalize series jointly by the global maximum value.

    Unscaled inputs without a factor in --scales get factor 1.0.
    """
    factors = _read_scales_csv(Path(scales_path)) if scales_path else {}
    loaded: list[tuple[str, YearSeries]] = []
    for path in series_files:
        try:
            series = YearSeries.load(path)
            if series.scale_factor is None:
                series = apply_scale(series, factors.get(series.label, 1.0))
            loaded.append((Path(path).stem, series))
        except (AtdeError, KeyError, ValueError) as exc:
            _fail("normalize", f"{path}: {exc}")
    try:
        normalized = relative_normalize([s for _, s in loaded])
    except AtdeError as exc:
        _fail("normalize", str(exc))
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for (stem, _), series in zip(loaded, normalized):
        _write_text(out / f"{stem}.normalized.json", json.dumps(series.to_dict()) + "\n")
    click.echo(f"normalized {len(normalized)} series into {out}")


@main.command("plot")
@click.argument("series_files", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@out_option
@click.option("--title", default="", help="Chart title.")
def plot_cmd(series_files, out_dir, title):
    """Render one SVG line chart of the given series files."""
    try:
        series_list = [YearSeries.load(p) for p in series_files]
        svg = emit_plot(series_list, title=title)
    except (AtdeError, KeyError, ValueError) as exc:
        _fail("plot", str(exc))
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write_text(out / "plot.svg", svg)
    click.echo(f"wrote {out / 'plot.svg'}")


def demo_fixture_spec() -> FixtureSpec:
    """A small rise-and-fall territory with an ocean distractor."""
    rise = [4000, 9000, 16000, 22000, 26000, 28000]
    fall = [27000, 24000, 18000, 11000, 6000, 2500]
    return FixtureSpec(
        width=320,
        height=240,
        areas=tuple(rise + fall),
        palette=DEMO_TERRITORY_SHADES[:2],
        territory_region=Region(8, 8, 208, 168),
        clock_region=Region(220, 180, 300, 230),
        clock_delta=80000,
        frames_per_year=5,
        distractors=((Region(220, 8, 300, 88), DEMO_OCEAN),),
        map_region=Region(0, 0, 320, 170),
    )


def suggest_restrictions(spec: FixtureSpec) -> tuple[ChannelRestriction, ...]:
    """Channel boundaries separating look-alike distractors from the palette.

    A distractor color can sit inside the palette's HSV bounds (an ocean
    sharing the territory hue, say) and would be counted; when one RGB
    channel cleanly separates it from every palette shade, a restriction
    on that channel removes it exactly.
    """
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SeedExclusionWarning)
        bounds = seed_bounds(SeedSpec(seeds=spec.palette))
    restrictions: list[ChannelRestriction] = []
    for _, color in spec.distractors:
        pixel = np.array([[color]], dtype=np.uint8)
        if not in_range_mask(frame_to_hsv(pixel), bounds).any():
            continue
        for channel, idx in CHANNEL_INDEX.items():
            values = [seed[idx] for seed in spec.palette]
            lo, hi = min(values), max(values)
            c = color[idx]
            if c < lo:
                restriction = ChannelRestriction(channel, ">=", (c + lo + 1) // 2)
                break
            if c > hi:
                restriction = ChannelRestriction(channel, "<", (hi + c) // 2 + 1)
                break
        else:
            continue  # no separating channel; leave it to manual tuning
        if restriction not in restrictions:
            restrictions.append(restriction)
    return tuple(restrictions)


def fixture_config(spec: FixtureSpec, frames_dir: Path) -> ProjectConfig:
    """Extraction config matched to a generated fixture."""
    return ProjectConfig(
        frames=str(frames_dir),
        clock_region=spec.clock_region,
        map_region=spec.map_region,
        territory_seed=SeedSpec(seeds=spec.palette),
        restrictions=suggest_restrictions(spec),
        min_neighbors=0 if spec.noise_rate == 0 else 5,
        clock_threshold=spec.clock_delta / 2,
        start_year=0,
        end_year=spec.years - 1,
        label="fixture",
    )


@main.command("synth")
@out_option
@click.option("--seed", type=int, default=0, show_default=True)
@click.option(
    "--spec",
    "spec_path",
    default=None,
    type=click.Path(exists=True, dir_okay=False),
    help="Fixture spec JSON; a built-in demo spec is used when absent.",
)
def synth_cmd(out_dir, seed, spec_path):
    """Generate a synthetic fixture with known ground truth."""
    try:
        if spec_path:
            spec = FixtureSpec.from_dict(json.loads(Path(spec_path).read_text()))
        else:
            spec = demo_fixture_spec()
    except (AtdeError, KeyError, ValueError) as exc:
        _fail("synth", f"bad fixture spec: {exc}")
    out = Path(out_dir)
    frames_dir = out / "frames"
    try:
        truth = generate_fixture(spec, seed, frames_dir)
    except AtdeError as exc:
        _fail("synth", str(exc))
    save_config(fixture_config(spec, frames_dir), out / "config.json")
    click.echo(
        f"generated {spec.frame_count} frames, {spec.years} years, "
        f"change points {list(truth.change_points)}"
    )


@main.command("calibrate")
@config_option
@click.option("--serve-port", type=int, default=8765, show_default=True)
@click.option("--out", "out_dir", default=None, type=click.Path(file_okay=False))
@click.option(
    "--ui-dir",
    default=None,
    type=click.Path(exists=True, file_okay=False),
    help="Directory of built UI assets (defaults to the bundled frontend).",
)
def calibrate_cmd(config_path, serve_port, out_dir, ui_dir):
    """Serve the calibration UI plus its frame/score/config API."""
    from .server import serve_calibration

    config = _load_config_or_fail("calibrate", config_path)
    try:
        serve_calibration(
            config,
            port=serve_port,
            out_dir=Path(out_dir) if out_dir else None,
            ui_dir=Path(ui_dir) if ui_dir else None,
        )
    except AtdeError as exc:
        _fail("calibrate", str(exc))


if __name__ == "__main__":
    main()

/**
 * Calibration session state: region clicks, seed sampling, threshold
 * choice, and config assembly. Pure logic with no DOM access; the browser
 * shell and the tests both drive it through this interface.
 */

export type Rgb = [number, number, number];

export type RegionKind = "clock" | "map" | "water";

export interface Rect {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

export interface SeedSample {
  color: Rgb;
  x: number;
  y: number;
}

export interface ClickOutcome {
  committed: Rect | null;
  notice: string | null;
}

export interface SampleOutcome {
  added: boolean;
  duplicate: boolean;
  notice: string | null;
}

export interface Restriction {
  channel: "R" | "G" | "B";
  op: ">=" | "<";
  threshold: number;
}

export interface ConfigDocument {
  frames: string;
  clock_region: number[];
  map_region: number[] | null;
  water_region: number[] | null;
  territory_seed: {
    seeds: number[][];
    hsv_range: number;
    lower_sv: number;
    upper_sv: number;
  };
  water_seed: { seeds: number[][]; hsv_range: number; lower_sv: number; upper_sv: number } | null;
  restrictions: Restriction[];
  min_neighbors: number;
  clock_threshold: number;
  start_year: number;
  end_year: number;
  label: string;
}

/** Two corner clicks, any order, normalized to (min,min)-(max,max). */
export function normalizeRect(a: [number, number], b: [number, number]): Rect {
  return {
    x0: Math.min(a[0], b[0]),
    y0: Math.min(a[1], b[1]),
    x1: Math.max(a[0], b[0]),
    y1: Math.max(a[1], b[1]),
  };
}

/** Map a click on a zoomed display back to original pixel coordinates. */
export function displayToPixel(
  displayX: number,
  displayY: number,
  zoom: number,
): [number, number] {
  return [Math.floor(displayX / zoom), Math.floor(displayY / zoom)];
}

export class CalibrationSession {
  readonly frameWidth: number;
  readonly frameHeight: number;
  framesPath: string;
  label = "";
  startYear: number | null = null;
  endYear: number | null = null;
  threshold: number | null = null;
  hsvRange = 10;
  lowerSv = 100;
  upperSv = 255;
  minNeighbors = 5;
  restrictions: Restriction[] = [];

  readonly seeds: SeedSample[] = [];
  readonly waterSeeds: SeedSample[] = [];
  readonly regions: Partial<Record<RegionKind, Rect>> = {};
  private pending: Partial<Record<RegionKind, [number, number]>> = {};

  constructor(frameWidth: number, frameHeight: number, framesPath = "") {
    this.frameWidth = frameWidth;
    this.frameHeight = frameHeight;
    this.framesPath = framesPath;
  }

  inBounds(x: number, y: number): boolean {
    return x >= 0 && y >= 0 && x < this.frameWidth && y < this.frameHeight;
  }

  /**
   * Register a corner click for a region. The first click is held; the
   * second commits the normalized rectangle. A second click equal to the
   * first would be degenerate and is refused (the pending corner stays).
   */
  clickRegion(kind: RegionKind, x: number, y: number): ClickOutcome {
    if (!this.inBounds(x, y)) {
      return { committed: null, notice: `click (${x}, ${y}) is outside the frame` };
    }
    const pending = this.pending[kind];
    if (!pending) {
      this.pending[kind] = [x, y];
      return { committed: null, notice: null };
    }
    if (pending[0] === x && pending[1] === y) {
      return { committed: null, notice: "second corner must differ from the first" };
    }
    const rect = normalizeRect(pending, [x, y]);
    if (rect.x0 === rect.x1 || rect.y0 === rect.y1) {
      return { committed: null, notice: "region would be empty; pick a different corner" };
    }
    delete this.pending[kind];
    this.regions[kind] = rect;
    return { committed: rect, notice: null };
  }

  pendingCorner(kind: RegionKind): [number, number] | null {
    return this.pending[kind] ?? null;
  }

  /** Record the exact stored RGB at a clicked pixel; duplicates collapse. */
  sampleSeed(x: number, y: number, color: Rgb, target: "territory" | "water" = "territory"): SampleOutcome {
    if (!this.inBounds(x, y)) {
      return { added: false, duplicate: false, notice: `click (${x}, ${y}) is outside the frame` };
    }
    const list = target === "territory" ? this.seeds : this.waterSeeds;
    const exists = list.some(
      (s) => s.color[0] === color[0] && s.color[1] === color[1] && s.color[2] === color[2],
    );
    if (exists) {
      return {
        added: false,
        duplicate: true,
        notice: `color (${color.join(", ")}) already sampled; kept one entry`,
      };
    }
    list.push({ color: [color[0], color[1], color[2]], x, y });
    return { added: true, duplicate: false, notice: null };
  }

  removeSeed(index: number, target: "territory" | "water" = "territory"): void {
    const list = target === "territory" ? this.seeds : this.waterSeeds;
    if (index >= 0 && index < list.length) list.splice(index, 1);
  }

  setThreshold(tau: number): void {
    if (!(tau >= 0)) throw new Error(`threshold must be >= 0, got ${tau}`);
    this.threshold = tau;
  }

  setYears(start: number, end: number): void {
    if (!Number.isInteger(start) || !Number.isInteger(end)) {
      throw new Error("years must be integers (negative for BCE)");
    }
    if (start > end) throw new Error(`start year ${start} exceeds end year ${end}`);
    this.startYear = start;
    this.endYear = end;
  }

  /** Required commits still missing before export can proceed. */
  missingFields(): string[] {
    const missing: string[] = [];
    if (!this.framesPath) missing.push("frames path");
    if (!this.regions.clock) missing.push("clock region");
    if (this.seeds.length === 0) missing.push("at least one territory seed");
    if (this.startYear === null || this.endYear === null) missing.push("year span");
    if (!this.label) missing.push("label");
    return missing;
  }

  /**
   * Assemble the config document the pipeline loader consumes. Throws
   * with the itemized checklist when required commits are missing.
   */
  exportConfig(): ConfigDocument {
    const missing = this.missingFields();
    if (missing.length > 0) {
      throw new Error(`cannot export yet, missing: ${missing.join(", ")}`);
    }
    const rect = (r: Rect | undefined): number[] | null =>
      r ? [r.x0, r.y0, r.x1, r.y1] : null;
    return {
      frames: this.framesPath,
      clock_region: rect(this.regions.clock)!,
      map_region: rect(this.regions.map),
      water_region: rect(this.regions.water),
      territory_seed: {
        seeds: this.seeds.map((s) => [s.color[0], s.color[1], s.color[2]]),
        hsv_range: this.hsvRange,
        lower_sv: this.lowerSv,
        upper_sv: this.upperSv,
      },
      water_seed:
        this.waterSeeds.length > 0
          ? {
              seeds: this.waterSeeds.map((s) => [s.color[0], s.color[1], s.color[2]]),
              hsv_range: this.hsvRange,
              lower_sv: this.lowerSv,
              upper_sv: this.upperSv,
            }
          : null,
      restrictions: this.restrictions.map((r) => ({ ...r })),
      min_neighbors: this.minNeighbors,
      clock_threshold: this.threshold ?? 50000,
      start_year: this.startYear!,
      end_year: this.endYear!,
      label: this.label,
    };
  }
}

// --- clock score helpers (histogram view and threshold preview) ---------

export interface ScorePoint {
  t: number;
  score: number;
}

export function parseScoresCsv(text: string): ScorePoint[] {
  const lines = text.trim().split(/\r?\n/);
  const points: ScorePoint[] = [];
  for (const line of lines.slice(1)) {
    if (!line.trim()) continue;
    const [t, score] = line.split(",");
    points.push({ t: Number(t), score: Number(score) });
  }
  return points;
}

export interface HistogramBin {
  lo: number;
  hi: number;
  count: number;
}

/** Equal-width bins over [0, max score]; the last bin includes the max. */
export function scoreHistogram(scores: number[], binCount: number): HistogramBin[] {
  if (binCount < 1) throw new Error(`binCount must be >= 1, got ${binCount}`);
  if (scores.length === 0) throw new Error("no scores to bin");
  const top = Math.max(...scores);
  const width = top / binCount;
  const counts = new Array<number>(binCount).fill(0);
  for (const s of scores) {
    const idx = width === 0 ? 0 : Math.min(Math.floor(s / width), binCount - 1);
    counts[idx] += 1;
  }
  return counts.map((count, i) => ({ lo: i * width, hi: (i + 1) * width, count }));
}

/** Frame indices whose score strictly exceeds the threshold. */
export function changePointsAbove(points: ScorePoint[], tau: number): number[] {
  return points.filter((p) => p.score > tau).map((p) => p.t);
}

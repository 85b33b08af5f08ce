/**
 * Browser shell for the calibration session: frame viewer with region
 * and color-picking tools, score histogram with threshold preview, and
 * config export. All pixel math beyond display happens server-side.
 */

import { fetchClockScoresCsv, fetchMeta, frameUrl, postConfig } from "./api.js";
import {
  CalibrationSession,
  RegionKind,
  changePointsAbove,
  displayToPixel,
  parseScoresCsv,
  scoreHistogram,
  ScorePoint,
} from "./session.js";

type Mode = "seed" | "water-seed" | "clock" | "map" | "water";

const REGION_COLORS: Record<RegionKind, string> = {
  clock: "#d62728",
  map: "#2ca02c",
  water: "#1f77b4",
};

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

class App {
  private session!: CalibrationSession;
  private frameIndex = 0;
  private frameCount = 0;
  private zoom = 1;
  private mode: Mode = "seed";
  private image = new Image();
  private offscreen = document.createElement("canvas");
  private scores: ScorePoint[] = [];

  private canvas = el<HTMLCanvasElement>("frame-canvas");
  private histCanvas = el<HTMLCanvasElement>("hist-canvas");
  private notice = el<HTMLDivElement>("notice");

  async start(): Promise<void> {
    const meta = await fetchMeta();
    this.frameCount = meta.frames;
    this.session = new CalibrationSession(meta.width, meta.height, meta.path ?? "");
    el<HTMLInputElement>("frames-path").value = this.session.framesPath;
    this.zoom = Math.max(1, Math.floor(720 / meta.width));
    this.bindControls();
    await this.showFrame(0);
    this.loadScores().catch((err) => this.say(`clock scores unavailable: ${err.message}`));
  }

  private bindControls(): void {
    el<HTMLButtonElement>("prev-frame").onclick = () => this.showFrame(this.frameIndex - 1);
    el<HTMLButtonElement>("next-frame").onclick = () => this.showFrame(this.frameIndex + 1);
    for (const mode of ["seed", "water-seed", "clock", "map", "water"] as Mode[]) {
      el<HTMLButtonElement>(`mode-${mode}`).onclick = () => {
        this.mode = mode;
        this.say(`mode: ${mode}`);
        this.refreshModeButtons();
      };
    }
    this.refreshModeButtons();
    this.canvas.onclick = (event) => this.onCanvasClick(event);

    el<HTMLInputElement>("threshold").onchange = () => {
      const value = Number(el<HTMLInputElement>("threshold").value);
      if (Number.isFinite(value) && value >= 0) {
        this.session.setThreshold(value);
        this.drawHistogram();
        this.updatePreview();
      }
    };
    this.histCanvas.onclick = (event) => {
      if (this.scores.length === 0) return;
      const rect = this.histCanvas.getBoundingClientRect();
      const frac = (event.clientX - rect.left) / rect.width;
      const top = Math.max(...this.scores.map((p) => p.score));
      const tau = Math.round(frac * top);
      el<HTMLInputElement>("threshold").value = String(tau);
      this.session.setThreshold(tau);
      this.drawHistogram();
      this.updatePreview();
    };

    el<HTMLButtonElement>("export-download").onclick = () => this.download();
    el<HTMLButtonElement>("export-post").onclick = () => this.post();
  }

  private refreshModeButtons(): void {
    for (const mode of ["seed", "water-seed", "clock", "map", "water"] as Mode[]) {
      el<HTMLButtonElement>(`mode-${mode}`).classList.toggle("active", mode === this.mode);
    }
  }

  private async showFrame(index: number): Promise<void> {
    if (index < 0 || index >= this.frameCount) return;
    this.frameIndex = index;
    el<HTMLSpanElement>("frame-label").textContent = `frame ${index} / ${this.frameCount - 1}`;
    await new Promise<void>((resolve, reject) => {
      this.image = new Image();
      this.image.onload = () => resolve();
      this.image.onerror = () => reject(new Error(`failed to load frame ${index}`));
      this.image.src = frameUrl(index);
    });
    this.offscreen.width = this.image.naturalWidth;
    this.offscreen.height = this.image.naturalHeight;
    const ctx = this.offscreen.getContext("2d")!;
    ctx.drawImage(this.image, 0, 0);
    this.redraw();
  }

  private redraw(): void {
    const width = this.session.frameWidth * this.zoom;
    const height = this.session.frameHeight * this.zoom;
    this.canvas.width = width;
    this.canvas.height = height;
    const ctx = this.canvas.getContext("2d")!;
    ctx.imageSmoothingEnabled = false;
    ctx.drawImage(this.image, 0, 0, width, height);

    for (const kind of Object.keys(REGION_COLORS) as RegionKind[]) {
      const region = this.session.regions[kind];
      if (region) {
        ctx.strokeStyle = REGION_COLORS[kind];
        ctx.lineWidth = 2;
        ctx.strokeRect(
          region.x0 * this.zoom,
          region.y0 * this.zoom,
          (region.x1 - region.x0) * this.zoom,
          (region.y1 - region.y0) * this.zoom,
        );
      }
      const pending = this.session.pendingCorner(kind);
      if (pending) {
        ctx.fillStyle = REGION_COLORS[kind];
        ctx.fillRect(pending[0] * this.zoom - 3, pending[1] * this.zoom - 3, 6, 6);
      }
    }
    this.renderSeedList();
  }

  private onCanvasClick(event: MouseEvent): void {
    const bounds = this.canvas.getBoundingClientRect();
    const [x, y] = displayToPixel(
      event.clientX - bounds.left,
      event.clientY - bounds.top,
      this.zoom,
    );
    if (this.mode === "seed" || this.mode === "water-seed") {
      if (!this.session.inBounds(x, y)) {
        this.say(`click (${x}, ${y}) is outside the frame`);
        return;
      }
      // sample from the original raster, never the zoomed rendering
      const data = this.offscreen.getContext("2d")!.getImageData(x, y, 1, 1).data;
      const outcome = this.session.sampleSeed(
        x,
        y,
        [data[0], data[1], data[2]],
        this.mode === "seed" ? "territory" : "water",
      );
      this.say(outcome.notice ?? `sampled (${data[0]}, ${data[1]}, ${data[2]}) at (${x}, ${y})`);
    } else {
      const outcome = this.session.clickRegion(this.mode, x, y);
      if (outcome.notice) this.say(outcome.notice);
      else if (outcome.committed) this.say(`${this.mode} region committed`);
      else this.say(`${this.mode}: first corner at (${x}, ${y}); click the opposite corner`);
    }
    this.redraw();
    this.updatePreview();
  }

  private renderSeedList(): void {
    const list = el<HTMLUListElement>("seed-list");
    list.innerHTML = "";
    const add = (label: string, color: [number, number, number], index: number, target: "territory" | "water") => {
      const item = document.createElement("li");
      const swatch = document.createElement("span");
      swatch.className = "swatch";
      swatch.style.backgroundColor = `rgb(${color[0]}, ${color[1]}, ${color[2]})`;
      item.appendChild(swatch);
      item.appendChild(document.createTextNode(`${label} (${color.join(", ")}) `));
      const remove = document.createElement("button");
      remove.textContent = "x";
      remove.onclick = () => {
        this.session.removeSeed(index, target);
        this.redraw();
        this.updatePreview();
      };
      item.appendChild(remove);
      list.appendChild(item);
    };
    this.session.seeds.forEach((s, i) => add("territory", s.color, i, "territory"));
    this.session.waterSeeds.forEach((s, i) => add("water", s.color, i, "water"));
  }

  private async loadScores(): Promise<void> {
    const csv = await fetchClockScoresCsv();
    this.scores = parseScoresCsv(csv);
    this.drawHistogram();
    this.updatePreview();
  }

  private drawHistogram(): void {
    const ctx = this.histCanvas.getContext("2d")!;
    const { width, height } = this.histCanvas;
    ctx.clearRect(0, 0, width, height);
    if (this.scores.length === 0) {
      ctx.fillStyle = "#666";
      ctx.fillText("no scores yet: run scan-clock or wait for the server", 10, 20);
      return;
    }
    const bins = scoreHistogram(this.scores.map((p) => p.score), 40);
    const maxCount = Math.max(...bins.map((b) => b.count));
    const barWidth = width / bins.length;
    ctx.fillStyle = "#1f77b4";
    bins.forEach((bin, i) => {
      const barHeight = maxCount === 0 ? 0 : (bin.count / maxCount) * (height - 14);
      ctx.fillRect(i * barWidth, height - barHeight, barWidth - 1, barHeight);
    });
    const tau = this.session.threshold;
    const top = Math.max(...this.scores.map((p) => p.score));
    if (tau !== null && top > 0) {
      const x = Math.min(tau / top, 1) * width;
      ctx.strokeStyle = "#d62728";
      ctx.beginPath();
      ctx.moveTo(x, 0);
      ctx.lineTo(x, height);
      ctx.stroke();
    }
  }

  private updatePreview(): void {
    const tau = this.session.threshold;
    const info = el<HTMLDivElement>("threshold-info");
    if (tau === null || this.scores.length === 0) {
      info.textContent = "";
      return;
    }
    const points = changePointsAbove(this.scores, tau);
    let text = `threshold ${tau}: ${points.length} change points -> ${points.length + 1} year intervals`;
    if (tau === 0) text += " (threshold 0 marks every frame; raise it above the noise floor)";
    info.textContent = text;
    this.readForm();
    const missing = this.session.missingFields();
    el<HTMLDivElement>("missing").textContent =
      missing.length > 0 ? `still needed: ${missing.join(", ")}` : "ready to export";
  }

  private readForm(): boolean {
    this.session.framesPath = el<HTMLInputElement>("frames-path").value.trim();
    this.session.label = el<HTMLInputElement>("label").value.trim();
    const start = el<HTMLInputElement>("start-year").value.trim();
    const end = el<HTMLInputElement>("end-year").value.trim();
    if (start !== "" && end !== "") {
      try {
        this.session.setYears(Number(start), Number(end));
      } catch (err) {
        this.say((err as Error).message);
        return false;
      }
    }
    this.session.hsvRange = Number(el<HTMLInputElement>("hsv-range").value) || 10;
    this.session.lowerSv = Number(el<HTMLInputElement>("lower-sv").value) || 0;
    this.session.upperSv = Number(el<HTMLInputElement>("upper-sv").value) || 255;
    this.session.minNeighbors = Number(el<HTMLInputElement>("min-neighbors").value) || 0;
    return true;
  }

  private exportDocument(): string | null {
    if (!this.readForm()) return null;
    const missing = this.session.missingFields();
    if (missing.length > 0) {
      this.say(`cannot export yet, missing: ${missing.join(", ")}`);
      return null;
    }
    return JSON.stringify(this.session.exportConfig(), null, 2);
  }

  private download(): void {
    const doc = this.exportDocument();
    if (!doc) return;
    const blob = new Blob([doc], { type: "application/json" });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = "config.json";
    link.click();
    URL.revokeObjectURL(link.href);
    this.say("config downloaded");
  }

  private async post(): Promise<void> {
    const doc = this.exportDocument();
    if (!doc) return;
    const result = await postConfig(JSON.parse(doc));
    this.say(result.ok ? "config accepted by the pipeline" : `rejected: ${result.errors.join("; ")}`);
  }

  private say(message: string): void {
    this.notice.textContent = message;
  }
}

new App().start().catch((err) => {
  document.body.insertAdjacentText("beforeend", `startup failed: ${err.message}`);
});

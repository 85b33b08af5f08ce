/** Typed wrappers over the calibration server's JSON API. */

export interface FrameMeta {
  frames: number;
  width: number;
  height: number;
  path?: string;
}

export interface ValidationResult {
  ok: boolean;
  errors: string[];
}

export async function fetchMeta(base = ""): Promise<FrameMeta> {
  const response = await fetch(`${base}/api/meta`);
  if (!response.ok) throw new Error(`meta request failed: ${response.status}`);
  return (await response.json()) as FrameMeta;
}

export function frameUrl(index: number, base = ""): string {
  return `${base}/api/frame/${index}`;
}

export async function fetchClockScoresCsv(base = ""): Promise<string> {
  const response = await fetch(`${base}/api/clock-scores`);
  if (!response.ok) throw new Error(`clock scores request failed: ${response.status}`);
  return response.text();
}

export async function postConfig(doc: unknown, base = ""): Promise<ValidationResult> {
  const response = await fetch(`${base}/api/config`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(doc),
  });
  return (await response.json()) as ValidationResult;
}

import assert from "node:assert/strict";
import { test } from "node:test";

import {
  CalibrationSession,
  changePointsAbove,
  displayToPixel,
  normalizeRect,
  parseScoresCsv,
  scoreHistogram,
} from "../src/session.js";

test("rect normalization is click-order independent", () => {
  const ab = normalizeRect([220, 180], [300, 230]);
  const ba = normalizeRect([300, 230], [220, 180]);
  assert.deepEqual(ab, ba);
  assert.deepEqual(ab, { x0: 220, y0: 180, x1: 300, y1: 230 });
});

test("mixed corners normalize to min/max per axis", () => {
  assert.deepEqual(normalizeRect([300, 180], [220, 230]), { x0: 220, y0: 180, x1: 300, y1: 230 });
});

test("zoomed clicks floor back to original pixels", () => {
  assert.deepEqual(displayToPixel(13, 7, 2), [6, 3]);
  assert.deepEqual(displayToPixel(13.9, 7.2, 2), [6, 3]);
  assert.deepEqual(displayToPixel(5, 9, 1), [5, 9]);
});

test("region commits after exactly two clicks", () => {
  const session = new CalibrationSession(320, 240);
  const first = session.clickRegion("clock", 300, 230);
  assert.equal(first.committed, null);
  assert.deepEqual(session.pendingCorner("clock"), [300, 230]);
  const second = session.clickRegion("clock", 220, 180);
  assert.deepEqual(second.committed, { x0: 220, y0: 180, x1: 300, y1: 230 });
  assert.equal(session.pendingCorner("clock"), null);
});

test("identical second corner is refused, pending kept", () => {
  const session = new CalibrationSession(320, 240);
  session.clickRegion("water", 10, 10);
  const outcome = session.clickRegion("water", 10, 10);
  assert.equal(outcome.committed, null);
  assert.match(outcome.notice ?? "", /differ/);
  assert.deepEqual(session.pendingCorner("water"), [10, 10]);
});

test("out-of-frame region click is ignored with a notice", () => {
  const session = new CalibrationSession(320, 240);
  const outcome = session.clickRegion("clock", 320, 10);
  assert.equal(outcome.committed, null);
  assert.match(outcome.notice ?? "", /outside/);
  assert.equal(session.pendingCorner("clock"), null);
});

test("seed sampling dedups exact colors", () => {
  const session = new CalibrationSession(320, 240);
  assert.equal(session.sampleSeed(8, 8, [47, 170, 235]).added, true);
  const dup = session.sampleSeed(9, 8, [47, 170, 235]);
  assert.equal(dup.added, false);
  assert.equal(dup.duplicate, true);
  assert.equal(session.seeds.length, 1);
});

test("out-of-frame sample is ignored", () => {
  const session = new CalibrationSession(320, 240);
  const outcome = session.sampleSeed(-1, 0, [1, 2, 3]);
  assert.equal(outcome.added, false);
  assert.equal(session.seeds.length, 0);
});

test("missing fields itemized until everything is committed", () => {
  const session = new CalibrationSession(320, 240);
  assert.deepEqual(session.missingFields(), [
    "frames path",
    "clock region",
    "at least one territory seed",
    "year span",
    "label",
  ]);
  session.framesPath = "/tmp/frames";
  session.clickRegion("clock", 220, 180);
  session.clickRegion("clock", 300, 230);
  session.sampleSeed(8, 8, [47, 170, 235]);
  session.setYears(0, 11);
  session.label = "demo";
  assert.deepEqual(session.missingFields(), []);
});

test("export blocked while fields are missing", () => {
  const session = new CalibrationSession(320, 240);
  assert.throws(() => session.exportConfig(), /missing: frames path, clock region/);
});

test("export produces the loader schema", () => {
  const session = new CalibrationSession(320, 240, "/tmp/frames");
  session.clickRegion("clock", 300, 230);
  session.clickRegion("clock", 220, 180);
  session.clickRegion("water", 230, 20);
  session.clickRegion("water", 290, 70);
  session.sampleSeed(8, 8, [47, 170, 235]);
  session.sampleSeed(8, 9, [103, 207, 254]);
  session.sampleSeed(250, 40, [49, 135, 235], "water");
  session.setThreshold(50000);
  session.setYears(0, 11);
  session.label = "demo";

  const doc = session.exportConfig();
  assert.deepEqual(doc.clock_region, [220, 180, 300, 230]);
  assert.deepEqual(doc.water_region, [230, 20, 290, 70]);
  assert.equal(doc.map_region, null);
  assert.deepEqual(doc.territory_seed.seeds, [
    [47, 170, 235],
    [103, 207, 254],
  ]);
  assert.deepEqual(doc.water_seed?.seeds, [[49, 135, 235]]);
  assert.equal(doc.territory_seed.hsv_range, 10);
  assert.equal(doc.territory_seed.lower_sv, 100);
  assert.equal(doc.territory_seed.upper_sv, 255);
  assert.equal(doc.clock_threshold, 50000);
  assert.equal(doc.min_neighbors, 5);
  assert.deepEqual(doc.restrictions, []);
  assert.equal(doc.start_year, 0);
  assert.equal(doc.end_year, 11);
});

test("year validation", () => {
  const session = new CalibrationSession(10, 10);
  assert.throws(() => session.setYears(1279, 960), /exceeds/);
  assert.throws(() => session.setYears(0.5, 2), /integers/);
  session.setYears(-199, 1912); // BCE is a negative year
  assert.equal(session.startYear, -199);
});

test("scores csv parsing", () => {
  const points = parseScoresCsv("t,score\n1,120\n2,80000\n3,95\n");
  assert.deepEqual(points, [
    { t: 1, score: 120 },
    { t: 2, score: 80000 },
    { t: 3, score: 95 },
  ]);
});

test("histogram bins mirror the pipeline convention", () => {
  const bins = scoreHistogram([0, 0, 100], 2);
  assert.deepEqual(bins, [
    { lo: 0, hi: 50, count: 2 },
    { lo: 50, hi: 100, count: 1 },
  ]);
});

test("histogram of identical scores occupies one bin", () => {
  const bins = scoreHistogram([7, 7, 7], 4);
  const occupied = bins.filter((b) => b.count > 0);
  assert.equal(occupied.length, 1);
  assert.equal(occupied[0].count, 3);
});

test("change point preview uses a strict threshold", () => {
  const points = parseScoresCsv("t,score\n1,100\n2,50000\n3,50001\n");
  assert.deepEqual(changePointsAbove(points, 50000), [3]);
  assert.deepEqual(changePointsAbove(points, 0), [1, 2, 3]);
  assert.equal(changePointsAbove(points, 99999).length, 0);
});

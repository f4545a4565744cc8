// Figure renderers for the solver artifacts. One kind per panel family:
// signal overlays, beta-inverse stems, credible bands, and image grids.

import * as fs from "node:fs";
import * as path from "node:path";
import { BandSeries, parseCsv, readBand, readVector, SchemaError, VectorSeries } from "./csv.js";
import { readPgm } from "./pgm.js";
import { encodePng } from "./png.js";
import { Canvas, TEXT_HEIGHT } from "./raster.js";
import { Rgb, STYLE } from "./style.js";

export const KINDS = ["overlay-1d", "beta-inv", "band-1d", "image-grid"] as const;

export interface FigureSpec {
  kind: string;
  inputs: string[];
  output: string;
  labels: string[];
}

export function renderFigure(spec: FigureSpec): Buffer {
  if (spec.inputs.length === 0) {
    throw new UsageError("figure spec needs at least one input");
  }
  switch (spec.kind) {
    case "overlay-1d":
      return renderOverlay(spec);
    case "beta-inv":
      return renderBetaInv(spec);
    case "band-1d":
      return renderBand(spec);
    case "image-grid":
      return renderImageGrid(spec);
    default:
      throw new UsageError(`unknown figure kind ${JSON.stringify(spec.kind)}; expected one of ${KINDS.join(", ")}`);
  }
}

export class UsageError extends Error {}

function loadVector(file: string): VectorSeries {
  return readVector(parseCsv(fs.readFileSync(file, "utf8"), file));
}

function title(spec: FigureSpec): string {
  return spec.labels.length > 0 ? spec.labels[0] : "";
}

function caption(spec: FigureSpec, i: number): string {
  return spec.labels.length > i + 1 ? spec.labels[i + 1] : path.basename(spec.inputs[i]);
}

// Axis scaffolding shared by the 1-D kinds.

interface Axes {
  x0: number;
  y0: number;
  w: number;
  h: number;
  tMin: number;
  tMax: number;
  vMin: number;
  vMax: number;
  px(t: number): number;
  py(v: number): number;
}

function makeAxes(canvas: Canvas, tMin: number, tMax: number, vMin: number, vMax: number): Axes {
  if (tMax <= tMin) {
    tMax = tMin + 1;
  }
  if (vMax <= vMin) {
    const pad = Math.max(1, Math.abs(vMin));
    vMin -= pad;
    vMax += pad;
  } else {
    const pad = 0.05 * (vMax - vMin);
    vMin -= pad;
    vMax += pad;
  }
  const x0 = STYLE.marginLeft;
  const y0 = STYLE.marginTop;
  const w = canvas.width - STYLE.marginLeft - STYLE.marginRight;
  const h = canvas.height - STYLE.marginTop - STYLE.marginBottom;
  return {
    x0,
    y0,
    w,
    h,
    tMin,
    tMax,
    vMin,
    vMax,
    px: (t) => x0 + ((t - tMin) / (tMax - tMin)) * (w - 1),
    py: (v) => y0 + ((vMax - v) / (vMax - vMin)) * (h - 1),
  };
}

function niceStep(range: number, count: number): number {
  const rough = range / Math.max(1, count);
  const mag = Math.pow(10, Math.floor(Math.log10(rough)));
  const norm = rough / mag;
  const nice = norm < 1.5 ? 1 : norm < 3.5 ? 2 : norm < 7.5 ? 5 : 10;
  return nice * mag;
}

function formatTick(v: number, step: number): string {
  if (v !== 0 && (Math.abs(v) >= 1e4 || Math.abs(v) < 1e-3)) {
    return v.toExponential(1);
  }
  const decimals = Math.max(0, Math.min(6, -Math.floor(Math.log10(step))));
  return v.toFixed(decimals);
}

function drawFrame(canvas: Canvas, ax: Axes, heading: string) {
  // Gridlines and ticks first, frame and labels on top.
  const vStep = niceStep(ax.vMax - ax.vMin, STYLE.tickCount);
  for (let v = Math.ceil(ax.vMin / vStep) * vStep; v <= ax.vMax + 1e-12 * vStep; v += vStep) {
    const y = Math.round(ax.py(v));
    canvas.hline(y, ax.x0, ax.x0 + ax.w - 1, STYLE.grid);
    const label = formatTick(v, vStep);
    canvas.text(ax.x0 - STYLE.tickLength - 2 - canvas.textWidth(label), y - Math.floor(TEXT_HEIGHT / 2), label, STYLE.text);
    canvas.hline(y, ax.x0 - STYLE.tickLength, ax.x0 - 1, STYLE.frame);
  }
  const tStep = niceStep(ax.tMax - ax.tMin, STYLE.tickCount);
  for (let t = Math.ceil(ax.tMin / tStep) * tStep; t <= ax.tMax + 1e-12 * tStep; t += tStep) {
    const x = Math.round(ax.px(t));
    canvas.vline(x, ax.y0, ax.y0 + ax.h - 1, STYLE.grid);
    const label = formatTick(t, tStep);
    canvas.text(x - Math.floor(canvas.textWidth(label) / 2), ax.y0 + ax.h + STYLE.tickLength + 2, label, STYLE.text);
    canvas.vline(x, ax.y0 + ax.h, ax.y0 + ax.h + STYLE.tickLength - 1, STYLE.frame);
  }
  canvas.hline(ax.y0, ax.x0, ax.x0 + ax.w - 1, STYLE.frame);
  canvas.hline(ax.y0 + ax.h - 1, ax.x0, ax.x0 + ax.w - 1, STYLE.frame);
  canvas.vline(ax.x0, ax.y0, ax.y0 + ax.h - 1, STYLE.frame);
  canvas.vline(ax.x0 + ax.w - 1, ax.y0, ax.y0 + ax.h - 1, STYLE.frame);
  if (heading) {
    canvas.text(ax.x0 + Math.floor((ax.w - canvas.textWidth(heading)) / 2), Math.floor((STYLE.marginTop - TEXT_HEIGHT) / 2) + 2, heading, STYLE.text);
  }
}

function drawLegend(canvas: Canvas, ax: Axes, entries: { label: string; color: Rgb }[]) {
  if (entries.length === 0) {
    return;
  }
  const lineSample = 16;
  let boxW = 0;
  for (const e of entries) {
    boxW = Math.max(boxW, lineSample + 6 + canvas.textWidth(e.label));
  }
  const rowH = TEXT_HEIGHT + 2;
  const boxH = entries.length * rowH + 6;
  const bx = ax.x0 + ax.w - boxW - 14;
  const by = ax.y0 + 8;
  canvas.fillRect(bx - 4, by - 4, boxW + 8, boxH, STYLE.background);
  for (let i = 0; i < entries.length; i++) {
    const ey = by + i * rowH;
    canvas.hline(ey + Math.floor(TEXT_HEIGHT / 2), bx, bx + lineSample, entries[i].color);
    canvas.text(bx + lineSample + 6, ey, entries[i].label, STYLE.text);
  }
}

function seriesColor(i: number): Rgb {
  return STYLE.series[i % STYLE.series.length];
}

// Kind: overlay-1d. Each input is a vector CSV; series share axes.

function renderOverlay(spec: FigureSpec): Buffer {
  const series = spec.inputs.map(loadVector);
  const canvas = new Canvas(STYLE.plotWidth, STYLE.plotHeight, STYLE.background);
  let tMin = Infinity;
  let tMax = -Infinity;
  let vMin = Infinity;
  let vMax = -Infinity;
  for (const s of series) {
    for (const t of s.t) {
      tMin = Math.min(tMin, t);
      tMax = Math.max(tMax, t);
    }
    for (const v of s.value) {
      vMin = Math.min(vMin, v);
      vMax = Math.max(vMax, v);
    }
  }
  const ax = makeAxes(canvas, tMin, tMax, vMin, vMax);
  drawFrame(canvas, ax, title(spec));
  series.forEach((s, i) => {
    canvas.polyline(s.t.map(ax.px), s.value.map(ax.py), seriesColor(i));
  });
  drawLegend(canvas, ax, series.map((_, i) => ({ label: caption(spec, i), color: seriesColor(i) })));
  return encodePng(canvas.width, canvas.height, canvas.data);
}

// Kind: beta-inv. Stem plot of one vector against a zero baseline.

function renderBetaInv(spec: FigureSpec): Buffer {
  const s = loadVector(spec.inputs[0]);
  const canvas = new Canvas(STYLE.plotWidth, STYLE.plotHeight, STYLE.background);
  const vMin = Math.min(0, ...s.value);
  const vMax = Math.max(0, ...s.value);
  const ax = makeAxes(canvas, Math.min(...s.t), Math.max(...s.t), vMin, vMax);
  drawFrame(canvas, ax, title(spec));
  const base = Math.round(ax.py(0));
  canvas.hline(base, ax.x0, ax.x0 + ax.w - 1, STYLE.frame);
  for (let i = 0; i < s.t.length; i++) {
    const x = Math.round(ax.px(s.t[i]));
    const y = Math.round(ax.py(s.value[i]));
    canvas.vline(x, base, y, STYLE.stem);
    canvas.fillRect(x - 1, y - 1, 3, 3, STYLE.marker);
  }
  return encodePng(canvas.width, canvas.height, canvas.data);
}

// Kind: band-1d. First input is a band CSV (mean, lower, upper); further
// inputs are vector overlays drawn on top of the filled band.

function renderBand(spec: FigureSpec): Buffer {
  const band = readBand(parseCsv(fs.readFileSync(spec.inputs[0], "utf8"), spec.inputs[0]));
  const overlays = spec.inputs.slice(1).map(loadVector);
  const canvas = new Canvas(STYLE.plotWidth, STYLE.plotHeight, STYLE.background);
  let vMin = Math.min(...band.lower);
  let vMax = Math.max(...band.upper);
  let tMin = Math.min(...band.t);
  let tMax = Math.max(...band.t);
  for (const s of overlays) {
    vMin = Math.min(vMin, ...s.value);
    vMax = Math.max(vMax, ...s.value);
    tMin = Math.min(tMin, ...s.t);
    tMax = Math.max(tMax, ...s.t);
  }
  const ax = makeAxes(canvas, tMin, tMax, vMin, vMax);
  fillBand(canvas, ax, band);
  drawFrame(canvas, ax, title(spec));
  canvas.polyline(band.t.map(ax.px), band.mean.map(ax.py), STYLE.bandMean);
  overlays.forEach((s, i) => {
    canvas.polyline(s.t.map(ax.px), s.value.map(ax.py), seriesColor(i + 1));
  });
  const entries = [{ label: caption(spec, 0), color: STYLE.bandMean }];
  overlays.forEach((_, i) => entries.push({ label: caption(spec, i + 1), color: seriesColor(i + 1) }));
  drawLegend(canvas, ax, entries);
  return encodePng(canvas.width, canvas.height, canvas.data);
}

function fillBand(canvas: Canvas, ax: Axes, band: BandSeries) {
  // Fill a vertical span per pixel column, interpolating the envelopes.
  const first = Math.round(ax.px(band.t[0]));
  const last = Math.round(ax.px(band.t[band.t.length - 1]));
  for (let x = first; x <= last; x++) {
    const t = ax.tMin + ((x - ax.x0) / (ax.w - 1)) * (ax.tMax - ax.tMin);
    const lo = interp(band.t, band.lower, t);
    const hi = interp(band.t, band.upper, t);
    canvas.vline(x, Math.round(ax.py(hi)), Math.round(ax.py(lo)), STYLE.bandFill);
  }
}

function interp(ts: number[], vs: number[], t: number): number {
  if (t <= ts[0]) {
    return vs[0];
  }
  if (t >= ts[ts.length - 1]) {
    return vs[vs.length - 1];
  }
  let lo = 0;
  let hi = ts.length - 1;
  while (hi - lo > 1) {
    const mid = (lo + hi) >> 1;
    if (ts[mid] <= t) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const w = (t - ts[lo]) / (ts[hi] - ts[lo]);
  return vs[lo] + w * (vs[hi] - vs[lo]);
}

// Kind: image-grid. Each input is a PGM; panels fill a fixed-column grid
// with integer nearest-neighbour upscaling and a caption per panel.

function renderImageGrid(spec: FigureSpec): Buffer {
  const images = spec.inputs.map(readPgm);
  const scale = STYLE.imageScale;
  const pad = STYLE.imagePad;
  const columns = Math.min(STYLE.imageColumns, images.length);
  const gridRows = Math.ceil(images.length / columns);
  const panelW = Math.max(...images.map((im) => im.cols)) * scale;
  const panelH = Math.max(...images.map((im) => im.rows)) * scale;
  const titleH = title(spec) ? TEXT_HEIGHT + pad : 0;
  const width = columns * panelW + (columns + 1) * pad;
  const height = titleH + gridRows * (panelH + STYLE.captionHeight + pad) + pad;
  const canvas = new Canvas(width, height, STYLE.background);
  if (title(spec)) {
    canvas.text(Math.floor((width - canvas.textWidth(title(spec))) / 2), pad, title(spec), STYLE.text);
  }
  images.forEach((im, i) => {
    const col = i % columns;
    const row = Math.floor(i / columns);
    const ox = pad + col * (panelW + pad);
    const oy = titleH + pad + row * (panelH + STYLE.captionHeight + pad);
    for (let y = 0; y < im.rows; y++) {
      for (let x = 0; x < im.cols; x++) {
        const g = Math.round((im.data[y * im.cols + x] / 65535) * 255);
        canvas.fillRect(ox + x * scale, oy + y * scale, scale, scale, [g, g, g]);
      }
    }
    const label = caption(spec, i);
    canvas.text(ox + Math.floor((im.cols * scale - canvas.textWidth(label)) / 2), oy + im.rows * scale + 3, label, STYLE.text);
  });
  return encodePng(canvas.width, canvas.height, canvas.data);
}

export { SchemaError };

// Reader for the 16-bit binary PGM images the solver CLI emits, together
// with the JSON sidecar that records the physical value range and shape.

import * as fs from "node:fs";
import { SchemaError } from "./csv.js";

export interface PgmImage {
  rows: number;
  cols: number;
  // Row-major samples in 0..65535.
  data: Uint16Array;
  // Physical range from the sidecar; sample 0 maps to min, 65535 to max.
  min: number;
  max: number;
}

export function parsePgm(buf: Buffer, file: string): { rows: number; cols: number; data: Uint16Array } {
  const headerEnd = findHeaderEnd(buf, file);
  const header = buf.subarray(0, headerEnd).toString("ascii");
  const fields = header.trim().split(/\s+/);
  if (fields.length !== 4 || fields[0] !== "P5") {
    throw new SchemaError(file, 1, null, `expected header "P5 <cols> <rows> <maxval>", found ${JSON.stringify(header)}`);
  }
  const cols = Number(fields[1]);
  const rows = Number(fields[2]);
  const maxval = Number(fields[3]);
  if (!Number.isInteger(cols) || !Number.isInteger(rows) || cols <= 0 || rows <= 0) {
    throw new SchemaError(file, 1, null, `bad dimensions ${fields[1]} x ${fields[2]}`);
  }
  if (maxval !== 65535) {
    throw new SchemaError(file, 1, null, `expected maxval 65535, found ${fields[3]}`);
  }
  const expected = rows * cols * 2;
  const payload = buf.subarray(headerEnd);
  if (payload.length !== expected) {
    throw new SchemaError(file, null, null, `expected ${expected} payload bytes, found ${payload.length}`);
  }
  const data = new Uint16Array(rows * cols);
  for (let i = 0; i < data.length; i++) {
    data[i] = payload.readUInt16BE(2 * i);
  }
  return { rows, cols, data };
}

function findHeaderEnd(buf: Buffer, file: string): number {
  // Header is three whitespace-terminated lines: magic, dimensions, maxval.
  let newlines = 0;
  for (let i = 0; i < buf.length; i++) {
    if (buf[i] === 0x0a) {
      newlines += 1;
      if (newlines === 3) {
        return i + 1;
      }
    }
  }
  throw new SchemaError(file, null, null, "truncated header");
}

export function readPgm(path: string): PgmImage {
  const { rows, cols, data } = parsePgm(fs.readFileSync(path), path);
  const sidecarPath = path + ".json";
  let sidecar: any;
  try {
    sidecar = JSON.parse(fs.readFileSync(sidecarPath, "utf8"));
  } catch (err: any) {
    if (err && err.code === "ENOENT") {
      throw new SchemaError(sidecarPath, null, null, "missing sidecar");
    }
    throw new SchemaError(sidecarPath, null, null, `bad JSON: ${err.message}`);
  }
  for (const key of ["min", "max", "rows", "cols"]) {
    if (typeof sidecar[key] !== "number") {
      throw new SchemaError(sidecarPath, null, key, "missing numeric field");
    }
  }
  if (sidecar.rows !== rows || sidecar.cols !== cols) {
    throw new SchemaError(sidecarPath, null, null, `sidecar shape ${sidecar.rows}x${sidecar.cols} does not match image ${rows}x${cols}`);
  }
  return { rows, cols, data, min: sidecar.min, max: sidecar.max };
}

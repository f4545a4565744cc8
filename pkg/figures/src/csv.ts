// Strict CSV reader for the solver artifacts: comma-separated, one header
// row, no quoting. Cells are kept as raw text so a parse/serialize round
// trip is bit-identical, which is what the dump mode relies on.

export class SchemaError extends Error {
  file: string;
  row: number | null;
  column: string | null;

  constructor(file: string, row: number | null, column: string | null, detail: string) {
    const where = [file, row === null ? null : `row ${row}`, column === null ? null : `column ${column}`]
      .filter((p) => p !== null)
      .join(", ");
    super(`${where}: ${detail}`);
    this.file = file;
    this.row = row;
    this.column = column;
  }
}

export interface CsvTable {
  file: string;
  header: string[];
  rows: string[][];
  trailingNewline: boolean;
}

export function parseCsv(text: string, file: string): CsvTable {
  if (text.length === 0) {
    throw new SchemaError(file, null, null, "empty file");
  }
  const trailingNewline = text.endsWith("\n");
  const body = trailingNewline ? text.slice(0, -1) : text;
  const lines = body.split("\n");
  const header = lines[0].split(",");
  if (header.length < 2) {
    throw new SchemaError(file, 1, null, "header must list at least two columns");
  }
  const rows = [] as string[][];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== header.length) {
      throw new SchemaError(file, i + 1, null, `expected ${header.length} cells, found ${cells.length}`);
    }
    rows.push(cells);
  }
  return { file, header, rows, trailingNewline };
}

export function serializeCsv(table: CsvTable): string {
  const lines = [table.header.join(",")];
  for (const row of table.rows) {
    lines.push(row.join(","));
  }
  return lines.join("\n") + (table.trailingNewline ? "\n" : "");
}

export function columnIndex(table: CsvTable, name: string): number {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new SchemaError(table.file, 1, name, "missing column");
  }
  return idx;
}

export function numericColumn(table: CsvTable, name: string): number[] {
  const idx = columnIndex(table, name);
  const out = [] as number[];
  for (let i = 0; i < table.rows.length; i++) {
    const cell = table.rows[i][idx];
    const value = Number(cell);
    if (cell.trim() === "" || !Number.isFinite(value)) {
      throw new SchemaError(table.file, i + 2, name, `not a finite number: ${JSON.stringify(cell)}`);
    }
    out.push(value);
  }
  return out;
}

// Vector artifacts come in two shapes: index,t,value on a 1-D grid and
// index,value for flattened images. The abscissa falls back to the index.
export interface VectorSeries {
  t: number[];
  value: number[];
}

export function readVector(table: CsvTable): VectorSeries {
  const value = numericColumn(table, "value");
  const t = table.header.includes("t") ? numericColumn(table, "t") : numericColumn(table, "index");
  return { t, value };
}

export interface BandSeries {
  t: number[];
  mean: number[];
  lower: number[];
  upper: number[];
}

export function readBand(table: CsvTable): BandSeries {
  const mean = numericColumn(table, "mean");
  const lower = numericColumn(table, "lower");
  const upper = numericColumn(table, "upper");
  const t = table.header.includes("t") ? numericColumn(table, "t") : numericColumn(table, "index");
  return { t, mean, lower, upper };
}

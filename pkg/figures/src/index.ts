export { CsvTable, numericColumn, parseCsv, readBand, readVector, SchemaError, serializeCsv } from "./csv.js";
export { FigureSpec, KINDS, renderFigure, UsageError } from "./figures.js";
export { parsePgm, PgmImage, readPgm } from "./pgm.js";
export { crc32, encodePng } from "./png.js";
export { Canvas } from "./raster.js";
export { STYLE } from "./style.js";

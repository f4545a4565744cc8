// Command line entry point.
//
//   figures render --spec figure.json
//   figures render --kind overlay-1d --input a.csv --input b.csv \
//       --output fig.png --label "title" --label "series a" --label "series b"
//   figures dump artifact.csv [--out copy.csv]
//
// Exit codes: 0 success, 1 usage, 2 schema mismatch, 3 I/O failure.

import * as fs from "node:fs";
import * as path from "node:path";
import { parseArgs } from "node:util";
import { parseCsv, SchemaError, serializeCsv } from "./csv.js";
import { FigureSpec, KINDS, renderFigure, UsageError } from "./figures.js";

const USAGE = `usage:
  figures render --spec SPEC.json
  figures render --kind KIND --input PATH [--input PATH ...] --output PATH [--label TEXT ...]
  figures dump INPUT.csv [--out PATH]

kinds: ${KINDS.join(", ")}
labels: the first label is the figure title, the rest caption the inputs in order.`;

export function main(argv: string[]): number {
  const command = argv[0];
  try {
    if (command === "render") {
      return runRender(argv.slice(1));
    }
    if (command === "dump") {
      return runDump(argv.slice(1));
    }
    process.stderr.write(USAGE + "\n");
    return 1;
  } catch (err: any) {
    if (err instanceof SchemaError) {
      process.stderr.write(`schema error: ${err.message}\n`);
      return 2;
    }
    if (err instanceof UsageError || err.code === "ERR_PARSE_ARGS_UNKNOWN_OPTION") {
      process.stderr.write(`error: ${err.message}\n${USAGE}\n`);
      return 1;
    }
    process.stderr.write(`io error: ${err.message}\n`);
    return 3;
  }
}

function runRender(args: string[]): number {
  const parsed = parseArgs({
    args,
    options: {
      spec: { type: "string" },
      kind: { type: "string" },
      input: { type: "string", multiple: true },
      output: { type: "string" },
      label: { type: "string", multiple: true },
    },
    allowPositionals: false,
  });
  const values = parsed.values;

  let specs: FigureSpec[];
  if (values.spec !== undefined) {
    if (values.kind || values.input || values.output || values.label) {
      throw new UsageError("--spec cannot be combined with --kind/--input/--output/--label");
    }
    specs = loadSpecs(values.spec);
  } else {
    if (!values.kind || !values.input || values.input.length === 0 || !values.output) {
      throw new UsageError("render needs --spec, or --kind with --input and --output");
    }
    specs = [{ kind: values.kind, inputs: values.input, output: values.output, labels: values.label ?? [] }];
  }

  for (const spec of specs) {
    const png = renderFigure(spec);
    fs.mkdirSync(path.dirname(path.resolve(spec.output)), { recursive: true });
    fs.writeFileSync(spec.output, png);
    process.stderr.write(`wrote ${spec.output}\n`);
  }
  return 0;
}

function loadSpecs(specPath: string): FigureSpec[] {
  let doc: any;
  try {
    doc = JSON.parse(fs.readFileSync(specPath, "utf8"));
  } catch (err: any) {
    if (err instanceof SyntaxError) {
      throw new UsageError(`${specPath}: bad JSON: ${err.message}`);
    }
    throw err;
  }
  const items = Array.isArray(doc) ? doc : [doc];
  const baseDir = path.dirname(specPath);
  return items.map((item, i) => {
    for (const key of ["kind", "inputs", "output"]) {
      if (!(key in item)) {
        throw new UsageError(`${specPath}: spec ${i} is missing ${JSON.stringify(key)}`);
      }
    }
    // Paths in a spec file resolve relative to the file itself.
    return {
      kind: String(item.kind),
      inputs: (item.inputs as string[]).map((p) => path.resolve(baseDir, p)),
      output: path.resolve(baseDir, String(item.output)),
      labels: (item.labels as string[] | undefined) ?? [],
    };
  });
}

function runDump(args: string[]): number {
  const parsed = parseArgs({
    args,
    options: { out: { type: "string" } },
    allowPositionals: true,
  });
  if (parsed.positionals.length !== 1) {
    throw new UsageError("dump takes exactly one input CSV");
  }
  const input = parsed.positionals[0];
  const text = serializeCsv(parseCsv(fs.readFileSync(input, "utf8"), input));
  if (parsed.values.out !== undefined) {
    fs.writeFileSync(parsed.values.out, text);
  } else {
    process.stdout.write(text);
  }
  return 0;
}

#!/usr/bin/env node
/**
 * Figure renderer for the simulation CSVs.
 *
 *   xyquench-figs render --spec figure.json [--out path.svg] [--dump-plotdata]
 *   xyquench-figs fig2 [--csv-dir DIR] [--out-dir DIR] [--dump-plotdata]
 *   ... likewise fig3..fig8 for the bundled scan presets.
 *
 * --dump-plotdata prints exactly the plotted CSV columns to stdout instead
 * of writing an image.
 */

import { parseArgs } from "node:util";

import { CsvError } from "./csv.js";
import { FIGURE_NAMES, FigureName, figureSpec } from "./figures.js";
import { dumpPlotdata, render } from "./render.js";
import { loadSpec } from "./spec.js";

export function main(argv: string[]): number {
  const [command, ...rest] = argv;
  if (!command || command === "--help" || command === "-h") {
    console.log("usage: xyquench-figs {render --spec PATH | fig2..fig8} [--dump-plotdata]");
    return command ? 0 : 2;
  }
  let parsed;
  try {
    parsed = parseArgs({
      args: rest,
      options: {
        spec: { type: "string" },
        out: { type: "string" },
        "csv-dir": { type: "string" },
        "out-dir": { type: "string" },
        "dump-plotdata": { type: "boolean", default: false },
      },
    });
  } catch (err) {
    console.error((err as Error).message);
    return 2;
  }
  const opts = parsed.values;
  try {
    let spec;
    if (command === "render") {
      if (!opts.spec) {
        console.error("render needs --spec PATH");
        return 2;
      }
      try {
        spec = loadSpec(opts.spec);
      } catch (err) {
        console.error(`invalid figure spec ${opts.spec}: ${(err as Error).message}`);
        return 2;
      }
    } else if ((FIGURE_NAMES as readonly string[]).includes(command)) {
      spec = figureSpec(command as FigureName, opts["csv-dir"] ?? ".", opts["out-dir"] ?? ".");
    } else {
      console.error(`unknown command '${command}'`);
      return 2;
    }
    if (opts.out) spec = { ...spec, out: opts.out };
    if (opts["dump-plotdata"]) {
      process.stdout.write(dumpPlotdata(spec, (m) => console.warn(m)));
      return 0;
    }
    const result = render(spec);
    console.log(`${result.out} (${result.panels} panels, ${result.skippedRows} rows skipped)`);
    return 0;
  } catch (err) {
    if (err instanceof CsvError) {
      console.error(err.message);
      return 1;
    }
    throw err;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url.endsWith(process.argv[1].split("/").pop()!);
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}

#!/usr/bin/env node
/** plotgen: render a benchmark summary CSV into one figure with error bars. */

import { readFileSync, realpathSync } from "node:fs";
import { pathToFileURL } from "node:url";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { MissingColumnError, parseSummaryCsv } from "./csv.js";
import { Metric, renderFamilyFigure } from "./figure.js";

export function run(argv: string[]): number {
  const args = yargs(argv)
    .scriptName("plotgen")
    .option("summary", { type: "string", demandOption: true, describe: "summary CSV path" })
    .option("family", { type: "string", demandOption: true, describe: "generator family to plot" })
    .option("metric", {
      choices: ["interventions", "time"] as const,
      demandOption: true,
      describe: "which metric to plot",
    })
    .option("out", { type: "string", demandOption: true, describe: "output image path (.svg)" })
    .option("algorithms", {
      type: "string",
      describe: "comma-separated legend order (optional)",
    })
    .strict()
    .exitProcess(false)
    .parseSync();

  let text: string;
  try {
    text = readFileSync(args.summary, "utf-8");
  } catch (err) {
    console.error(`plotgen: cannot read ${args.summary}: ${(err as Error).message}`);
    return 1;
  }
  let rows;
  try {
    rows = parseSummaryCsv(text);
  } catch (err) {
    if (err instanceof MissingColumnError) {
      console.error(`plotgen: ${err.message}`);
      return 1;
    }
    console.error(`plotgen: malformed summary CSV: ${(err as Error).message}`);
    return 1;
  }
  const result = renderFamilyFigure({
    rows,
    family: args.family,
    metric: args.metric as Metric,
    outPath: args.out,
    algorithmOrder: args.algorithms?.split(",").map((s) => s.trim()),
  });
  if (result.warning) {
    console.warn(`plotgen: warning: ${result.warning}`);
  }
  console.log(`wrote ${result.svgPath} and ${result.sidecarPath}`);
  return 0;
}

const invokedDirectly = (() => {
  if (process.argv[1] === undefined) return false;
  try {
    // argv[1] may be a bin symlink; compare against the resolved file.
    return import.meta.url === pathToFileURL(realpathSync(process.argv[1])).href;
  } catch {
    return false;
  }
})();
if (invokedDirectly) {
  process.exit(run(hideBin(process.argv)));
}

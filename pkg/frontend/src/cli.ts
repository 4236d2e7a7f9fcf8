/**
 * Command line:  plot --from <dir-or-csv ...> --out <file.svg> [--logy]
 *
 * Consumes aggregate CSVs (schema: algo,t,mean_cum_regret,std_cum_regret,
 * n_trials) and writes one deterministic multi-panel SVG.
 */

import { statSync, writeFileSync } from "node:fs";

import { discoverAggregates, loadPanels } from "./plot.js";
import { renderFigure } from "./figure.js";

export interface CliArgs {
  from: string[];
  out: string;
  logy: boolean;
}

export function parseArgs(argv: string[]): CliArgs {
  if (argv[0] !== "plot") {
    throw new Error(`unknown command ${argv[0] ?? "<none>"}; expected "plot"`);
  }
  const args: CliArgs = { from: [], out: "", logy: false };
  for (let i = 1; i < argv.length; i++) {
    const token = argv[i];
    if (token === "--from") {
      args.from.push(argv[++i]);
    } else if (token === "--out") {
      args.out = argv[++i];
    } else if (token === "--logy") {
      args.logy = true;
    } else {
      throw new Error(`unknown argument ${token}`);
    }
  }
  if (args.from.length === 0 || args.from.some((f) => f === undefined)) {
    throw new Error("plot requires --from <dir-or-csv>");
  }
  if (!args.out) {
    throw new Error("plot requires --out <file.svg>");
  }
  return args;
}

export function run(argv: string[]): number {
  const args = parseArgs(argv);
  const paths: string[] = [];
  for (const source of args.from) {
    if (statSync(source).isDirectory()) {
      paths.push(...discoverAggregates(source));
    } else {
      paths.push(source);
    }
  }
  if (paths.length === 0) {
    throw new Error(`no aggregate CSVs found under ${args.from.join(", ")}`);
  }
  const svg = renderFigure(loadPanels(paths), { logy: args.logy });
  writeFileSync(args.out, svg);
  console.log(`wrote ${args.out} (${paths.length} panel${paths.length === 1 ? "" : "s"})`);
  return 0;
}

const entry = process.argv[1] ?? "";
if (entry.endsWith("cli.js") || entry.endsWith("cli.ts")) {
  try {
    process.exit(run(process.argv.slice(2)));
  } catch (err) {
    console.error(err instanceof Error ? err.message : String(err));
    process.exit(1);
  }
}

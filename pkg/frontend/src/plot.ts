/**
 * Discovery and assembly: find aggregate CSVs under a directory, parse them,
 * and render one panel per file into a single SVG figure.
 */

import { readdirSync, readFileSync, statSync } from "node:fs";
import { basename, dirname, join } from "node:path";

import { parseAggregateCsv } from "./csv.js";
import { FigureOptions, PanelSpec, renderFigure } from "./figure.js";

/** Recursively collect .csv files whose header matches the aggregate schema
 *  is checked later; discovery is by file name only, sorted for determinism. */
export function discoverAggregates(root: string): string[] {
  const found: string[] = [];
  const walk = (dir: string) => {
    for (const entry of readdirSync(dir).sort()) {
      const path = join(dir, entry);
      const st = statSync(path);
      if (st.isDirectory()) {
        walk(path);
      } else if (entry === "aggregate.csv" || entry.endsWith(".aggregate.csv")) {
        found.push(path);
      }
    }
  };
  walk(root);
  return found.sort();
}

export function panelTitle(path: string): string {
  const name = basename(path);
  if (name === "aggregate.csv") {
    return basename(dirname(path));
  }
  return name.replace(/\.aggregate\.csv$|\.csv$/, "");
}

export function loadPanels(paths: string[]): PanelSpec[] {
  return paths.map((path) => ({
    title: panelTitle(path),
    series: parseAggregateCsv(readFileSync(path, "utf8"), path),
  }));
}

export function renderFromDirectory(root: string, options: FigureOptions = {}): string {
  const paths = discoverAggregates(root);
  if (paths.length === 0) {
    throw new Error(`no aggregate CSVs found under ${root}`);
  }
  return renderFigure(loadPanels(paths), options);
}

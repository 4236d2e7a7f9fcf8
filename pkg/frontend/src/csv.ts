/**
 * Parsing for the harness's aggregate CSV schema:
 *
 *     algo,t,mean_cum_regret,std_cum_regret,n_trials
 *
 * One row per (algorithm, round); rows for one algorithm are expected in
 * ascending round order but are re-sorted defensively.
 */

export const AGGREGATE_COLUMNS = [
  "algo",
  "t",
  "mean_cum_regret",
  "std_cum_regret",
  "n_trials",
] as const;

export interface AggregatePoint {
  t: number;
  mean: number;
  std: number;
  nTrials: number;
}

export interface AggregateSeries {
  algo: string;
  points: AggregatePoint[];
}

export class SchemaError extends Error {}

/** Parse one aggregate CSV into per-algorithm series, sorted by name. */
export function parseAggregateCsv(text: string, source = "<string>"): AggregateSeries[] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new SchemaError(`${source}: empty file, expected an aggregate CSV header`);
  }
  const header = lines[0].split(",").map((h) => h.trim());
  for (const column of AGGREGATE_COLUMNS) {
    if (!header.includes(column)) {
      throw new SchemaError(`${source}: missing column "${column}" in header "${lines[0]}"`);
    }
  }
  const index = Object.fromEntries(header.map((name, i) => [name, i]));
  const byAlgo = new Map<string, AggregatePoint[]>();
  for (let lineno = 1; lineno < lines.length; lineno++) {
    const cells = lines[lineno].split(",");
    if (cells.length < header.length) {
      throw new SchemaError(
        `${source}:${lineno + 1}: expected ${header.length} cells, found ${cells.length}`,
      );
    }
    const algo = cells[index["algo"]];
    const point: AggregatePoint = {
      t: Number(cells[index["t"]]),
      mean: Number(cells[index["mean_cum_regret"]]),
      std: Number(cells[index["std_cum_regret"]]),
      nTrials: Number(cells[index["n_trials"]]),
    };
    if (!Number.isFinite(point.t) || !Number.isFinite(point.mean) || !Number.isFinite(point.std)) {
      throw new SchemaError(`${source}:${lineno + 1}: non-numeric value in "${lines[lineno]}"`);
    }
    const bucket = byAlgo.get(algo);
    if (bucket === undefined) {
      byAlgo.set(algo, [point]);
    } else {
      bucket.push(point);
    }
  }
  return [...byAlgo.entries()]
    .map(([algo, points]) => ({ algo, points: points.sort((a, b) => a.t - b.t) }))
    .sort((a, b) => (a.algo < b.algo ? -1 : a.algo > b.algo ? 1 : 0));
}

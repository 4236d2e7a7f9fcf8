/**
 * Deterministic SVG rendering of benchmark panels.
 *
 * Each panel draws, per algorithm, the mean cumulative-regret curve plus a
 * shaded band of half-width one empirical standard deviation. Panels sit in
 * a grid of up to three columns (six panels render as the 2 x 3 comparison
 * layout). Output depends only on the input series, so identical inputs
 * produce byte-identical SVG.
 */

import { AggregateSeries } from "./csv.js";

export interface PanelSpec {
  title: string;
  series: AggregateSeries[];
}

export interface FigureOptions {
  logy?: boolean;
  panelWidth?: number;
  panelHeight?: number;
  maxPointsPerCurve?: number;
}

const PALETTE = [
  "#0072b2", // blue
  "#d55e00", // vermillion
  "#009e73", // bluish green
  "#cc79a7", // reddish purple
  "#e69f00", // orange
  "#56b4e9", // sky blue
  "#f0e442", // yellow
  "#000000", // black
];

const MARGIN = { top: 34, right: 12, bottom: 40, left: 64 };

function fmt(value: number): string {
  if (!Number.isFinite(value)) {
    throw new Error(`non-finite coordinate ${value}`);
  }
  return Number(value.toPrecision(6)).toString();
}

function tickLabel(value: number): string {
  const abs = Math.abs(value);
  if (abs >= 10000 || (abs > 0 && abs < 0.01)) {
    return value.toExponential(0).replace("+", "");
  }
  return Number(value.toPrecision(4)).toString();
}

/** Evenly spaced "nice" ticks covering [lo, hi]. */
export function niceTicks(lo: number, hi: number, count = 5): number[] {
  if (!(hi > lo)) {
    return [lo];
  }
  const rawStep = (hi - lo) / Math.max(1, count - 1);
  const magnitude = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const candidates = [1, 2, 2.5, 5, 10].map((m) => m * magnitude);
  const step = candidates.find((c) => c >= rawStep) ?? candidates[candidates.length - 1];
  const start = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = start; v <= hi + 1e-9 * step; v += step) {
    ticks.push(Math.abs(v) < 1e-12 * step ? 0 : v);
  }
  return ticks;
}

/** Deterministic stride subsample that always keeps the final point. */
export function subsample<T>(points: T[], maxPoints: number): T[] {
  if (points.length <= maxPoints) {
    return points;
  }
  const stride = Math.ceil(points.length / maxPoints);
  const out: T[] = [];
  for (let i = 0; i < points.length; i += stride) {
    out.push(points[i]);
  }
  if (out[out.length - 1] !== points[points.length - 1]) {
    out.push(points[points.length - 1]);
  }
  return out;
}

export function colorFor(algo: string, allAlgos: string[]): string {
  const idx = allAlgos.indexOf(algo);
  return PALETTE[(idx >= 0 ? idx : 0) % PALETTE.length];
}

interface Scale {
  (value: number): number;
}

function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const span = d1 - d0 || 1;
  return (v) => r0 + ((v - d0) / span) * (r1 - r0);
}

function logScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const l0 = Math.log10(d0);
  const span = Math.log10(d1) - l0 || 1;
  return (v) => r0 + ((Math.log10(v) - l0) / span) * (r1 - r0);
}

function renderPanel(
  panel: PanelSpec,
  x0: number,
  y0: number,
  width: number,
  height: number,
  logy: boolean,
  allAlgos: string[],
  maxPoints: number,
): string {
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;
  const left = x0 + MARGIN.left;
  const top = y0 + MARGIN.top;

  let tMax = 1;
  let yMin = Infinity;
  let yMax = -Infinity;
  for (const series of panel.series) {
    for (const p of series.points) {
      tMax = Math.max(tMax, p.t);
      yMin = Math.min(yMin, p.mean - p.std);
      yMax = Math.max(yMax, p.mean + p.std);
    }
  }
  if (!Number.isFinite(yMin)) {
    yMin = 0;
    yMax = 1;
  }
  let floor = 0;
  if (logy) {
    // log axis cannot show values <= 0: clamp at the smallest positive mean
    let minPositive = Infinity;
    for (const series of panel.series) {
      for (const p of series.points) {
        if (p.mean > 0) {
          minPositive = Math.min(minPositive, p.mean);
        }
      }
    }
    floor = Number.isFinite(minPositive) ? minPositive : 1e-3;
    yMin = floor;
    yMax = Math.max(yMax, floor * 10);
  } else {
    yMin = Math.min(yMin, 0);
    if (yMax <= yMin) {
      yMax = yMin + 1;
    }
  }

  const sx = linearScale(0, tMax, left, left + plotW);
  const sy = logy
    ? logScale(yMin, yMax, top + plotH, top)
    : linearScale(yMin, yMax, top + plotH, top);
  const clampY = (v: number) => (logy ? Math.max(v, floor) : v);

  const parts: string[] = [];
  parts.push(
    `<rect x="${fmt(left)}" y="${fmt(top)}" width="${fmt(plotW)}" height="${fmt(plotH)}" fill="none" stroke="#333" stroke-width="1"/>`,
  );
  parts.push(
    `<text x="${fmt(left + plotW / 2)}" y="${fmt(y0 + 18)}" text-anchor="middle" font-size="14" font-weight="bold">${panel.title}</text>`,
  );

  for (const tick of niceTicks(0, tMax, 5)) {
    const px = sx(tick);
    parts.push(`<line x1="${fmt(px)}" y1="${fmt(top + plotH)}" x2="${fmt(px)}" y2="${fmt(top + plotH + 4)}" stroke="#333"/>`);
    parts.push(
      `<text x="${fmt(px)}" y="${fmt(top + plotH + 18)}" text-anchor="middle" font-size="11">${tickLabel(tick)}</text>`,
    );
  }
  const yTicks = logy
    ? logTicks(yMin, yMax)
    : niceTicks(yMin, yMax, 5);
  for (const tick of yTicks) {
    const py = sy(tick);
    parts.push(`<line x1="${fmt(left - 4)}" y1="${fmt(py)}" x2="${fmt(left)}" y2="${fmt(py)}" stroke="#333"/>`);
    parts.push(
      `<text x="${fmt(left - 7)}" y="${fmt(py + 4)}" text-anchor="end" font-size="11">${tickLabel(tick)}</text>`,
    );
  }
  parts.push(
    `<text x="${fmt(left + plotW / 2)}" y="${fmt(top + plotH + 34)}" text-anchor="middle" font-size="12">round</text>`,
  );
  parts.push(
    `<text x="${fmt(x0 + 14)}" y="${fmt(top + plotH / 2)}" text-anchor="middle" font-size="12" transform="rotate(-90 ${fmt(x0 + 14)} ${fmt(top + plotH / 2)})">cumulative regret</text>`,
  );

  for (const series of panel.series) {
    const color = colorFor(series.algo, allAlgos);
    const pts = subsample(series.points, maxPoints);
    const upper = pts.map((p) => `${fmt(sx(p.t))},${fmt(sy(clampY(p.mean + p.std)))}`);
    const lower = pts
      .slice()
      .reverse()
      .map((p) => `${fmt(sx(p.t))},${fmt(sy(clampY(p.mean - p.std)))}`);
    parts.push(
      `<polygon points="${upper.join(" ")} ${lower.join(" ")}" fill="${color}" fill-opacity="0.18" stroke="none"/>`,
    );
    const line = pts.map((p) => `${fmt(sx(p.t))},${fmt(sy(clampY(p.mean)))}`);
    parts.push(
      `<polyline points="${line.join(" ")}" fill="none" stroke="${color}" stroke-width="1.6"/>`,
    );
  }

  // legend, top-left inside the plot area
  let ly = top + 14;
  for (const series of panel.series) {
    const color = colorFor(series.algo, allAlgos);
    parts.push(
      `<line x1="${fmt(left + 8)}" y1="${fmt(ly - 4)}" x2="${fmt(left + 30)}" y2="${fmt(ly - 4)}" stroke="${color}" stroke-width="2"/>`,
    );
    parts.push(
      `<text x="${fmt(left + 35)}" y="${fmt(ly)}" font-size="11">${series.algo}</text>`,
    );
    ly += 15;
  }
  return parts.join("\n");
}

function logTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  const start = Math.ceil(Math.log10(lo));
  const end = Math.floor(Math.log10(hi));
  for (let e = start; e <= end; e++) {
    ticks.push(Math.pow(10, e));
  }
  return ticks.length > 0 ? ticks : [lo, hi];
}

/** Render the full multi-panel figure as an SVG string. */
export function renderFigure(panels: PanelSpec[], options: FigureOptions = {}): string {
  if (panels.length === 0) {
    throw new Error("no panels to render");
  }
  const panelW = options.panelWidth ?? 420;
  const panelH = options.panelHeight ?? 300;
  const maxPoints = options.maxPointsPerCurve ?? 800;
  const cols = Math.min(3, panels.length);
  const rows = Math.ceil(panels.length / cols);
  const width = cols * panelW;
  const height = rows * panelH;
  const allAlgos = [...new Set(panels.flatMap((p) => p.series.map((s) => s.algo)))].sort();
  const body = panels
    .map((panel, i) => {
      const col = i % cols;
      const row = Math.floor(i / cols);
      return renderPanel(
        panel,
        col * panelW,
        row * panelH,
        panelW,
        panelH,
        options.logy ?? false,
        allAlgos,
        maxPoints,
      );
    })
    .join("\n");
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
    `<rect width="${width}" height="${height}" fill="white"/>`,
    body,
    "</svg>",
    "",
  ].join("\n");
}

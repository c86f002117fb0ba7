/**
 * The five figure kinds.  All mathematics arrives in the CSV; this module
 * only scales, colors, and labels it.
 */

import { Table, num } from "./csv";
import { FigureSpec, resolvedColumns } from "./figspec";
import {
  HEIGHT,
  MARGIN,
  PALETTE,
  Scale,
  SvgBuilder,
  WIDTH,
  decadeTicks,
  divergingColor,
  linearScale,
  logScale,
  niceTicks,
  tickLabel,
} from "./svg";

interface Frame {
  svg: SvgBuilder;
  x: Scale;
  y: Scale;
  plot: { x0: number; y0: number; x1: number; y1: number };
}

function finite(values: number[]): number[] {
  return values.filter((v) => Number.isFinite(v));
}

function domainOf(values: number[], fallback: [number, number], positive: boolean): [number, number] {
  const ok = finite(values).filter((v) => (positive ? v > 0 : true));
  if (ok.length === 0) return fallback;
  let lo = Math.min(...ok);
  let hi = Math.max(...ok);
  if (lo === hi) {
    lo = positive ? lo / 2 : lo - 1;
    hi = positive ? hi * 2 : hi + 1;
  }
  return [lo, hi];
}

function startFrame(
  spec: FigureSpec,
  subtitle: string,
  xDomain: [number, number],
  yDomain: [number, number],
  xLog: boolean,
  yLog: boolean
): Frame {
  const svg = new SvgBuilder();
  const plot = {
    x0: MARGIN.left,
    y0: MARGIN.top,
    x1: WIDTH - MARGIN.right,
    y1: HEIGHT - MARGIN.bottom,
  };
  const x = xLog
    ? logScale(xDomain, [plot.x0, plot.x1])
    : linearScale(xDomain, [plot.x0, plot.x1]);
  const y = yLog
    ? logScale(yDomain, [plot.y1, plot.y0])
    : linearScale(yDomain, [plot.y1, plot.y0]);

  svg.text(MARGIN.left, 18, spec.title ?? spec.kind, { size: 13, weight: "600" });
  if (subtitle) {
    svg.text(MARGIN.left, 32, subtitle, { size: 9, fill: "#888888" });
  }

  const xTicks = xLog ? decadeTicks(xDomain[0], xDomain[1]) : niceTicks(xDomain[0], xDomain[1], 6);
  for (const t of xTicks) {
    const px = x(t);
    if (px < plot.x0 - 0.5 || px > plot.x1 + 0.5) continue;
    svg.line(px, plot.y0, px, plot.y1, "#eeeeee", 0.6);
    svg.text(px, plot.y1 + 16, tickLabel(t), { size: 9, anchor: "middle", fill: "#555555" });
  }
  const yTicks = yLog ? decadeTicks(yDomain[0], yDomain[1]) : niceTicks(yDomain[0], yDomain[1], 6);
  for (const t of yTicks) {
    const py = y(t);
    if (py < plot.y0 - 0.5 || py > plot.y1 + 0.5) continue;
    svg.line(plot.x0, py, plot.x1, py, "#eeeeee", 0.6);
    svg.text(plot.x0 - 6, py + 3, tickLabel(t), { size: 9, anchor: "end", fill: "#555555" });
  }

  svg.line(plot.x0, plot.y1, plot.x1, plot.y1, "#333333", 1);
  svg.line(plot.x0, plot.y0, plot.x0, plot.y1, "#333333", 1);
  const { x: xCol, y: yCols } = resolvedColumns(spec);
  svg.text((plot.x0 + plot.x1) / 2, HEIGHT - 14, spec.xLabel ?? xCol, {
    size: 11,
    anchor: "middle",
  });
  svg.text(16, (plot.y0 + plot.y1) / 2, spec.yLabel ?? yCols.join(", "), {
    size: 11,
    anchor: "middle",
    rotate: -90,
  });
  return { svg, x, y, plot };
}

function seriesGroups(table: Table, seriesCol?: string): Array<[string, Record<string, string>[]]> {
  if (!seriesCol) return [["", table.rows]];
  const groups = new Map<string, Record<string, string>[]>();
  for (const row of table.rows) {
    const key = row[seriesCol];
    if (!groups.has(key)) groups.set(key, []);
    groups.get(key)!.push(row);
  }
  return [...groups.entries()].sort((a, b) => a[0].localeCompare(b[0]));
}

function legendEntry(svg: SvgBuilder, index: number, color: string, label: string, dash?: string): void {
  const x = WIDTH - MARGIN.right - 150;
  const y = MARGIN.top + 14 * index + 8;
  svg.line(x, y - 3, x + 18, y - 3, color, 2, dash);
  svg.text(x + 24, y, label, { size: 9, fill: "#333333" });
}

/** Multi-series lines on log-log axes (sigma_min and theta sweeps). */
export function renderLogLogLines(spec: FigureSpec, table: Table, subtitle: string): string {
  const { x: xCol, y: yCols, series } = resolvedColumns(spec);
  const xs = table.rows.map((r) => num(r, xCol));
  const ys = table.rows.flatMap((r) => yCols.map((c) => num(r, c)));
  const frame = startFrame(
    spec,
    subtitle,
    domainOf(xs, [1, 10], true),
    domainOf(ys, [0.1, 10], true),
    true,
    true
  );
  let index = 0;
  for (const [value, rows] of seriesGroups(table, series)) {
    yCols.forEach((col, ci) => {
      const color = PALETTE[index % PALETTE.length];
      const dash = ci === 0 ? undefined : "5,3";
      const pts: Array<[number, number]> = [];
      for (const row of rows) {
        const xv = num(row, xCol);
        const yv = num(row, col);
        if (Number.isFinite(xv) && Number.isFinite(yv) && xv > 0 && yv > 0) {
          pts.push([frame.x(xv), frame.y(yv)]);
        }
      }
      frame.svg.polyline(pts, color, 1.4, dash);
      const label = value === "" ? col : `${series}=${value} ${col}`;
      legendEntry(frame.svg, index * yCols.length + ci, color, label, dash);
    });
    index++;
  }
  return frame.svg.toString();
}

/** Ratio curves: log abscissa, linear ordinate (accuracy-of-bound plots). */
export function renderRatioLines(spec: FigureSpec, table: Table, subtitle: string): string {
  const { x: xCol, y: yCols, series } = resolvedColumns(spec);
  const xs = table.rows.map((r) => num(r, xCol));
  const ys = table.rows.flatMap((r) => yCols.map((c) => num(r, c)));
  const yDom = domainOf(ys, [0, 2], false);
  const frame = startFrame(
    spec,
    subtitle,
    domainOf(xs, [1, 10], true),
    [Math.min(0, yDom[0]), yDom[1] * 1.08],
    true,
    false
  );
  let index = 0;
  for (const [value, rows] of seriesGroups(table, series)) {
    for (const col of yCols) {
      const color = PALETTE[index % PALETTE.length];
      const pts: Array<[number, number]> = [];
      for (const row of rows) {
        const xv = num(row, xCol);
        const yv = num(row, col);
        if (Number.isFinite(xv) && Number.isFinite(yv) && xv > 0) {
          pts.push([frame.x(xv), frame.y(yv)]);
        }
      }
      frame.svg.polyline(pts, color, 1.4);
      const label = value === "" ? col : `${series}=${value}`;
      legendEntry(frame.svg, index, color, label);
      index++;
    }
  }
  return frame.svg.toString();
}

/** Correlation/imaging traces with true-node and recovered markers. */
export function renderFunctionTrace(spec: FigureSpec, table: Table, subtitle: string): string {
  const { x: xCol, y: yCols } = resolvedColumns(spec);
  const xs = table.rows.map((r) => num(r, xCol));
  const ys = table.rows.flatMap((r) => yCols.map((c) => num(r, c)));
  const frame = startFrame(
    spec,
    subtitle,
    domainOf(xs, [0, 1], false),
    domainOf(ys, [0.1, 10], true),
    false,
    true
  );
  yCols.forEach((col, ci) => {
    const color = PALETTE[ci % PALETTE.length];
    const pts: Array<[number, number]> = [];
    for (const row of table.rows) {
      const yv = num(row, col);
      if (Number.isFinite(yv) && yv > 0) {
        pts.push([frame.x(num(row, xCol)), frame.y(yv)]);
      }
    }
    frame.svg.polyline(pts, color, 1.0);
    legendEntry(frame.svg, ci, color, col);
  });
  let legends = yCols.length;
  let markedTrue = false;
  let markedRecovered = false;
  for (const row of table.rows) {
    if (num(row, "is_true_node") === 1) {
      const px = frame.x(num(row, xCol));
      frame.svg.line(px, frame.plot.y0, px, frame.plot.y1, "#e63946", 0.8, "4,3");
      frame.svg.circle(px, frame.plot.y1, 3, "#e63946");
      markedTrue = true;
    }
    if (num(row, "is_recovered") === 1) {
      const px = frame.x(num(row, xCol));
      frame.svg.circle(px, frame.plot.y0 + 4, 3, "#2d6a4f");
      markedRecovered = true;
    }
  }
  if (markedTrue) legendEntry(frame.svg, legends++, "#e63946", "true node", "4,3");
  if (markedRecovered) legendEntry(frame.svg, legends++, "#2d6a4f", "recovered");
  return frame.svg.toString();
}

/** Mean log2(dist/Delta) heatmap over (SRF, sigma), diverging at -1. */
export function renderHeatmap(spec: FigureSpec, table: Table, subtitle: string): string {
  const { x: xCol, y: yCols } = resolvedColumns(spec);
  const valueCol = yCols[0];
  const xsAll = [...new Set(table.rows.map((r) => num(r, xCol)))].sort((a, b) => a - b);
  const sigmasAll = [...new Set(table.rows.map((r) => num(r, "sigma")))].sort((a, b) => a - b);
  const frame = startFrame(
    spec,
    subtitle,
    domainOf(xsAll, [1, 10], true),
    domainOf(sigmasAll, [1e-6, 1], true),
    true,
    true
  );
  if (spec.yLabel === undefined) {
    // default ordinate for the heatmap is the noise level, not the cell value
    frame.svg.raw(`<!-- ordinate: sigma; cell value: ${valueCol} -->`);
  }

  const edges = (vals: number[], scale: Scale, lo: number, hi: number): number[] => {
    if (vals.length === 0) return [];
    const pos = vals.map(scale);
    const bounds: number[] = [Math.max(Math.min(lo, hi), pos[0] - (pos[1] - pos[0]) / 2 || lo)];
    for (let i = 0; i + 1 < pos.length; i++) bounds.push((pos[i] + pos[i + 1]) / 2);
    bounds.push(pos[pos.length - 1] + (pos[pos.length - 1] - pos[pos.length - 2]) / 2 || hi);
    return bounds;
  };
  const xEdges = edges(xsAll, frame.x, frame.plot.x0, frame.plot.x1);
  const yEdges = edges(sigmasAll, frame.y, frame.plot.y1, frame.plot.y0);

  // color range centered at log2(dist/Delta) = -1 (the success threshold)
  const values = finite(table.rows.map((r) => num(r, valueCol)));
  const spread = values.length
    ? Math.max(1, ...values.map((v) => Math.abs(v + 1)))
    : 1;
  const xIndex = new Map(xsAll.map((v, i) => [v, i]));
  const yIndex = new Map(sigmasAll.map((v, i) => [v, i]));
  for (const row of table.rows) {
    const xi = xIndex.get(num(row, xCol))!;
    const yi = yIndex.get(num(row, "sigma"))!;
    const v = num(row, valueCol);
    const color = Number.isFinite(v) ? divergingColor((v + 1) / spread) : "#cccccc";
    const x0 = xEdges[xi];
    const x1 = xEdges[xi + 1];
    const y0 = yEdges[yi + 1];
    const y1 = yEdges[yi];
    frame.svg.rect(
      Math.min(x0, x1),
      Math.min(y0, y1),
      Math.abs(x1 - x0),
      Math.abs(y1 - y0),
      color
    );
  }
  return frame.svg.toString();
}

/** Threshold curves sigma*(SRF) with the fitted exponent annotation. */
export function renderTransitionCurves(spec: FigureSpec, table: Table, subtitle: string): string {
  const { x: xCol, y: yCols, series } = resolvedColumns(spec);
  const starCol = yCols[0];
  const xs = table.rows.map((r) => num(r, xCol));
  const stars = table.rows.map((r) => num(r, starCol));
  const frame = startFrame(
    spec,
    subtitle,
    domainOf(xs, [1, 10], true),
    domainOf(stars, [1e-6, 1], true),
    true,
    true
  );
  let index = 0;
  for (const [value, rows] of seriesGroups(table, series)) {
    const color = PALETTE[index % PALETTE.length];
    const seen = new Set<number>();
    const pts: Array<[number, number]> = [];
    let q = NaN;
    for (const row of rows) {
      const xv = num(row, xCol);
      const sv = num(row, starCol);
      q = num(row, "q");
      if (seen.has(xv) || !Number.isFinite(sv) || sv <= 0) continue;
      seen.add(xv);
      pts.push([frame.x(xv), frame.y(sv)]);
    }
    frame.svg.polyline(pts, color, 1.6);
    for (const [px, py] of pts) frame.svg.circle(px, py, 2, color);
    const label = value === "" ? starCol : `${series}=${value}`;
    const annotation = Number.isFinite(q) ? `${label}  q=${q.toFixed(3)}` : label;
    legendEntry(frame.svg, index, color, annotation);
    index++;
  }
  return frame.svg.toString();
}

export function renderChart(spec: FigureSpec, table: Table, subtitle: string): string {
  switch (spec.kind) {
    case "loglog-lines":
      return renderLogLogLines(spec, table, subtitle);
    case "ratio-lines":
      return renderRatioLines(spec, table, subtitle);
    case "function-trace":
      return renderFunctionTrace(spec, table, subtitle);
    case "heatmap":
      return renderHeatmap(spec, table, subtitle);
    case "transition-curves":
      return renderTransitionCurves(spec, table, subtitle);
  }
}

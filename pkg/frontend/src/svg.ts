/**
 * Deterministic SVG assembly: fixed canvas, fixed font stack, no
 * timestamps or random ids, numbers formatted to one decimal place.
 */

export const WIDTH = 720;
export const HEIGHT = 420;
export const MARGIN = { left: 64, right: 24, top: 40, bottom: 52 };
export const FONT = "DejaVu Sans, Helvetica, Arial, sans-serif";

export const PALETTE = [
  "#4361ee",
  "#e63946",
  "#2d6a4f",
  "#f4a261",
  "#7209b7",
  "#0096c7",
  "#9d0208",
  "#5f6c37",
];

export function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function fmt(v: number): string {
  return v.toFixed(1);
}

/** Tick label: compact scientific for tiny/huge, plain otherwise. */
export function tickLabel(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) {
    const exp = Math.floor(Math.log10(a));
    const mant = v / Math.pow(10, exp);
    const m = Math.round(mant * 10) / 10;
    return `${m}e${exp}`;
  }
  return String(Math.round(v * 1000) / 1000);
}

export function niceTicks(min: number, max: number, count: number): number[] {
  const range = max - min || 1;
  const rough = range / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rough)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((n) => n >= rough) ?? rough;
  const ticks: number[] = [];
  for (let v = Math.ceil(min / step) * step; v <= max + step * 0.01; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

/** Powers of ten covering [min, max] for log axes. */
export function decadeTicks(min: number, max: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.ceil(Math.log10(min) - 1e-9); Math.pow(10, e) <= max * (1 + 1e-9); e++) {
    ticks.push(Math.pow(10, e));
  }
  if (ticks.length === 0) ticks.push(min, max);
  return ticks;
}

export type Scale = (v: number) => number;

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  return (v: number) => r0 + ((v - d0) / span) * (r1 - r0);
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  const inner = linearScale([Math.log10(domain[0]), Math.log10(domain[1])], range);
  return (v: number) => inner(Math.log10(v));
}

export class SvgBuilder {
  private parts: string[] = [];

  constructor(width: number = WIDTH, height: number = HEIGHT) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}" font-family="${FONT}">`
    );
    this.parts.push(`<rect width="${width}" height="${height}" fill="#ffffff"/>`);
  }

  raw(fragment: string): void {
    this.parts.push(fragment);
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke: string, width = 1, dash?: string): void {
    const d = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ` +
        `stroke="${stroke}" stroke-width="${width}"${d}/>`
    );
  }

  polyline(points: Array<[number, number]>, stroke: string, width = 1.4, dash?: string): void {
    if (points.length === 0) return;
    const d = dash ? ` stroke-dasharray="${dash}"` : "";
    const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(
      `<polyline points="${pts}" fill="none" stroke="${stroke}" stroke-width="${width}"${d}/>`
    );
  }

  rect(x: number, y: number, w: number, h: number, fill: string): void {
    this.parts.push(
      `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" fill="${fill}"/>`
    );
  }

  circle(cx: number, cy: number, r: number, fill: string): void {
    this.parts.push(`<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${r}" fill="${fill}"/>`);
  }

  text(
    x: number,
    y: number,
    content: string,
    opts: { size?: number; fill?: string; anchor?: string; weight?: string; rotate?: number } = {}
  ): void {
    const size = opts.size ?? 11;
    const fill = opts.fill ?? "#222222";
    const anchor = opts.anchor ? ` text-anchor="${opts.anchor}"` : "";
    const weight = opts.weight ? ` font-weight="${opts.weight}"` : "";
    const rotate = opts.rotate
      ? ` transform="rotate(${opts.rotate} ${fmt(x)} ${fmt(y)})"`
      : "";
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" font-size="${size}" fill="${fill}"${anchor}${weight}${rotate}>` +
        `${esc(content)}</text>`
    );
  }

  toString(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}

/** Diverging blue-white-red color for heatmap cells, t in [-1, 1]. */
export function divergingColor(t: number): string {
  const clamp = Math.max(-1, Math.min(1, t));
  const stop = (a: number, b: number, u: number) => Math.round(a + (b - a) * u);
  let r: number, g: number, b: number;
  if (clamp < 0) {
    const u = clamp + 1; // blue -> white
    r = stop(33, 255, u);
    g = stop(102, 255, u);
    b = stop(172, 255, u);
  } else {
    const u = clamp; // white -> red
    r = stop(255, 178, u);
    g = stop(255, 24, u);
    b = stop(255, 43, u);
  }
  return `rgb(${r},${g},${b})`;
}

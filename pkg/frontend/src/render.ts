/**
 * Spec-driven rendering: read records.csv (+ optional manifest.json),
 * validate the column contract, draw the SVG, rasterize the PNG.
 *
 * Outputs are pure functions of the inputs: fixed canvas, pinned font,
 * no timestamps.  The manifest contributes only its command/seed/schema
 * fields to the subtitle.
 */

import { existsSync, readFileSync, writeFileSync } from "fs";
import { Resvg } from "@resvg/resvg-js";

import { parseCsv } from "./csv";
import { renderChart } from "./charts";
import { FigureSpec, validateColumns } from "./figspec";

const FONT_CANDIDATES = [
  "/usr/share/fonts/truetype/dejavu/DejaVuSans.ttf",
  "/usr/share/fonts/TTF/DejaVuSans.ttf",
];

export function rasterize(svg: string): Buffer {
  const fontFiles = FONT_CANDIDATES.filter((p) => existsSync(p));
  const resvg = new Resvg(svg, {
    fitTo: { mode: "original" },
    font:
      fontFiles.length > 0
        ? {
            loadSystemFonts: false,
            fontFiles,
            defaultFontFamily: "DejaVu Sans",
          }
        : { loadSystemFonts: true },
  });
  return resvg.render().asPng();
}

function subtitleFrom(spec: FigureSpec): string {
  if (!spec.manifest) return "";
  const manifest = JSON.parse(readFileSync(spec.manifest, "utf-8"));
  const parts: string[] = [];
  if (manifest.command) parts.push(String(manifest.command));
  if (manifest.seed !== undefined && manifest.seed !== null) {
    parts.push(`seed ${manifest.seed}`);
  }
  if (manifest.schema_version) parts.push(`schema v${manifest.schema_version}`);
  return parts.join("  ·  ");
}

export interface RenderResult {
  svgPath: string;
  pngPath: string;
  rows: number;
}

export function render(spec: FigureSpec): RenderResult {
  const table = parseCsv(readFileSync(spec.input, "utf-8"));
  validateColumns(spec, table);
  const svg = renderChart(spec, table, subtitleFrom(spec));
  const svgPath = `${spec.output}.svg`;
  const pngPath = `${spec.output}.png`;
  writeFileSync(svgPath, svg, "utf-8");
  writeFileSync(pngPath, rasterize(svg));
  return { svgPath, pngPath, rows: table.rows.length };
}

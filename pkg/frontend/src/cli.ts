#!/usr/bin/env node
/**
 * Batch figure renderer.
 *
 * Usage:
 *   superres-figures render --spec fig.json [--spec more.json ...]
 *
 * Each spec JSON mirrors the FigureSpec fields (kind, input, output,
 * optional manifest/title/xLabel/yLabel/x/y/series).  Exits nonzero with a
 * column diagnostic when the CSV does not carry the kind's contract.
 */

import { readFileSync } from "fs";

import { parseSpec } from "./figspec";
import { render } from "./render";

export function main(argv: string[]): number {
  const args = [...argv];
  const command = args.shift();
  if (command !== "render") {
    process.stderr.write("usage: superres-figures render --spec <json> [--spec <json> ...]\n");
    return 64;
  }
  const specPaths: string[] = [];
  while (args.length > 0) {
    const flag = args.shift();
    if (flag === "--spec") {
      const value = args.shift();
      if (!value) {
        process.stderr.write("--spec requires a path\n");
        return 64;
      }
      specPaths.push(value);
    } else {
      process.stderr.write(`unknown argument: ${flag}\n`);
      return 64;
    }
  }
  if (specPaths.length === 0) {
    process.stderr.write("at least one --spec is required\n");
    return 64;
  }
  for (const path of specPaths) {
    try {
      const spec = parseSpec(JSON.parse(readFileSync(path, "utf-8")));
      const result = render(spec);
      process.stdout.write(
        `${spec.kind}: ${result.rows} rows -> ${result.svgPath}, ${result.pngPath}\n`
      );
    } catch (err) {
      process.stderr.write(`${path}: ${err instanceof Error ? err.message : String(err)}\n`);
      return 1;
    }
  }
  return 0;
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}

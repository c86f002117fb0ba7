/**
 * Figure specifications: which chart kind to draw from which columns.
 *
 * The renderer consumes only columns produced by the experiment sweeps;
 * each kind declares the columns it needs and validation fails hard with
 * a column diagnostic before any drawing happens.
 */

import { Table } from "./csv";

export type FigureKind =
  | "loglog-lines"
  | "ratio-lines"
  | "function-trace"
  | "heatmap"
  | "transition-curves";

export interface FigureSpec {
  kind: FigureKind;
  /** records.csv produced by a sweep run */
  input: string;
  /** optional manifest.json of the same run, used for the subtitle */
  manifest?: string;
  /** output path without extension; .svg and .png are written */
  output: string;
  title?: string;
  xLabel?: string;
  yLabel?: string;
  /** abscissa column (kind-dependent default) */
  x?: string;
  /** ordinate column(s) (kind-dependent default) */
  y?: string[];
  /** series grouping column; one line per distinct value */
  series?: string;
}

interface KindContract {
  defaults: { x: string; y: string[]; series?: string };
  /** extra columns the kind always reads */
  fixed: string[];
}

export const KIND_CONTRACTS: Record<FigureKind, KindContract> = {
  "loglog-lines": {
    defaults: { x: "srf", y: ["zeta", "xi"], series: "lam" },
    fixed: [],
  },
  "ratio-lines": {
    defaults: { x: "srf", y: ["ratio"], series: "lam" },
    fixed: [],
  },
  "function-trace": {
    defaults: { x: "omega", y: ["correlation", "imaging"] },
    fixed: ["is_true_node", "is_recovered"],
  },
  heatmap: {
    defaults: { x: "srf", y: ["mean_log2_ratio"] },
    fixed: ["sigma"],
  },
  "transition-curves": {
    defaults: { x: "srf", y: ["sigma_star"] },
    fixed: ["q"],
  },
};

const KINDS = Object.keys(KIND_CONTRACTS) as FigureKind[];

export function parseSpec(raw: unknown): FigureSpec {
  if (typeof raw !== "object" || raw === null) {
    throw new Error("figure spec must be a JSON object");
  }
  const spec = raw as Partial<FigureSpec>;
  if (!spec.kind || !KINDS.includes(spec.kind)) {
    throw new Error(`spec.kind must be one of: ${KINDS.join(", ")}`);
  }
  if (!spec.input) throw new Error("spec.input (records.csv path) is required");
  if (!spec.output) throw new Error("spec.output (path without extension) is required");
  if (spec.y !== undefined && !Array.isArray(spec.y)) {
    throw new Error("spec.y must be an array of column names");
  }
  return spec as FigureSpec;
}

/** Columns the spec will read, after applying kind defaults. */
export function resolvedColumns(spec: FigureSpec): {
  x: string;
  y: string[];
  series?: string;
  required: string[];
} {
  const contract = KIND_CONTRACTS[spec.kind];
  const x = spec.x ?? contract.defaults.x;
  const y = spec.y ?? contract.defaults.y;
  const series = spec.series ?? contract.defaults.series;
  const required = [x, ...y, ...contract.fixed];
  if (series) required.push(series);
  return { x, y, series, required };
}

export function validateColumns(spec: FigureSpec, table: Table): void {
  const { required } = resolvedColumns(spec);
  const missing = required.filter((c) => !table.columns.includes(c));
  if (missing.length > 0) {
    throw new Error(
      `input ${spec.input} is missing column(s) [${missing.join(", ")}] ` +
        `required by kind ${spec.kind}; header has [${table.columns.join(", ")}]`
    );
  }
}

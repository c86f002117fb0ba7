/**
 * Minimal CSV reader for superres records files.
 *
 * Records are machine-written: UTF-8, header row, comma separation, '.'
 * decimals, RFC-4180 quoting only around cells that contain commas.
 */

export interface Table {
  columns: string[];
  rows: Record<string, string>[];
}

function splitLine(line: string): string[] {
  const cells: string[] = [];
  let cur = "";
  let quoted = false;
  for (let i = 0; i < line.length; i++) {
    const ch = line[i];
    if (quoted) {
      if (ch === '"') {
        if (line[i + 1] === '"') {
          cur += '"';
          i++;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch === '"') {
      quoted = true;
    } else if (ch === ",") {
      cells.push(cur);
      cur = "";
    } else {
      cur += ch;
    }
  }
  cells.push(cur);
  return cells;
}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new Error("CSV is empty: expected at least a header row");
  }
  const columns = splitLine(lines[0]);
  const rows = lines.slice(1).map((line, idx) => {
    const cells = splitLine(line);
    if (cells.length !== columns.length) {
      throw new Error(
        `CSV row ${idx + 2} has ${cells.length} cells, header has ${columns.length}`
      );
    }
    const row: Record<string, string> = {};
    columns.forEach((c, i) => (row[c] = cells[i]));
    return row;
  });
  return { columns, rows };
}

/** Numeric cell access; 'nan' cells become NaN, never silently 0. */
export function num(row: Record<string, string>, column: string): number {
  const raw = row[column];
  if (raw === undefined) {
    throw new Error(`missing column ${column}`);
  }
  if (raw === "" || raw === "nan" || raw === "-nan") return NaN;
  if (raw === "inf") return Infinity;
  if (raw === "-inf") return -Infinity;
  const v = Number(raw);
  if (Number.isNaN(v)) {
    throw new Error(`cell ${column}=${JSON.stringify(raw)} is not numeric`);
  }
  return v;
}

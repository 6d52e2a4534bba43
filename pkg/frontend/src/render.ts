/**
 * Generic renderer: FigureSpec + scan CSVs -> multi-panel SVG.
 *
 * Rendering never alters or reorders the data: rows are consumed in file
 * order, rows with missing values in any plotted column are skipped with a
 * warning, and dumpPlotdata() re-emits exactly the plotted columns of the
 * surviving rows, token for token.
 */

import { writeFileSync } from "node:fs";

import { columnIndex, CsvTable, isMissing, readCsv } from "./csv.js";
import { baselineColumns, FigureSpec, InputSpec, plottedColumns } from "./spec.js";
import { Panel, renderSvg, Series } from "./svg.js";

export interface RenderResult {
  out: string;
  panels: number;
  skippedRows: number;
}

type Warn = (msg: string) => void;

interface PlottedInput {
  table: CsvTable;
  columns: string[];
  /** indices into table.rows of the rows that survived filter + missing-value skip */
  rowIds: number[];
}

function selectRows(table: CsvTable, input: InputSpec, warn: Warn): PlottedInput {
  const columns = plottedColumns(input);
  const idx = columns.map((c) => columnIndex(table, c));
  const filters = Object.entries(input.filter ?? {}).map(
    ([col, value]) => [columnIndex(table, col), value] as const,
  );
  const rowIds: number[] = [];
  table.rows.forEach((row, i) => {
    if (!filters.every(([j, value]) => row[j] === value)) return;
    const bad = idx.find((j) => isMissing(row[j]));
    if (bad !== undefined) {
      warn(`${table.path}: skipping row ${i + 1} (missing value in '${table.header[bad]}')`);
      return;
    }
    rowIds.push(i);
  });
  return { table, columns, rowIds };
}

function groupKeys(table: CsvTable, input: InputSpec, rowIds: number[]): Map<string, number[]> {
  const groups = new Map<string, number[]>();
  const gcols = (input.groupBy ?? []).map((c) => columnIndex(table, c));
  for (const i of rowIds) {
    const key = gcols.length
      ? (input.groupBy ?? []).map((c, j) => `${c}=${table.rows[i][gcols[j]]}`).join(" ")
      : "";
    if (!groups.has(key)) groups.set(key, []);
    groups.get(key)!.push(i);
  }
  return groups;
}

function panelsFor(input: InputSpec, plotted: PlottedInput, inset?: { x0: number; x1: number }): Panel[] {
  const { table, rowIds } = plotted;
  const xIdx = columnIndex(table, input.x);
  const yCols = [...input.y, ...baselineColumns(input)];
  const yIdx = yCols.map((c) => columnIndex(table, c));
  const nBase = baselineColumns(input).length;
  const panels: Panel[] = [];
  for (const [key, ids] of groupKeys(table, input, rowIds)) {
    const series: Series[] = yCols.map((col, j) => ({
      label: col,
      x: ids.map((i) => Number(table.rows[i][xIdx])),
      y: ids.map((i) => Number(table.rows[i][yIdx[j]])),
      dashed: j >= yCols.length - nBase,
    }));
    panels.push({ title: key, series, inset });
  }
  return panels;
}

export function render(spec: FigureSpec, warn: Warn = (m) => console.warn(m)): RenderResult {
  let skipped = 0;
  const panels: Panel[] = [];
  for (const input of spec.inputs) {
    const table = readCsv(input.csv);
    const plotted = selectRows(table, input, (m) => {
      skipped += 1;
      warn(m);
    });
    panels.push(...panelsFor(input, plotted, spec.inset));
  }
  const svg = renderSvg(panels, spec.width, spec.height, spec.title);
  writeFileSync(spec.out, svg);
  return { out: spec.out, panels: panels.length, skippedRows: skipped };
}

/**
 * The plotted series as text: for every input, one header line with the
 * plotted column names followed by the raw tokens of those columns for each
 * plotted row, in file order.  Byte-identical to the source CSV columns.
 */
export function dumpPlotdata(spec: FigureSpec, warn: Warn = () => {}): string {
  const chunks: string[] = [];
  for (const input of spec.inputs) {
    const table = readCsv(input.csv);
    const plotted = selectRows(table, input, warn);
    const idx = plotted.columns.map((c) => columnIndex(table, c));
    chunks.push(`# ${table.path}`);
    chunks.push(plotted.columns.join(","));
    for (const i of plotted.rowIds) {
      chunks.push(idx.map((j) => table.rows[i][j]).join(","));
    }
  }
  return chunks.join("\n") + "\n";
}

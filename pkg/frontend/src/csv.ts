/**
 * Reader for the scan CSVs produced by the simulation CLI: '#'-prefixed
 * metadata lines, one header row, comma-separated values with no quoting.
 * Raw cell tokens are preserved so that dumped plot data stays byte-identical
 * to the source file.
 */

import { readFileSync } from "node:fs";

export interface CsvTable {
  path: string;
  meta: string[];
  header: string[];
  /** raw row tokens, exactly as they appear in the file */
  rows: string[][];
}

export class CsvError extends Error {}

export function parseCsv(path: string, text: string): CsvTable {
  const lines = text.split("\n");
  const meta: string[] = [];
  let header: string[] | null = null;
  const rows: string[][] = [];
  for (const line of lines) {
    if (line === "" || line === "\r") continue;
    if (line.startsWith("#")) {
      meta.push(line);
      continue;
    }
    if (header === null) {
      header = line.split(",");
      continue;
    }
    rows.push(line.split(","));
  }
  if (header === null || rows.length === 0) {
    throw new CsvError(`${path}: empty CSV (no header or no data rows)`);
  }
  return { path, meta, header, rows };
}

export function readCsv(path: string): CsvTable {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch (err) {
    throw new CsvError(`cannot read ${path}: ${(err as Error).message}`);
  }
  return parseCsv(path, text);
}

export function columnIndex(table: CsvTable, name: string): number {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new CsvError(
      `${table.path}: missing column '${name}' (header: ${table.header.join(",")})`,
    );
  }
  return idx;
}

/** A token counts as missing when it is empty or not a finite number
 * (the producer writes 'nan'/'inf' for undefined or divergent entries). */
export function isMissing(token: string): boolean {
  if (token === "") return true;
  return !Number.isFinite(Number(token.replace(/^(-?)inf$/, "$1Infinity")));
}

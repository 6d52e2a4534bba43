/** Figure specification: which CSV columns are plotted, how panels split. */

import { readFileSync } from "node:fs";
import { z } from "zod";

const inputSchema = z.object({
  csv: z.string(),
  x: z.string(),
  y: z.array(z.string()).min(1),
  baseline: z.union([z.string(), z.array(z.string())]).optional(),
  groupBy: z.array(z.string()).optional(),
  filter: z.record(z.string()).optional(),
  logY: z.boolean().optional(),
});

const figureSchema = z.object({
  inputs: z.array(inputSchema).min(1),
  out: z.string(),
  title: z.string().optional(),
  inset: z.object({ x0: z.number(), x1: z.number() }).optional(),
  width: z.number().int().positive().optional(),
  height: z.number().int().positive().optional(),
});

export type InputSpec = z.infer<typeof inputSchema>;
export type FigureSpec = z.infer<typeof figureSchema>;

export function validateSpec(data: unknown): FigureSpec {
  return figureSchema.parse(data);
}

export function loadSpec(path: string): FigureSpec {
  return validateSpec(JSON.parse(readFileSync(path, "utf8")));
}

export function baselineColumns(input: InputSpec): string[] {
  if (input.baseline === undefined) return [];
  return typeof input.baseline === "string" ? [input.baseline] : input.baseline;
}

/** All columns an input draws from, in plot order: x, y series, baselines. */
export function plottedColumns(input: InputSpec): string[] {
  return [input.x, ...input.y, ...baselineColumns(input)];
}

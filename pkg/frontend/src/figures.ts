/** Built-in specs for the bundled fig2..fig8 scan presets. */

import { join } from "node:path";

import { FigureSpec } from "./spec.js";

export const FIGURE_NAMES = ["fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"] as const;
export type FigureName = (typeof FIGURE_NAMES)[number];

export function figureSpec(name: FigureName, csvDir = ".", outDir = "."): FigureSpec {
  const csv = (base: string) => join(csvDir, base);
  const out = join(outDir, `${name}.svg`);
  switch (name) {
    case "fig2":
      return {
        inputs: [{ csv: csv("fig2.csv"), x: "h", y: ["concurrence", "discord"] }],
        out,
        title: "equilibrium quantum correlations vs transverse field",
      };
    case "fig3":
      return {
        inputs: [
          {
            csv: csv("fig3.csv"),
            x: "h_f",
            y: ["c_steady", "qd_steady"],
            baseline: ["c_eq", "qd_eq"],
            groupBy: ["h_i"],
          },
        ],
        out,
        inset: { x0: 0.9, x1: 1.1 },
        title: "steady-state quantum correlations vs final field",
      };
    case "fig4":
      return {
        inputs: [
          { csv: csv("fig4.csv"), x: "h_f", y: ["g0_abs"], groupBy: ["h_i"] },
          {
            csv: csv("fig4_sectors.csv"),
            x: "n_f",
            y: ["g_max", "c_n"],
            groupBy: ["h_i", "h_f"],
            filter: { h_i: "0.5", h_f: "2" },
          },
          {
            csv: csv("fig4_sectors.csv"),
            x: "n_f",
            y: ["g_max", "c_n"],
            groupBy: ["h_i", "h_f"],
            filter: { h_i: "2", h_f: "0.5" },
          },
        ],
        out,
        title: "expansion coefficients and excited-state concurrence",
      };
    case "fig5":
      return {
        inputs: [
          {
            csv: csv("fig5.csv"),
            x: "h_i",
            y: ["c_steady", "qd_steady"],
            baseline: ["c_eq", "qd_eq"],
            groupBy: ["h_f"],
          },
        ],
        out,
        title: "steady-state quantum correlations vs initial field",
      };
    case "fig6":
      return {
        inputs: [
          {
            csv: csv("fig6.csv"),
            x: "spend_time",
            y: ["c_steady", "qd_steady"],
            baseline: ["c_single", "qd_single"],
            groupBy: ["h_i", "h_f", "h_m"],
          },
        ],
        out,
        title: "steady-state quantum correlations vs spending time",
      };
    case "fig7":
    case "fig8":
      return {
        inputs: [
          {
            csv: csv(`${name}.csv`),
            x: "h_m",
            y: ["c_steady", "qd_steady"],
            baseline: ["c_single", "qd_single"],
            groupBy: ["h_i", "h_f"],
          },
        ],
        out,
        title:
          name === "fig7"
            ? "steady-state quantum correlations vs middle field (dephased middle point)"
            : "steady-state quantum correlations vs middle field (arg-max spending time)",
      };
  }
}

/**
 * Minimal deterministic SVG line plots: no DOM, no randomness, fixed
 * coordinate formatting, so identical inputs give byte-identical files.
 */

export interface Series {
  label: string;
  x: number[];
  y: number[];
  dashed?: boolean;
}

export interface Panel {
  title: string;
  series: Series[];
  inset?: { x0: number; x1: number };
  logY?: boolean;
}

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

const fmt = (v: number): string => v.toFixed(2);

function niceTicks(lo: number, hi: number, n = 5): number[] {
  if (!(hi > lo)) return [lo];
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / n)));
  const err = span / n / step;
  const mult = err >= 7.5 ? 10 : err >= 3.5 ? 5 : err >= 1.5 ? 2 : 1;
  const s = mult * step;
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / s) * s; v <= hi + 1e-12 * span; v += s) {
    ticks.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  return ticks;
}

const tickLabel = (v: number): string => {
  const s = v.toPrecision(6);
  return String(Number(s));
};

interface Box {
  x: number;
  y: number;
  w: number;
  h: number;
}

function drawAxes(out: string[], box: Box, xlim: [number, number], ylim: [number, number], fontSize: number): void {
  out.push(
    `<rect x="${fmt(box.x)}" y="${fmt(box.y)}" width="${fmt(box.w)}" height="${fmt(box.h)}" fill="none" stroke="#333" stroke-width="1"/>`,
  );
  for (const t of niceTicks(xlim[0], xlim[1])) {
    const px = box.x + ((t - xlim[0]) / (xlim[1] - xlim[0] || 1)) * box.w;
    out.push(`<line x1="${fmt(px)}" y1="${fmt(box.y + box.h)}" x2="${fmt(px)}" y2="${fmt(box.y + box.h + 4)}" stroke="#333" stroke-width="1"/>`);
    out.push(
      `<text x="${fmt(px)}" y="${fmt(box.y + box.h + 4 + fontSize)}" font-size="${fontSize}" text-anchor="middle" font-family="monospace">${tickLabel(t)}</text>`,
    );
  }
  for (const t of niceTicks(ylim[0], ylim[1])) {
    const py = box.y + box.h - ((t - ylim[0]) / (ylim[1] - ylim[0] || 1)) * box.h;
    out.push(`<line x1="${fmt(box.x - 4)}" y1="${fmt(py)}" x2="${fmt(box.x)}" y2="${fmt(py)}" stroke="#333" stroke-width="1"/>`);
    out.push(
      `<text x="${fmt(box.x - 6)}" y="${fmt(py + fontSize / 3)}" font-size="${fontSize}" text-anchor="end" font-family="monospace">${tickLabel(t)}</text>`,
    );
  }
}

function drawSeries(out: string[], box: Box, panel: Panel, xlim: [number, number], ylim: [number, number]): void {
  panel.series.forEach((s, i) => {
    const pts: string[] = [];
    for (let j = 0; j < s.x.length; j++) {
      if (s.x[j] < xlim[0] - 1e-12 || s.x[j] > xlim[1] + 1e-12) continue;
      const px = box.x + ((s.x[j] - xlim[0]) / (xlim[1] - xlim[0] || 1)) * box.w;
      const py = box.y + box.h - ((s.y[j] - ylim[0]) / (ylim[1] - ylim[0] || 1)) * box.h;
      pts.push(`${fmt(px)},${fmt(py)}`);
    }
    if (pts.length === 0) return;
    const color = PALETTE[i % PALETTE.length];
    const dash = s.dashed ? ' stroke-dasharray="6,4"' : "";
    out.push(`<polyline points="${pts.join(" ")}" fill="none" stroke="${color}" stroke-width="1.5"${dash}/>`);
  });
}

function dataLimits(series: Series[], window?: { x0: number; x1: number }): { xlim: [number, number]; ylim: [number, number] } {
  let xmin = Infinity, xmax = -Infinity, ymin = Infinity, ymax = -Infinity;
  for (const s of series) {
    for (let j = 0; j < s.x.length; j++) {
      const x = s.x[j];
      if (window && (x < window.x0 || x > window.x1)) continue;
      xmin = Math.min(xmin, x);
      xmax = Math.max(xmax, x);
      ymin = Math.min(ymin, s.y[j]);
      ymax = Math.max(ymax, s.y[j]);
    }
  }
  if (!isFinite(xmin)) {
    xmin = 0; xmax = 1; ymin = 0; ymax = 1;
  }
  if (ymax === ymin) {
    ymax = ymin + 1;
  }
  const pad = 0.05 * (ymax - ymin);
  return { xlim: [xmin, xmax], ylim: [ymin - pad, ymax + pad] };
}

function renderPanel(out: string[], panel: Panel, box: Box): void {
  const { xlim, ylim } = dataLimits(panel.series);
  out.push(`<text x="${fmt(box.x + box.w / 2)}" y="${fmt(box.y - 6)}" font-size="11" text-anchor="middle" font-family="monospace">${panel.title}</text>`);
  drawAxes(out, box, xlim, ylim, 9);
  drawSeries(out, box, panel, xlim, ylim);
  panel.series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const lx = box.x + 8;
    const ly = box.y + 14 + 12 * i;
    const dash = s.dashed ? ' stroke-dasharray="6,4"' : "";
    out.push(`<line x1="${fmt(lx)}" y1="${fmt(ly - 3)}" x2="${fmt(lx + 18)}" y2="${fmt(ly - 3)}" stroke="${color}" stroke-width="1.5"${dash}/>`);
    out.push(`<text x="${fmt(lx + 22)}" y="${fmt(ly)}" font-size="9" font-family="monospace">${s.label}</text>`);
  });
  if (panel.inset) {
    const { xlim: ixlim, ylim: iylim } = dataLimits(panel.series, panel.inset);
    const ibox: Box = { x: box.x + box.w * 0.58, y: box.y + box.h * 0.08, w: box.w * 0.36, h: box.h * 0.34 };
    out.push(`<g class="inset">`);
    out.push(`<rect x="${fmt(ibox.x)}" y="${fmt(ibox.y)}" width="${fmt(ibox.w)}" height="${fmt(ibox.h)}" fill="#ffffff" stroke="#666" stroke-width="0.8"/>`);
    drawSeries(out, ibox, panel, ixlim, iylim);
    out.push(`</g>`);
  }
}

export function renderSvg(panels: Panel[], width = 720, height?: number, title?: string): string {
  const ncols = panels.length > 1 ? 2 : 1;
  const nrows = Math.ceil(panels.length / ncols);
  const panelW = width / ncols;
  const panelH = 240;
  const top = title ? 28 : 8;
  const total = height ?? top + nrows * panelH + 8;
  const out: string[] = [];
  out.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${total}" viewBox="0 0 ${width} ${total}">`);
  out.push(`<rect width="${width}" height="${total}" fill="#ffffff"/>`);
  if (title) {
    out.push(`<text x="${fmt(width / 2)}" y="18" font-size="13" text-anchor="middle" font-family="monospace">${title}</text>`);
  }
  panels.forEach((panel, i) => {
    const col = i % ncols;
    const row = Math.floor(i / ncols);
    const box: Box = {
      x: col * panelW + 46,
      y: top + row * panelH + 22,
      w: panelW - 64,
      h: panelH - 58,
    };
    renderPanel(out, panel, box);
  });
  out.push("</svg>");
  return out.join("\n") + "\n";
}

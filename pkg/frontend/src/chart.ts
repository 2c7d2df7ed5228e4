// SVG line chart for concentration profiles. One polyline vertex per CSV
// row, x spanning the time column exactly; no smoothing, no resampling.

import { ProfileTable } from "./csv";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface ChartLayout {
  width: number;
  height: number;
  left: number;
  right: number;
  top: number;
  bottom: number;
}

export const DEFAULT_LAYOUT: ChartLayout = {
  width: 640,
  height: 280,
  left: 56,
  right: 16,
  top: 12,
  bottom: 36,
};

function el(tag: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  return node;
}

function ticks(lo: number, hi: number, count: number): number[] {
  const out: number[] = [];
  for (let i = 0; i <= count; i++) {
    out.push(lo + ((hi - lo) * i) / count);
  }
  return out;
}

function fmtTick(value: number): string {
  const rounded = Math.round(value * 100) / 100;
  return String(rounded);
}

export function renderProfileChart(
  table: ProfileTable,
  seriesName: string,
  layout: ChartLayout = DEFAULT_LAYOUT,
): SVGSVGElement {
  const series = table.series.find((s) => s.name === seriesName);
  if (!series) {
    throw new Error(`no series named ${seriesName} in profile CSV`);
  }
  const { width, height, left, right, top, bottom } = layout;
  const plotW = width - left - right;
  const plotH = height - top - bottom;

  const t0 = table.time[0];
  const t1 = table.time[table.time.length - 1];
  const span = t1 - t0 || 1;
  const yMax = Math.max(...series.values) || 1;

  const x = (t: number) => left + ((t - t0) / span) * plotW;
  const y = (v: number) => top + plotH - (v / yMax) * plotH;

  const svg = el("svg", {
    viewBox: `0 0 ${width} ${height}`,
    width: String(width),
    height: String(height),
    class: "profile-chart",
    role: "img",
  }) as SVGSVGElement;

  // axes
  svg.append(
    el("line", {
      x1: String(left), y1: String(top + plotH),
      x2: String(left + plotW), y2: String(top + plotH),
      class: "axis",
    }),
    el("line", {
      x1: String(left), y1: String(top),
      x2: String(left), y2: String(top + plotH),
      class: "axis",
    }),
  );

  for (const t of ticks(t0, t1, 6)) {
    const px = x(t);
    svg.append(el("line", {
      x1: String(px), y1: String(top + plotH),
      x2: String(px), y2: String(top + plotH + 4),
      class: "axis",
    }));
    const label = el("text", {
      x: String(px), y: String(top + plotH + 18),
      "text-anchor": "middle", class: "tick x-tick",
    });
    label.textContent = fmtTick(t);
    svg.append(label);
  }
  for (const v of ticks(0, yMax, 4)) {
    const py = y(v);
    svg.append(el("line", {
      x1: String(left - 4), y1: String(py),
      x2: String(left), y2: String(py),
      class: "axis",
    }));
    const label = el("text", {
      x: String(left - 8), y: String(py + 4),
      "text-anchor": "end", class: "tick y-tick",
    });
    label.textContent = fmtTick(v);
    svg.append(label);
  }

  const xTitle = el("text", {
    x: String(left + plotW / 2), y: String(height - 4),
    "text-anchor": "middle", class: "axis-title",
  });
  xTitle.textContent = "time (h)";
  const yTitle = el("text", {
    x: "14", y: String(top + plotH / 2),
    "text-anchor": "middle", class: "axis-title",
    transform: `rotate(-90 14 ${top + plotH / 2})`,
  });
  yTitle.textContent = seriesName;
  svg.append(xTitle, yTitle);

  const points = table.time
    .map((t, i) => `${x(t)},${y(series.values[i])}`)
    .join(" ");
  svg.append(el("polyline", { points, class: "profile-line", fill: "none" }));

  return svg;
}

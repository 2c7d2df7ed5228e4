// Display formatting only; values are never recomputed.

import { TraceEvent } from "./types";

export function fmtNumber(value: number): string {
  if (Number.isInteger(value)) return String(value);
  const magnitude = Math.abs(value);
  if (magnitude !== 0 && (magnitude >= 1e5 || magnitude < 1e-3)) {
    return value.toExponential(3);
  }
  return String(Math.round(value * 1e4) / 1e4);
}

export function fmtValue(value: unknown): string {
  if (typeof value === "number") return fmtNumber(value);
  if (value === null || value === undefined) return "–";
  if (Array.isArray(value)) return value.map(fmtValue).join(", ");
  if (typeof value === "object") return JSON.stringify(value);
  return String(value);
}

// One-line trace row label: the tool or outcome when present, else the
// most informative payload keys.
export function summarizeEvent(event: TraceEvent): string {
  const p = event.payload;
  if (typeof p.tool === "string") {
    const rest = Object.entries(p)
      .filter(([k]) => k !== "tool")
      .slice(0, 3)
      .map(([k, v]) => `${k}=${compact(v)}`)
      .join(" ");
    return rest ? `${p.tool} ${rest}` : String(p.tool);
  }
  if (typeof p.gate === "string") {
    const rest = Object.entries(p)
      .filter(([k]) => k !== "gate")
      .map(([k, v]) => `${k}=${compact(v)}`)
      .join(" ");
    return `gate:${p.gate} ${rest}`.trim();
  }
  if (typeof p.outcome === "string") {
    return Object.entries(p)
      .map(([k, v]) => `${k}=${compact(v)}`)
      .join(" ");
  }
  return Object.entries(p)
    .slice(0, 4)
    .map(([k, v]) => `${k}=${compact(v)}`)
    .join(" ");
}

function compact(value: unknown): string {
  const text = fmtValue(value);
  return text.length > 48 ? `${text.slice(0, 45)}...` : text;
}

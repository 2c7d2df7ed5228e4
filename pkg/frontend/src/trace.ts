// Read-only joins over the polled event stream. The liability-prediction
// stage logs the full property table it saw; the review screens look the
// table up by iteration instead of recomputing anything.

import { TraceEvent } from "./types";

// Dense, strictly-ordered append: events arrive in seq order with no
// gaps; anything already present is dropped.
export function appendEvents(into: TraceEvent[], incoming: TraceEvent[]): TraceEvent[] {
  for (const event of incoming) {
    const expected = into.length === 0 ? event.seq : into[into.length - 1].seq + 1;
    if (event.seq < expected) continue; // already have it
    if (event.seq > expected) {
      throw new Error(`trace gap: expected seq ${expected}, got ${event.seq}`);
    }
    into.push(event);
  }
  return into;
}

// iteration -> predicted property table, from the prediction stage's
// enter(iteration) + tool_call(predict_admet) pairs.
export function admetByIteration(events: TraceEvent[]): Map<number, Record<string, number>> {
  const out = new Map<number, Record<string, number>>();
  let currentIteration: number | null = null;
  for (const event of events) {
    if (event.node !== "pharmacologist") continue;
    if (event.kind === "enter" && typeof event.payload.iteration === "number") {
      currentIteration = event.payload.iteration;
    } else if (
      event.kind === "tool_call" &&
      event.payload.tool === "predict_admet" &&
      currentIteration !== null &&
      typeof event.payload.profile === "object" &&
      event.payload.profile !== null
    ) {
      out.set(currentIteration, event.payload.profile as Record<string, number>);
    } else if (event.kind === "exit") {
      currentIteration = null;
    }
  }
  return out;
}

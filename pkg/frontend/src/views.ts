// Screen rendering. Pure DOM construction from service payloads plus
// user-action callbacks; no fetching, no timers, no science.

import { fmtValue, summarizeEvent } from "./format";
import { RunEntry } from "./store";
import {
  CandidateView,
  RunResultView,
  RunView,
  SteeringContext,
  TargetContext,
  TraceEvent,
} from "./types";

type Child = Node | string | null | undefined;

export function h(
  tag: string,
  attrs: Record<string, string | ((ev: Event) => void)> = {},
  ...children: Child[]
): HTMLElement {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (typeof value === "function") {
      node.addEventListener(key.replace(/^on/, ""), value);
    } else {
      node.setAttribute(key, value);
    }
  }
  for (const child of children) {
    if (child === null || child === undefined) continue;
    node.append(child);
  }
  return node;
}

// Steering shortcuts; each phrase is one the service's keyword table
// recognizes, so a click maps to a penalty category server-side.
export const STEERING_CHIPS: { label: string; phrase: string }[] = [
  { label: "clearance", phrase: "improve metabolic stability" },
  { label: "permeability", phrase: "improve membrane permeability" },
  { label: "toxicity", phrase: "reduce toxicity" },
  { label: "solubility", phrase: "improve solubility" },
  { label: "stability", phrase: "improve chemical stability" },
];

export interface LauncherHandlers {
  onStart: (req: { task: string; fixture: string }) => void;
  onOpen: (id: string) => void;
  onApiBase: (base: string) => void;
}

export function renderLauncher(
  apiBase: string,
  runs: RunEntry[],
  handlers: LauncherHandlers,
): HTMLElement {
  const task = h("textarea", {
    id: "task-input",
    rows: "2",
    placeholder: "e.g. I want to discover drugs for Diabetes.",
  }) as HTMLTextAreaElement;
  const fixture = h("select", { id: "fixture-select" }) as HTMLSelectElement;
  for (const name of ["diabetes", "pancreatic"]) {
    fixture.append(h("option", { value: name }, name));
  }
  const base = h("input", {
    id: "api-base",
    value: apiBase,
    spellcheck: "false",
  }) as HTMLInputElement;
  base.addEventListener("change", () => handlers.onApiBase(base.value.trim()));

  const start = h(
    "button",
    {
      id: "start-btn",
      class: "primary",
      onclick: () => handlers.onStart({ task: task.value, fixture: fixture.value }),
    },
    "Start run",
  );

  const list = h("ul", { class: "run-list" });
  for (const entry of runs) {
    list.append(
      h(
        "li",
        {},
        h(
          "button",
          { class: "run-link", "data-run": entry.id, onclick: () => handlers.onOpen(entry.id) },
          `${entry.fixture}: ${entry.task.slice(0, 60)} (${entry.id.slice(0, 8)})`,
        ),
      ),
    );
  }

  return h(
    "section",
    { class: "launcher" },
    h("h2", {}, "Launch a discovery run"),
    h("label", {}, "Goal", task),
    h("label", {}, "Dataset", fixture),
    start,
    h("h3", {}, "Previous runs"),
    runs.length ? list : h("p", { class: "muted" }, "None yet."),
    h("details", {}, h("summary", {}, "Service"), h("label", {}, "API base URL", base)),
  );
}

export function renderStatus(view: RunView): HTMLElement {
  return h(
    "header",
    { class: "run-header" },
    h("span", { class: "run-id" }, `run ${view.id.slice(0, 8)}`),
    h("span", { class: `status status-${view.status}` }, view.status),
  );
}

export function renderBanner(code: string, message: string): HTMLElement {
  const text = code === "conflict" ? "decision already taken" : message;
  return h(
    "div",
    { class: `banner banner-${code}`, role: "alert" },
    text,
    code === "conflict" ? h("span", { class: "banner-detail" }, ` (${message})`) : null,
  );
}

function evidencePath(path: { nodes: string[]; relations: string[] }): HTMLElement {
  const parts: Child[] = [];
  path.nodes.forEach((node, i) => {
    if (i > 0) {
      parts.push(h("span", { class: "relation" }, ` —${path.relations[i - 1]}→ `));
    }
    parts.push(h("span", { class: "path-node" }, node));
  });
  return h("div", { class: "evidence-path" }, ...parts);
}

function candidateCard(candidate: CandidateView, proposed: boolean): HTMLElement {
  return h(
    "article",
    { class: proposed ? "candidate proposed" : "candidate" },
    h(
      "h4",
      {},
      candidate.name,
      proposed ? h("span", { class: "tag" }, "proposed") : null,
      candidate.pdb_id ? h("span", { class: "tag structure" }, `structure ${candidate.pdb_id}`) : null,
    ),
    h(
      "p",
      { class: "scores" },
      `score ${fmtValue(candidate.score)} · relevance ${fmtValue(candidate.relevance)} · novelty ${fmtValue(candidate.novelty)}`,
    ),
    h("div", { class: "paths" }, ...candidate.paths.map(evidencePath)),
  );
}

export function renderTargetGate(
  context: TargetContext,
  onDecide: (approve: boolean) => void,
): HTMLElement {
  return h(
    "section",
    { class: "gate target-gate" },
    h("h2", {}, `Proposed target: ${context.proposal.name}`),
    h(
      "p",
      { class: "muted" },
      `structure ${context.proposal.pdb_id} · evidence score ${fmtValue(context.proposal.score)}`,
    ),
    h(
      "div",
      { class: "gate-actions" },
      h("button", { id: "approve-btn", class: "primary", onclick: () => onDecide(true) }, "Approve target"),
      h("button", { id: "reject-btn", onclick: () => onDecide(false) }, "Reject"),
    ),
    h("h3", {}, "Ranked candidates"),
    ...context.candidates.map((c) => candidateCard(c, c.node_id === context.proposal.node_id)),
  );
}

export function renderAdmetTable(profile: Record<string, number> | null): HTMLElement {
  if (!profile) {
    return h("p", { class: "muted admet-pending" }, "Property table arrives with the next trace poll.");
  }
  const table = h("table", { class: "admet-table" });
  const body = h("tbody", {});
  for (const key of Object.keys(profile).sort()) {
    body.append(h("tr", {}, h("th", {}, key), h("td", {}, fmtValue(profile[key]))));
  }
  table.append(body);
  return table;
}

function pkMetrics(pk: Record<string, number> | null): HTMLElement | null {
  if (!pk) return null;
  return h(
    "p",
    { class: "pk-metrics" },
    Object.entries(pk)
      .map(([key, value]) => `${key} ${fmtValue(value)}`)
      .join(" · "),
  );
}

export function renderReviewGate(
  context: SteeringContext,
  admet: Record<string, number> | null,
  onSteer: (text: string) => void,
): HTMLElement {
  const input = h("textarea", {
    id: "steering-text",
    rows: "2",
    placeholder: "optional guidance for the next iteration",
  }) as HTMLTextAreaElement;

  const chips = h(
    "div",
    { class: "chips" },
    ...STEERING_CHIPS.map(({ label, phrase }) =>
      h(
        "button",
        {
          class: "chip",
          "data-category": label,
          onclick: () => {
            input.value = input.value ? `${input.value}; ${phrase}` : phrase;
          },
        },
        label,
      ),
    ),
  );

  return h(
    "section",
    { class: "gate review-gate" },
    h("h2", {}, `Iteration ${context.iteration} review`),
    h("p", { class: "smiles" }, context.smiles),
    h(
      "p",
      {},
      h("span", { class: `verdict-badge verdict-${context.decision.toLowerCase()}` }, context.decision),
      context.categories.length
        ? h("span", { class: "categories" }, ` flagged: ${context.categories.join(", ")}`)
        : null,
    ),
    h("blockquote", { class: "feedback" }, context.feedback),
    pkMetrics(context.pk),
    h("h3", {}, "Predicted properties"),
    renderAdmetTable(admet),
    h("h3", {}, "Steer the next iteration"),
    chips,
    input,
    h(
      "div",
      { class: "gate-actions" },
      h("button", { id: "steer-btn", class: "primary", onclick: () => onSteer(input.value) }, "Send steering"),
      h("button", { id: "no-steer-btn", onclick: () => onSteer("") }, "Continue without steering"),
    ),
  );
}

export function renderResult(
  result: RunResultView,
  admet: Record<string, number> | null,
  charts: HTMLElement[],
): HTMLElement {
  const last = result.verdicts[result.verdicts.length - 1] ?? null;
  if (!result.success) {
    return h(
      "section",
      { class: "result failure" },
      h("h2", {}, "Run failed"),
      h("p", { class: "failure-reason" }, result.failure_reason ?? "unknown reason"),
      result.target ? h("p", {}, `target was ${result.target}`) : null,
      h("p", {}, `${result.iterations} iteration(s), ${result.verdicts.length} verdict(s)`),
    );
  }
  return h(
    "section",
    { class: "result success" },
    h("h2", {}, "Approved candidate"),
    h("p", { class: "smiles result-smiles" }, result.smiles ?? ""),
    h("p", {}, `target ${result.target} · ${result.iterations} iteration(s)`),
    last ? pkMetrics(last.pk) : null,
    h("h3", {}, "Predicted properties"),
    renderAdmetTable(admet),
    charts.length ? h("h3", {}, "Concentration profile") : null,
    ...charts,
  );
}

export function renderTimeline(events: TraceEvent[]): HTMLElement {
  const list = h("ol", { class: "timeline" });
  for (const event of events) {
    list.append(
      h(
        "li",
        { class: `trace-row kind-${event.kind}`, "data-seq": String(event.seq) },
        h("span", { class: "seq" }, String(event.seq)),
        h("span", { class: "node" }, event.node),
        h("span", { class: "kind" }, event.kind),
        h("span", { class: "summary" }, summarizeEvent(event)),
      ),
    );
  }
  return h(
    "aside",
    { class: "timeline-panel" },
    h("h3", {}, `Trace (${events.length} events)`),
    list,
  );
}

export function renderRunning(): HTMLElement {
  return h("section", { class: "gate running" }, h("p", { class: "muted" }, "Pipeline working…"));
}

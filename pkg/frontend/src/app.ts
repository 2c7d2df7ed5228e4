// Single-page controller. All state beyond the remembered run-id list
// lives on the service; this class polls it and routes user actions to
// their endpoints (one action, one documented call).

import { ApiClient, ServiceApiError } from "./api";
import { parseProfileCsv, ProfileTable } from "./csv";
import { renderProfileChart } from "./chart";
import { loadApiBase, loadRuns, rememberRun, saveApiBase } from "./store";
import { admetByIteration, appendEvents } from "./trace";
import { RunView, SteeringContext, TargetContext, TraceEvent } from "./types";
import {
  h,
  renderBanner,
  renderLauncher,
  renderResult,
  renderReviewGate,
  renderRunning,
  renderStatus,
  renderTargetGate,
  renderTimeline,
} from "./views";

export const STATUS_POLL_MS = 1000;
export const TRACE_POLL_MS = 2000;

type Screen = { name: "launcher" } | { name: "run"; id: string };

export interface AppOptions {
  fetchFn?: typeof fetch;
  storage?: Storage;
}

export class App {
  private api: ApiClient;
  private storage: Storage;
  private screen: Screen = { name: "launcher" };
  private view: RunView | null = null;
  private events: TraceEvent[] = [];
  private cursor = 0;
  private banner: { code: string; message: string } | null = null;
  private profiles = new Map<string, ProfileTable>();
  private profilesRequested = false;
  private statusTimer: ReturnType<typeof setInterval> | null = null;
  private traceTimer: ReturnType<typeof setInterval> | null = null;

  constructor(
    private root: HTMLElement,
    options: AppOptions = {},
  ) {
    this.storage = options.storage ?? window.localStorage;
    this.api = new ApiClient(loadApiBase(this.storage), options.fetchFn);
  }

  start(): void {
    this.render();
  }

  async startRun(req: { task: string; fixture: string }): Promise<void> {
    try {
      const created = await this.api.createRun({ task: req.task, fixture: req.fixture });
      rememberRun(this.storage, { id: created.id, task: req.task, fixture: req.fixture });
      this.openRun(created.id);
    } catch (err) {
      this.showError(err);
    }
  }

  openRun(id: string): void {
    this.stopPolling();
    this.screen = { name: "run", id };
    this.view = null;
    this.events = [];
    this.cursor = 0;
    this.banner = null;
    this.profiles.clear();
    this.profilesRequested = false;
    this.render();
    void this.pollStatus();
    void this.pollTrace();
    this.statusTimer = setInterval(() => void this.pollStatus(), STATUS_POLL_MS);
    this.traceTimer = setInterval(() => void this.pollTrace(), TRACE_POLL_MS);
  }

  closeRun(): void {
    this.stopPolling();
    this.screen = { name: "launcher" };
    this.view = null;
    this.banner = null;
    this.render();
  }

  private stopPolling(): void {
    if (this.statusTimer !== null) clearInterval(this.statusTimer);
    if (this.traceTimer !== null) clearInterval(this.traceTimer);
    this.statusTimer = null;
    this.traceTimer = null;
  }

  private async pollStatus(): Promise<void> {
    if (this.screen.name !== "run") return;
    const id = this.screen.id;
    try {
      const view = await this.api.getRun(id);
      this.view = view;
      if (view.status.startsWith("finished")) {
        if (this.statusTimer !== null) {
          clearInterval(this.statusTimer);
          this.statusTimer = null;
        }
        if (view.status === "finished_success" && view.result) {
          void this.loadProfiles(id, view.result.profiles);
        }
      }
      this.render();
    } catch (err) {
      this.showError(err);
    }
  }

  private async pollTrace(): Promise<void> {
    if (this.screen.name !== "run") return;
    const id = this.screen.id;
    try {
      const page = await this.api.getTrace(id, this.cursor);
      appendEvents(this.events, page.events);
      this.cursor = page.next;
      if (page.status.startsWith("finished") && this.traceTimer !== null) {
        // this page carried every remaining event; the stream is closed
        clearInterval(this.traceTimer);
        this.traceTimer = null;
      }
      this.render();
    } catch (err) {
      this.showError(err);
    }
  }

  private async loadProfiles(id: string, profiles: string[]): Promise<void> {
    if (this.profilesRequested) return;
    this.profilesRequested = true;
    for (const smiles of profiles) {
      try {
        const text = await this.api.getProfileCsv(id, smiles);
        this.profiles.set(smiles, parseProfileCsv(text));
      } catch (err) {
        this.showError(err);
      }
    }
    this.render();
  }

  async decide(body: { gate: string } & Record<string, unknown>): Promise<void> {
    if (this.screen.name !== "run") return;
    const id = this.screen.id;
    try {
      await this.api.postDecision(id, body);
      this.banner = null;
      await this.pollStatus();
    } catch (err) {
      this.showError(err);
    }
  }

  private showError(err: unknown): void {
    this.banner =
      err instanceof ServiceApiError
        ? { code: err.code, message: err.message }
        : { code: "error", message: String(err) };
    this.render();
  }

  private setApiBase(base: string): void {
    saveApiBase(this.storage, base);
    this.api = new ApiClient(base);
    this.render();
  }

  private render(): void {
    // a full re-render would wipe in-progress steering text; carry it over
    const steering = this.root.querySelector<HTMLTextAreaElement>("#steering-text");
    const draft = steering?.value ?? null;

    if (this.screen.name === "launcher") {
      this.root.replaceChildren(
        this.banner ? renderBanner(this.banner.code, this.banner.message) : "",
        renderLauncher(this.api.base, loadRuns(this.storage), {
          onStart: (req) => void this.startRun(req),
          onOpen: (id) => this.openRun(id),
          onApiBase: (base) => this.setApiBase(base),
        }),
      );
      return;
    }

    const children: (Node | string)[] = [
      h("button", { id: "back-btn", onclick: () => this.closeRun() }, "← runs"),
    ];
    if (this.view) children.push(renderStatus(this.view));
    if (this.banner) children.push(renderBanner(this.banner.code, this.banner.message));
    children.push(this.renderMain());
    children.push(renderTimeline(this.events));
    this.root.replaceChildren(...children);

    if (draft !== null) {
      const restored = this.root.querySelector<HTMLTextAreaElement>("#steering-text");
      if (restored) restored.value = draft;
    }
  }

  private renderMain(): HTMLElement {
    const view = this.view;
    if (!view) return renderRunning();

    if (view.status === "awaiting_decision" && view.pending) {
      const context = view.pending.context;
      if (context.gate === "target_approval") {
        return renderTargetGate(context as TargetContext, (approve) =>
          void this.decide({ gate: "target_approval", approve }),
        );
      }
      const steering = context as SteeringContext;
      const admet = admetByIteration(this.events).get(steering.iteration) ?? null;
      return renderReviewGate(steering, admet, (text) =>
        void this.decide({ gate: "steering", text }),
      );
    }

    if (view.status.startsWith("finished")) {
      if (!view.result) {
        return h(
          "section",
          { class: "result failure" },
          h("h2", {}, "Run failed"),
          h("p", { class: "failure-reason" }, view.error ?? "no result recorded"),
        );
      }
      const admet = admetByIteration(this.events).get(view.result.iterations) ?? null;
      const charts: HTMLElement[] = [];
      for (const [smiles, table] of this.profiles) {
        const figure = h("figure", { class: "profile-figure", "data-smiles": smiles });
        figure.append(renderProfileChart(table, "central_ugml"));
        figure.append(h("figcaption", {}, smiles));
        charts.push(figure);
      }
      return renderResult(view.result, admet, charts);
    }

    return renderRunning();
  }
}

// Typed client for the run service. One method per documented endpoint;
// every user action in the UI funnels through exactly one of these.

import { RunRequest, RunView, TracePage } from "./types";

export class ServiceApiError extends Error {
  constructor(
    public code: string,
    message: string,
    public status: number,
  ) {
    super(message);
    this.name = "ServiceApiError";
  }
}

async function raise(res: Response): Promise<never> {
  let code = "error";
  let message = `${res.status} ${res.statusText}`;
  try {
    const body = await res.json();
    if (body && typeof body.code === "string") code = body.code;
    if (body && typeof body.message === "string") message = body.message;
  } catch {
    // non-JSON error body: keep the HTTP status text
  }
  throw new ServiceApiError(code, message, res.status);
}

export class ApiClient {
  constructor(
    public base: string,
    private fetchFn: typeof fetch = (...args) => fetch(...args),
  ) {}

  private url(path: string): string {
    return this.base.replace(/\/$/, "") + path;
  }

  async createRun(request: RunRequest): Promise<{ id: string; status: string }> {
    const res = await this.fetchFn(this.url("/runs"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
    });
    if (!res.ok) await raise(res);
    return res.json();
  }

  async getRun(id: string): Promise<RunView> {
    const res = await this.fetchFn(this.url(`/runs/${id}`));
    if (!res.ok) await raise(res);
    return res.json();
  }

  async getTrace(id: string, since: number): Promise<TracePage> {
    const res = await this.fetchFn(this.url(`/runs/${id}/trace?since=${since}`));
    if (!res.ok) await raise(res);
    return res.json();
  }

  async postDecision(
    id: string,
    body: { gate: string } & Record<string, unknown>,
  ): Promise<{ ok: boolean; gate: string; status: string }> {
    const res = await this.fetchFn(this.url(`/runs/${id}/decision`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!res.ok) await raise(res);
    return res.json();
  }

  async getProfileCsv(id: string, smiles: string): Promise<string> {
    const res = await this.fetchFn(
      this.url(`/runs/${id}/profile/${encodeURIComponent(smiles)}`),
    );
    if (!res.ok) await raise(res);
    return res.text();
  }
}

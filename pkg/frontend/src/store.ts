// The only client-side persistence: the service base URL and the list of
// run ids this browser started. Everything else is refetched, so a
// reload mid-run reconstructs the same views from service state.

export interface RunEntry {
  id: string;
  task: string;
  fixture: string;
}

const RUNS_KEY = "drugdesk.runs";
const BASE_KEY = "drugdesk.apiBase";

export const DEFAULT_API_BASE = "http://127.0.0.1:8000";

export function loadRuns(storage: Storage): RunEntry[] {
  try {
    const raw = storage.getItem(RUNS_KEY);
    if (!raw) return [];
    const parsed = JSON.parse(raw);
    return Array.isArray(parsed) ? parsed : [];
  } catch {
    return [];
  }
}

export function rememberRun(storage: Storage, entry: RunEntry): void {
  const runs = loadRuns(storage).filter((r) => r.id !== entry.id);
  runs.unshift(entry);
  storage.setItem(RUNS_KEY, JSON.stringify(runs.slice(0, 50)));
}

export function loadApiBase(storage: Storage): string {
  return storage.getItem(BASE_KEY) || DEFAULT_API_BASE;
}

export function saveApiBase(storage: Storage, base: string): void {
  storage.setItem(BASE_KEY, base);
}

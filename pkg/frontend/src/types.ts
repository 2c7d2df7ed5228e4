// Wire types for the run service. The UI renders these payloads as-is;
// nothing here is computed client-side.

export type RunStatus =
  | "running"
  | "awaiting_decision"
  | "finished_success"
  | "finished_failure";

export interface EvidencePathView {
  nodes: string[];
  relations: string[];
}

export interface CandidateView {
  node_id: string;
  name: string;
  score: number;
  relevance: number;
  novelty: number;
  pdb_id: string | null;
  paths: EvidencePathView[];
}

export interface TargetContext {
  gate: "target_approval";
  proposal: { name: string; node_id: string; pdb_id: string; score: number };
  candidates: CandidateView[];
}

export interface SteeringContext {
  gate: "steering";
  iteration: number;
  smiles: string;
  decision: string;
  categories: string[];
  feedback: string;
  pk: Record<string, number> | null;
}

export type GateContext = TargetContext | SteeringContext;

export interface PendingGate {
  gate: string;
  context: GateContext;
}

export interface VerdictView {
  decision: string;
  categories: string[];
  feedback: string;
  pk: Record<string, number> | null;
}

export interface RunResultView {
  success: boolean;
  smiles: string | null;
  target: string | null;
  iterations: number;
  failure_reason: string | null;
  verdicts: VerdictView[];
  profiles: string[];
}

export interface RunView {
  id: string;
  status: RunStatus;
  pending: PendingGate | null;
  result: RunResultView | null;
  error?: string;
}

export interface TraceEvent {
  seq: number;
  node: string;
  kind: string;
  payload: Record<string, unknown>;
  ts: number;
}

export interface TracePage {
  events: TraceEvent[];
  next: number;
  status: RunStatus;
}

export interface RunRequest {
  task: string;
  fixture?: string;
  seed?: number;
  max_iterations?: number;
}

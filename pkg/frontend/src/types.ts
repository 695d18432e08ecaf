// Wire types of the session API.

export interface SchemaPayload {
  labels: string[];
  relationship_types: Record<string, { source: string; target: string }>;
  properties: Record<string, string[]>;
}

export interface SummaryPayload {
  node_count: number;
  relationship_count: number;
  labels: Record<string, number>;
  types: Record<string, number>;
}

export interface Candidate {
  id: string;
  script: string;
  explanation: string;
  score: number;
  kind: string;
  algorithm: string | null;
}

export interface Diagnostics {
  message: string;
  furthest_span: [number, number];
  productions: string[];
}

export interface QuestionResponse {
  turn_id: number;
  candidates: Candidate[];
  diagnostics: Diagnostics | null;
}

export interface MemoryEstimate {
  nodeCount: number;
  relationshipCount: number;
  bytesMin: number;
  bytesMax: number;
  requiredMemory: string;
}

export interface ExecuteResponse {
  turn_id: number;
  candidate_id?: string;
  columns: string[];
  rows: unknown[][];
  estimates: MemoryEstimate[];
  error: { message: string; statement_index: number | null } | null;
}

export interface FeedbackResponse {
  production: string;
  key: string;
  sum: number;
  count: number;
  mean: number;
}

export interface VocabularyResponse {
  lexicon_version: number;
}

export interface ApiError {
  status: number;
  detail: unknown;
}

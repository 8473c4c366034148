/** JSON shapes served by the topicnav HTTP API. The UI never derives a
 * displayed number itself; everything here comes back from the service. */

export interface JobInfo {
  id: string;
  kind: 'ingest' | 'index' | 'lda' | 'induce';
  experiment: string;
  state: 'queued' | 'running' | 'done' | 'failed';
  progress: number;
  error: string | null;
}

export interface ExperimentSummary {
  id: string;
  artifacts: Record<string, boolean>;
  jobs: JobInfo[];
}

export interface ExperimentList {
  experiments: ExperimentSummary[];
}

export interface SeedCoverage {
  seed: string;
  in_vocab: boolean;
  max_weight: number;
  covered: boolean;
}

export interface InducedTopic {
  seed: string;
  signature: string[];
  weights: number[];
}

export interface InductionPayload {
  seeds: string[];
  k: number;
  final_n: number;
  model_ref: string;
  coverage: SeedCoverage[];
  topics: InducedTopic[];
  warnings: string[];
}

export interface Hit {
  id: string;
  score: number;
  doc_length: number;
}

export interface QueryResult {
  query: {
    terms: string[];
    threshold: number;
    min_terms: number;
    limit: number | null;
  };
  warnings: string[];
  hits: Hit[];
}

export interface DocumentText {
  id: string;
  date: string | null;
  raw_text: string;
  token_count: number;
}

export interface ApiErrorBody {
  error: { code: string; message: string };
}

export interface TopicsRequest {
  seeds: string[];
  K?: number;
  n_start?: number;
  n_max?: number;
  iterations?: number;
  burn_in?: number;
  sample_lag?: number;
  seed?: number;
}

export interface QueryRequest {
  terms?: string[];
  topic_ref?: string;
  threshold?: number;
  min_terms?: number;
  limit?: number | null;
  use_signature_weights?: boolean;
}

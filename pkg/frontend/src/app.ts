import type { ApiClient } from './api';
import type { ViewState } from './state';
import { DEFAULT_STATE, encodeState } from './state';
import type { DocumentText, InductionPayload, QueryResult } from './types';

export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs: number,
): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(() => fn(...args), waitMs);
  };
}

export interface ControllerOptions {
  api: ApiClient;
  experiment: string;
  /** called with the latest URL query string whenever the state changes */
  pushUrl?: (search: string) => void;
  /** called with fresh service data after every re-query */
  onUpdate?: (result: QueryResult, doc: DocumentText | null) => void;
  debounceMs?: number;
}

/**
 * Retrieval controller: threshold and min-terms changes are debounced and
 * answered by full re-queries against the service — the client never
 * rescores or filters hits itself, so the view is exactly the engine's
 * contract. All state is mirrored into the URL.
 */
export class RetrievalController {
  private state: ViewState;
  private doc: DocumentText | null = null;
  private lastResult: QueryResult | null = null;
  private signatureTerms: string[] = [];
  private readonly requery: () => void;
  private inflight: Promise<void> = Promise.resolve();

  constructor(private readonly options: ControllerOptions) {
    this.state = { ...DEFAULT_STATE, experiment: options.experiment };
    this.requery = debounce(() => {
      this.inflight = this.runQuery();
    }, options.debounceMs ?? 250);
  }

  get currentState(): ViewState {
    return { ...this.state };
  }

  get result(): QueryResult | null {
    return this.lastResult;
  }

  /** selecting an induced signature pre-fills the query terms */
  useSignature(payload: InductionPayload, seed: string): void {
    const topic = payload.topics.find((t) => t.seed === seed);
    if (!topic) throw new Error(`no induced topic with seed ${seed}`);
    this.state.topicSeed = seed;
    this.state.terms = [...topic.signature];
    this.signatureTerms = [...topic.signature];
    this.syncUrl();
    this.requery();
  }

  setTerms(terms: string[]): void {
    this.state.topicSeed = null;
    this.state.terms = [...terms];
    this.signatureTerms = [...terms];
    this.syncUrl();
    this.requery();
  }

  setThreshold(threshold: number): void {
    this.state.threshold = threshold;
    this.syncUrl();
    this.requery();
  }

  setMinTerms(minTerms: number): void {
    this.state.minTerms = minTerms;
    this.syncUrl();
    this.requery();
  }

  async openDocument(docId: string): Promise<void> {
    this.state.docId = docId;
    this.syncUrl();
    this.doc = await this.options.api.getDocument(
      this.options.experiment,
      docId,
    );
    this.emit();
  }

  /** resolves once the most recent debounced re-query has been answered */
  settled(): Promise<void> {
    return this.inflight;
  }

  private async runQuery(): Promise<void> {
    const { api, experiment } = this.options;
    this.lastResult = await api.query(experiment, {
      ...(this.state.topicSeed
        ? { topic_ref: this.state.topicSeed }
        : { terms: this.state.terms }),
      threshold: this.state.threshold,
      min_terms: this.state.minTerms,
    });
    this.emit();
  }

  private emit(): void {
    if (this.lastResult && this.options.onUpdate) {
      this.options.onUpdate(this.lastResult, this.doc);
    }
  }

  private syncUrl(): void {
    this.options.pushUrl?.(encodeState(this.state));
  }

  get highlightTerms(): string[] {
    return [...this.signatureTerms];
  }
}

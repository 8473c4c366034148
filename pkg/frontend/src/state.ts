/**
 * View state lives entirely in the URL so a refresh reproduces the view
 * from service responses alone: experiment id, selected topic seed, free
 * query terms, threshold, and min-terms are all encoded as query params.
 */

export interface ViewState {
  experiment: string | null;
  topicSeed: string | null;
  terms: string[];
  threshold: number;
  minTerms: number;
  docId: string | null;
}

export const DEFAULT_STATE: ViewState = {
  experiment: null,
  topicSeed: null,
  terms: [],
  threshold: 0.5,
  minTerms: 0,
  docId: null,
};

export function encodeState(state: ViewState): string {
  const params = new URLSearchParams();
  if (state.experiment) params.set('exp', state.experiment);
  if (state.topicSeed) params.set('topic', state.topicSeed);
  if (state.terms.length > 0) params.set('terms', state.terms.join(','));
  if (state.threshold !== DEFAULT_STATE.threshold) {
    params.set('threshold', String(state.threshold));
  }
  if (state.minTerms !== DEFAULT_STATE.minTerms) {
    params.set('min_terms', String(state.minTerms));
  }
  if (state.docId) params.set('doc', state.docId);
  return params.toString();
}

export function decodeState(search: string): ViewState {
  const params = new URLSearchParams(search);
  const threshold = Number(params.get('threshold'));
  const minTerms = Number(params.get('min_terms'));
  return {
    experiment: params.get('exp'),
    topicSeed: params.get('topic'),
    terms: (params.get('terms') ?? '')
      .split(',')
      .map((t) => t.trim())
      .filter((t) => t.length > 0),
    threshold: Number.isFinite(threshold) && params.has('threshold')
      ? threshold
      : DEFAULT_STATE.threshold,
    minTerms: Number.isInteger(minTerms) && params.has('min_terms')
      ? minTerms
      : DEFAULT_STATE.minTerms,
    docId: params.get('doc'),
  };
}

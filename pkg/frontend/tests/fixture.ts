import type { FetchLike } from '../src/api';
import type {
  DocumentText,
  Hit,
  InductionPayload,
  QueryRequest,
} from '../src/types';

/**
 * Scripted stand-in for the topicnav service. It holds a fixed induction
 * payload and a fixed score table, and answers queries with real threshold
 * and min-terms filtering so monotonicity can be observed end to end.
 */
export interface FixtureDoc {
  id: string;
  score: number;
  doc_length: number;
  raw_text: string;
}

export interface ServiceFixture {
  fetch: FetchLike;
  requests: { url: string; body?: unknown }[];
}

export const SAMPLE_PAYLOAD: InductionPayload = {
  seeds: ['eleição', 'educação'],
  k: 10,
  final_n: 2,
  model_ref: 'lda',
  coverage: [
    { seed: 'eleição', in_vocab: true, max_weight: 0.31, covered: true },
    { seed: 'educação', in_vocab: true, max_weight: 0.22, covered: true },
  ],
  topics: [
    {
      seed: 'eleição',
      signature: [
        'eleição', 'partido', 'seção', 'mesa', 'pleito',
        'voto', 'presidente', 'chapa', 'titulo', 'urna',
      ],
      weights: [0.31, 0.11, 0.09, 0.08, 0.07, 0.06, 0.05, 0.04, 0.03, 0.02],
    },
    {
      seed: 'educação',
      signature: [
        'educação', 'escola', 'ensino', 'aluno', 'professor',
        'aula', 'turma', 'prova', 'livro', 'matricula',
      ],
      weights: [0.22, 0.1, 0.09, 0.08, 0.07, 0.06, 0.05, 0.04, 0.03, 0.02],
    },
  ],
  warnings: [],
};

export const SAMPLE_DOCS: FixtureDoc[] = [
  { id: 'doc1', score: 0.91, doc_length: 12, raw_text: 'a urna recebeu o voto da eleição' },
  { id: 'doc2', score: 0.74, doc_length: 9, raw_text: 'o partido venceu o pleito' },
  { id: 'doc3', score: 0.55, doc_length: 15, raw_text: 'a mesa da seção apurou a urna' },
  { id: 'doc4', score: 0.32, doc_length: 7, raw_text: 'o presidente da chapa discursou' },
  { id: 'doc5', score: 0.1, doc_length: 20, raw_text: 'a escola abriu matricula' },
];

function json(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'Content-Type': 'application/json' },
  });
}

export function makeServiceFixture(
  payload: InductionPayload = SAMPLE_PAYLOAD,
  docs: FixtureDoc[] = SAMPLE_DOCS,
): ServiceFixture {
  const requests: { url: string; body?: unknown }[] = [];

  const fetchImpl: FetchLike = async (url, init) => {
    const body = init?.body ? JSON.parse(init.body as string) : undefined;
    requests.push({ url, body });

    if (url.endsWith('/topics') && (!init || init.method !== 'POST')) {
      return json(payload);
    }
    if (url.endsWith('/topics')) {
      return json(payload);
    }
    if (url.endsWith('/query')) {
      const req = body as QueryRequest;
      const threshold = req.threshold ?? 0.5;
      const minTerms = req.min_terms ?? 0;
      const hits: Hit[] = docs
        .filter((d) => d.score >= threshold && d.doc_length >= minTerms)
        .sort((a, b) => b.score - a.score || a.id.localeCompare(b.id))
        .map(({ id, score, doc_length }) => ({ id, score, doc_length }));
      return json({
        query: {
          terms: req.terms ?? payload.topics[0].signature,
          threshold,
          min_terms: minTerms,
          limit: req.limit ?? null,
        },
        warnings: [],
        hits,
      });
    }
    const docMatch = url.match(/\/documents\/([^/?]+)$/);
    if (docMatch) {
      const doc = docs.find((d) => d.id === decodeURIComponent(docMatch[1]));
      if (!doc) {
        return json({ error: { code: 'ARTIFACT_MISSING', message: 'no such document' } }, 404);
      }
      const text: DocumentText = {
        id: doc.id,
        date: null,
        raw_text: doc.raw_text,
        token_count: doc.doc_length,
      };
      return json(text);
    }
    return json({ error: { code: 'ARTIFACT_MISSING', message: `no route for ${url}` } }, 404);
  };

  return { fetch: fetchImpl, requests };
}

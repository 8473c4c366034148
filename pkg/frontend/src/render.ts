import type {
  DocumentText,
  ExperimentSummary,
  InductionPayload,
  QueryResult,
} from './types';

/** Pure HTML-string renderers: every number shown comes straight from a
 * service response, so the views are trivially reproducible from the API. */

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;')
    .replace(/'/g, '&#39;');
}

function latestJobState(exp: ExperimentSummary): string {
  const job = exp.jobs[exp.jobs.length - 1];
  if (!job) return exp.artifacts['index'] ? 'ready' : 'empty';
  if (job.state === 'done') return 'ready';
  if (job.state === 'failed') return `failed: ${job.error ?? 'unknown error'}`;
  return `${job.kind} ${job.state} (${Math.round(job.progress * 100)}%)`;
}

export function renderExperimentPicker(experiments: ExperimentSummary[]): string {
  if (experiments.length === 0) {
    return '<p class="empty">No experiments yet.</p>';
  }
  const rows = experiments
    .map((exp) => {
      const artifacts = Object.entries(exp.artifacts)
        .filter(([, present]) => present)
        .map(([kind]) => escapeHtml(kind))
        .join(', ');
      return (
        `<tr data-experiment="${escapeHtml(exp.id)}">` +
        `<td class="exp-id">${escapeHtml(exp.id)}</td>` +
        `<td class="exp-status">${escapeHtml(latestJobState(exp))}</td>` +
        `<td class="exp-artifacts">${artifacts || '&mdash;'}</td>` +
        `</tr>`
      );
    })
    .join('');
  return (
    '<table class="experiment-picker">' +
    '<thead><tr><th>Experiment</th><th>Status</th><th>Artifacts</th></tr></thead>' +
    `<tbody>${rows}</tbody></table>`
  );
}

export function renderWorkbench(payload: InductionPayload): string {
  const coverageRows = payload.coverage
    .map(
      (c) =>
        `<tr class="${c.covered ? 'covered' : 'uncovered'}">` +
        `<td>${escapeHtml(c.seed)}</td>` +
        `<td>${c.in_vocab ? 'yes' : 'no'}</td>` +
        `<td>${c.max_weight}</td>` +
        `<td>${c.covered ? 'covered' : `not covered at n &le; ${payload.final_n}`}</td>` +
        `</tr>`,
    )
    .join('');

  const topicCards = payload.topics
    .map((topic) => {
      const words = topic.signature
        .map(
          (term, i) =>
            `<li class="sig-word" data-term="${escapeHtml(term)}">` +
            `${escapeHtml(term)} <span class="weight">${topic.weights[i]}</span></li>`,
        )
        .join('');
      return (
        `<section class="topic-card" data-seed="${escapeHtml(topic.seed)}">` +
        `<h3>${escapeHtml(topic.seed)}</h3><ol class="signature">${words}</ol>` +
        `<button class="use-as-query" data-seed="${escapeHtml(topic.seed)}">` +
        `Query with this signature</button></section>`
      );
    })
    .join('');

  const warnings = payload.warnings
    .map((w) => `<li class="warning">${escapeHtml(w)}</li>`)
    .join('');

  return (
    `<div class="workbench">` +
    `<p class="escalation">Seeds covered with n = ${payload.final_n} topics per seed ` +
    `(K = ${payload.k}).</p>` +
    '<table class="coverage"><thead><tr>' +
    '<th>Seed</th><th>In vocabulary</th><th>Max weight</th><th>Coverage</th>' +
    `</tr></thead><tbody>${coverageRows}</tbody></table>` +
    `<div class="topics">${topicCards}</div>` +
    (warnings ? `<ul class="warnings">${warnings}</ul>` : '') +
    '</div>'
  );
}

export function highlightTerms(rawText: string, terms: string[]): string {
  const escaped = escapeHtml(rawText);
  if (terms.length === 0) return escaped;
  const pattern = terms
    .map((t) => escapeHtml(t).replace(/[.*+?^${}()|[\]\\]/g, '\\$&'))
    .join('|');
  return escaped.replace(
    new RegExp(`(?<![\\p{L}])(${pattern})(?![\\p{L}])`, 'gu'),
    '<mark>$1</mark>',
  );
}

export function renderRetrievalView(
  result: QueryResult,
  doc: DocumentText | null = null,
  signatureTerms: string[] = [],
): string {
  const hits = result.hits
    .map(
      (h) =>
        `<li class="hit" data-doc="${escapeHtml(h.id)}">` +
        `<span class="hit-id">${escapeHtml(h.id)}</span> ` +
        `<span class="hit-score">${h.score.toFixed(4)}</span> ` +
        `<span class="hit-length">${h.doc_length} tokens</span></li>`,
    )
    .join('');
  const warnings = result.warnings
    .map((w) => `<li class="warning">${escapeHtml(w)}</li>`)
    .join('');

  const reader = doc
    ? `<article class="reader" data-doc="${escapeHtml(doc.id)}">` +
      `<header>${escapeHtml(doc.id)}${doc.date ? ` &middot; ${escapeHtml(doc.date)}` : ''}` +
      `</header><p>${highlightTerms(doc.raw_text, signatureTerms)}</p></article>`
    : '<p class="reader empty">Select a hit to read the fragment.</p>';

  // the reader's token count sits next to the min-terms control so the user
  // can see how the open document measures against the current cutoff
  return (
    '<div class="retrieval">' +
    '<div class="controls">' +
    `<label>Threshold <input type="range" class="threshold" min="0" max="1" ` +
    `step="0.01" value="${result.query.threshold}"></label>` +
    `<label>Min terms <input type="number" class="min-terms" min="0" ` +
    `value="${result.query.min_terms}"></label>` +
    (doc ? `<span class="doc-token-count">${doc.token_count} tokens in open document</span>` : '') +
    '</div>' +
    `<ol class="hits">${hits}</ol>` +
    (warnings ? `<ul class="warnings">${warnings}</ul>` : '') +
    reader +
    '</div>'
  );
}

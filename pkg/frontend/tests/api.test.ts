import { describe, expect, it } from 'vitest';

import { ApiClient, ApiError } from '../src/api';
import { DEFAULT_STATE, decodeState, encodeState } from '../src/state';
import type { FetchLike } from '../src/api';
import type { JobInfo } from '../src/types';

function jobFetch(states: string[]): FetchLike {
  let call = 0;
  return async () => {
    const state = states[Math.min(call++, states.length - 1)];
    const job: JobInfo = {
      id: 'j1',
      kind: 'lda',
      experiment: 'exp1',
      state: state as JobInfo['state'],
      progress: state === 'done' ? 1 : 0.5,
      error: state === 'failed' ? 'boom' : null,
    };
    return new Response(JSON.stringify(job), { status: 200 });
  };
}

describe('api client', () => {
  it('polls a job until done', async () => {
    const api = new ApiClient('', jobFetch(['queued', 'running', 'done']));
    const job = await api.pollJob('j1', 1, async () => {});
    expect(job.state).toBe('done');
  });

  it('rejects when the job fails', async () => {
    const api = new ApiClient('', jobFetch(['running', 'failed']));
    await expect(api.pollJob('j1', 1, async () => {})).rejects.toThrow('boom');
  });

  it('surfaces service error codes', async () => {
    const api = new ApiClient('', async () =>
      new Response(
        JSON.stringify({ error: { code: 'SEED_NEVER_COVERED', message: 'no coverage' } }),
        { status: 422 },
      ),
    );
    const err = await api.getTopics('exp1').catch((e) => e as ApiError);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).code).toBe('SEED_NEVER_COVERED');
    expect((err as ApiError).status).toBe(422);
  });
});

describe('url state', () => {
  it('round-trips through the query string', () => {
    const state = {
      experiment: 'exp1',
      topicSeed: 'eleição',
      terms: ['urna', 'voto'],
      threshold: 0.82,
      minTerms: 3,
      docId: 'doc7',
    };
    expect(decodeState(encodeState(state))).toEqual(state);
  });

  it('falls back to defaults for an empty query string', () => {
    expect(decodeState('')).toEqual(DEFAULT_STATE);
  });
});

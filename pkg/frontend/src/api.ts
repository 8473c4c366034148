import type {
  ApiErrorBody,
  DocumentText,
  ExperimentList,
  InductionPayload,
  JobInfo,
  QueryRequest,
  QueryResult,
  TopicsRequest,
} from './types';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number,
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

/**
 * Thin typed client over the topicnav service. The fetch implementation is
 * injectable so tests can script the service without a network.
 */
export class ApiClient {
  constructor(
    private readonly baseUrl: string = '',
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      let code = 'HTTP_ERROR';
      let message = response.statusText;
      try {
        const body = (await response.json()) as ApiErrorBody;
        code = body.error.code;
        message = body.error.message;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(code, message, response.status);
    }
    return response.json() as Promise<T>;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
    });
  }

  listExperiments(): Promise<ExperimentList> {
    return this.request('/experiments');
  }

  induceTopics(expId: string, req: TopicsRequest): Promise<InductionPayload> {
    return this.post(`/experiments/${encodeURIComponent(expId)}/topics`, req);
  }

  getTopics(expId: string): Promise<InductionPayload> {
    return this.request(`/experiments/${encodeURIComponent(expId)}/topics`);
  }

  query(expId: string, req: QueryRequest): Promise<QueryResult> {
    return this.post(`/experiments/${encodeURIComponent(expId)}/query`, req);
  }

  getDocument(expId: string, docId: string): Promise<DocumentText> {
    return this.request(
      `/experiments/${encodeURIComponent(expId)}/documents/${encodeURIComponent(docId)}`,
    );
  }

  getJob(jobId: string): Promise<JobInfo> {
    return this.request(`/jobs/${encodeURIComponent(jobId)}`);
  }

  /**
   * Poll a job until it reaches a terminal state. Resolves with the final
   * job on `done`, rejects on `failed`. The sleep function is injectable so
   * tests run without real timers.
   */
  async pollJob(
    jobId: string,
    intervalMs = 1000,
    sleep: (ms: number) => Promise<void> = (ms) =>
      new Promise((resolve) => setTimeout(resolve, ms)),
  ): Promise<JobInfo> {
    for (;;) {
      const job = await this.getJob(jobId);
      if (job.state === 'done') return job;
      if (job.state === 'failed') {
        throw new ApiError('JOB_FAILED', job.error ?? 'job failed', 500);
      }
      await sleep(intervalMs);
    }
  }
}

"""HTTP facade: long-running builds as polled jobs, induction and
retrieval as request/response. Queries are always served from the last
completed artifacts; one exclusive build per experiment at a time."""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import engine, store
from .errors import (
    ArtifactMissing,
    ExperimentLocked,
    TopicNavError,
    ValidationError,
)
from .lda import LdaConfig

_STATUS_BY_CODE = {
    "VALIDATION": 422,
    "ALL_TERMS_UNKNOWN": 422,
    "SEED_NEVER_COVERED": 422,
    "EMPTY_CORPUS": 422,
    "UNDEFINED_METRIC": 422,
    "BUILD_IN_PROGRESS": 409,
    "INDEX_NOT_READY": 409,
    "ARTIFACT_MISSING": 404,
    "ARTIFACT_CORRUPT": 409,
}


@dataclass
class Job:
    id: str
    kind: str  # ingest | index | lda | induce
    experiment: str
    state: str = "queued"  # queued -> running -> done | failed
    progress: float = 0.0
    error: str | None = None

    def to_dict(self):
        return {
            "id": self.id,
            "kind": self.kind,
            "experiment": self.experiment,
            "state": self.state,
            "progress": self.progress,
            "error": self.error,
        }


class JobRegistry:
    def __init__(self):
        self._jobs: dict[str, Job] = {}
        self._exp_busy: set[str] = set()
        self._mu = threading.Lock()

    def start(self, kind: str, experiment: str, target) -> Job:
        with self._mu:
            if experiment in self._exp_busy:
                raise ExperimentLocked(
                    f"an exclusive build is already running for {experiment}"
                )
            job = Job(id=uuid.uuid4().hex[:12], kind=kind, experiment=experiment)
            self._jobs[job.id] = job
            self._exp_busy.add(experiment)

        def run():
            job.state = "running"
            try:
                target(job)
                job.progress = 1.0
                job.state = "done"
            except Exception as e:  # job errors surface via polling, not logs
                job.error = getattr(e, "code", "ENGINE_ERROR") + ": " + str(e)
                job.state = "failed"
            finally:
                with self._mu:
                    self._exp_busy.discard(experiment)

        threading.Thread(target=run, daemon=True).start()
        return job

    def get(self, job_id: str) -> Job | None:
        return self._jobs.get(job_id)

    def busy(self, experiment: str) -> bool:
        with self._mu:
            return experiment in self._exp_busy

    def for_experiment(self, experiment: str) -> list[Job]:
        return [j for j in self._jobs.values() if j.experiment == experiment]


class CreateExperiment(BaseModel):
    name: str | None = None
    corpus_path: str
    format: str = "jsonl"
    stopwords_path: str | None = None
    lexicon_path: str | None = None
    stemmer_path: str | None = None
    min_token_len: int = 2
    min_df: int = 2
    max_df_ratio: float = 0.5


class LdaRequest(BaseModel):
    n_topics_of_interest: int = Field(alias="N", ge=1)
    fragment: int = Field(alias="n", ge=1)
    alpha: float | None = None
    beta: float = 0.01
    iterations: int = 200
    burn_in: int = 100
    sample_lag: int = 20
    seed: int = 0

    model_config = {"populate_by_name": True}


class TopicsRequest(BaseModel):
    seeds: list[str]
    k: int = Field(default=10, alias="K", ge=1)
    n_start: int = 2
    n_max: int = 8
    iterations: int = 200
    burn_in: int = 100
    sample_lag: int = 20
    seed: int = 0

    model_config = {"populate_by_name": True}


class QueryRequest(BaseModel):
    terms: list[str] | None = None
    topic_ref: str | None = None
    threshold: float = 0.5
    min_terms: int = 0
    limit: int | None = None
    use_signature_weights: bool = False


class IndexNotReady(TopicNavError):
    code = "INDEX_NOT_READY"


def create_app(exp_root: str | Path) -> FastAPI:
    exp_root = Path(exp_root)
    exp_root.mkdir(parents=True, exist_ok=True)
    app = FastAPI(title="topicnav")
    jobs = JobRegistry()

    @app.exception_handler(TopicNavError)
    async def engine_error_handler(_: Request, exc: TopicNavError):
        status = _STATUS_BY_CODE.get(exc.code, 500)
        return JSONResponse(
            status_code=status,
            content={"error": {"code": exc.code, "message": str(exc)}},
        )

    def exp_dir(exp_id: str) -> Path:
        d = exp_root / exp_id
        if not d.exists():
            raise ArtifactMissing(f"no experiment {exp_id!r}")
        return d

    def require_index(exp_id: str) -> Path:
        d = exp_dir(exp_id)
        if jobs.busy(exp_id) or not store.artifact_exists(d, "index"):
            raise IndexNotReady(f"index not ready for experiment {exp_id!r}")
        return d

    @app.get("/experiments")
    def list_experiments():
        out = []
        for d in sorted(p for p in exp_root.iterdir() if p.is_dir()):
            out.append({
                "id": d.name,
                "artifacts": {
                    kind: store.artifact_exists(d, kind)
                    for kind in ("corpus", "vocab", "index", "lda", "topics")
                },
                "jobs": [j.to_dict() for j in jobs.for_experiment(d.name)],
            })
        return {"experiments": out}

    @app.post("/experiments", status_code=202)
    def create_experiment(req: CreateExperiment):
        exp_id = req.name or uuid.uuid4().hex[:8]
        d = exp_root / exp_id
        if store.artifact_exists(d, "corpus"):
            raise ValidationError(f"experiment {exp_id!r} already exists")
        d.mkdir(parents=True, exist_ok=True)

        def work(job: Job):
            engine.ingest(
                d, req.corpus_path, req.format,
                stopwords_path=req.stopwords_path,
                lexicon_path=req.lexicon_path,
                stemmer_path=req.stemmer_path,
                min_token_len=req.min_token_len,
            )
            job.progress = 0.5
            engine.build(d, min_df=req.min_df, max_df_ratio=req.max_df_ratio)

        job = jobs.start("ingest", exp_id, work)
        return {"experiment_id": exp_id, "job": job.to_dict()}

    @app.post("/experiments/{exp_id}/lda", status_code=202)
    def run_lda(exp_id: str, req: LdaRequest):
        d = require_index(exp_id)
        config = LdaConfig(
            n_topics=req.n_topics_of_interest * req.fragment,
            alpha=req.alpha, beta=req.beta, iterations=req.iterations,
            burn_in=req.burn_in, sample_lag=req.sample_lag, rng_seed=req.seed,
        )

        def work(job: Job):
            engine.run_lda(d, config)

        job = jobs.start("lda", exp_id, work)
        return {"job": job.to_dict()}

    @app.post("/experiments/{exp_id}/topics")
    def induce(exp_id: str, req: TopicsRequest):
        d = require_index(exp_id)
        template = LdaConfig(
            n_topics=1, iterations=req.iterations, burn_in=req.burn_in,
            sample_lag=req.sample_lag, rng_seed=req.seed,
        )
        return engine.induce(
            d, req.seeds, k=req.k, n_start=req.n_start, n_max=req.n_max,
            lda_template=template,
        )

    @app.post("/experiments/{exp_id}/query")
    def run_query(exp_id: str, req: QueryRequest):
        d = require_index(exp_id)
        result = engine.query(
            d, terms=req.terms, topic_seed=req.topic_ref,
            threshold=req.threshold, min_terms=req.min_terms,
            limit=req.limit, use_signature_weights=req.use_signature_weights,
        )
        return result.to_json_dict()

    @app.get("/experiments/{exp_id}/topics")
    def get_topics(exp_id: str):
        d = exp_dir(exp_id)
        if not store.artifact_exists(d, "topics"):
            raise ArtifactMissing(f"no induced topics for experiment {exp_id!r}")
        return store.load_artifact(d, "topics")

    @app.get("/experiments/{exp_id}/documents/{doc_id:path}")
    def get_document(exp_id: str, doc_id: str):
        return engine.document_text(exp_dir(exp_id), doc_id)

    @app.get("/jobs/{job_id}")
    def get_job(job_id: str):
        job = jobs.get(job_id)
        if job is None:
            raise ArtifactMissing(f"no job {job_id!r}")
        return job.to_dict()

    return app

"""Batch CLI over the engine; subcommands map 1:1 to pipeline stages so a
run can re-enter at any stage from persisted artifacts.

Exit codes: 0 ok, 2 validation, 3 engine error, 4 I/O.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import engine, store
from .errors import (
    ArtifactMissing,
    CorpusFormatError,
    StoreError,
    TopicNavError,
    ValidationError,
)
from .evaluation import (
    confusion,
    f1,
    load_ground_truth,
    precision,
    recall,
    top_k_precision,
)
from .lda import LdaConfig

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_ENGINE = 3
EXIT_IO = 4


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="topicnav")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("ingest", help="load, preprocess, and persist a corpus")
    sp.add_argument("--corpus", required=True)
    sp.add_argument("--format", choices=["jsonl", "dir"], default="jsonl")
    sp.add_argument("--stopwords")
    sp.add_argument("--lexicon")
    sp.add_argument("--stemmer")
    sp.add_argument("--min-token-len", type=int, default=2)
    sp.add_argument("--out", required=True, help="experiment directory")

    sp = sub.add_parser("index", help="build vocabulary and TF-IDF index")
    sp.add_argument("--exp", required=True)
    sp.add_argument("--min-df", type=int, default=2)
    sp.add_argument("--max-df-ratio", type=float, default=0.5)

    sp = sub.add_parser("lda", help="fit a fragmented LDA model")
    sp.add_argument("--exp", required=True)
    sp.add_argument("--n-topics-of-interest", type=int, required=True)
    sp.add_argument("--fragment", type=int, required=True)
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--beta", type=float, default=0.01)
    sp.add_argument("--iters", type=int, default=200)
    sp.add_argument("--burn-in", type=int, default=100)
    sp.add_argument("--sample-lag", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("induce", help="escalating seed-guided topic induction")
    sp.add_argument("--exp", required=True)
    sp.add_argument("--seeds", required=True, help="comma-separated seed terms")
    sp.add_argument("--k", type=int, default=10)
    sp.add_argument("--n-start", type=int, default=2)
    sp.add_argument("--n-max", type=int, default=8)
    sp.add_argument("--iters", type=int, default=200)
    sp.add_argument("--burn-in", type=int, default=100)
    sp.add_argument("--sample-lag", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("query", help="rank documents for a topical query")
    sp.add_argument("--exp", required=True)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--topic", help="seed of a persisted induced topic")
    g.add_argument("--terms", help="comma-separated query terms")
    sp.add_argument("--threshold", type=float, default=0.5)
    sp.add_argument("--min-terms", type=int, default=0)
    sp.add_argument("--limit", type=int)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("eval", help="precision metrics against a labels file")
    sp.add_argument("--exp", required=True)
    sp.add_argument("--truth", required=True, help="one relevant doc id per line")
    sp.add_argument("--predictions", required=True,
                    help="retrieval result JSON (from query --json)")
    sp.add_argument("--top-k", type=int, default=20)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("verify", help="check artifact hashes in an experiment")
    sp.add_argument("--exp", required=True)

    sp = sub.add_parser("serve", help="run the HTTP service")
    sp.add_argument("--exp-root", required=True)
    sp.add_argument("--listen", default="127.0.0.1:8000")

    return p


def _run(args) -> int:
    if args.command == "ingest":
        docs = engine.ingest(
            args.out, args.corpus, args.format,
            stopwords_path=args.stopwords, lexicon_path=args.lexicon,
            stemmer_path=args.stemmer, min_token_len=args.min_token_len,
        )
        print(f"ingested {len(docs)} documents into {args.out}")
        return EXIT_OK

    if args.command == "index":
        engine.build(args.exp, min_df=args.min_df, max_df_ratio=args.max_df_ratio)
        vocab = store.load_artifact(args.exp, "vocab")
        print(f"indexed: vocabulary of {len(vocab)} terms")
        return EXIT_OK

    if args.command == "lda":
        config = LdaConfig(
            n_topics=args.n_topics_of_interest * args.fragment,
            alpha=args.alpha, beta=args.beta, iterations=args.iters,
            burn_in=args.burn_in, sample_lag=args.sample_lag, rng_seed=args.seed,
        )
        engine.run_lda(args.exp, config)
        print(f"fitted LDA with {config.n_topics} topics")
        return EXIT_OK

    if args.command == "induce":
        template = LdaConfig(
            n_topics=1, iterations=args.iters, burn_in=args.burn_in,
            sample_lag=args.sample_lag, rng_seed=args.seed,
        )
        payload = engine.induce(
            args.exp, [s.strip() for s in args.seeds.split(",") if s.strip()],
            k=args.k, n_start=args.n_start, n_max=args.n_max,
            lda_template=template,
        )
        if args.json:
            print(json.dumps(payload, ensure_ascii=False, indent=2))
        else:
            print(f"induced {len(payload['topics'])} topics at n={payload['final_n']}")
            for t in payload["topics"]:
                print(f"  {t['seed']}: {' '.join(t['signature'])}")
            for w in payload["warnings"]:
                print(f"  warning: {w}", file=sys.stderr)
        return EXIT_OK

    if args.command == "query":
        terms = (
            [s.strip() for s in args.terms.split(",") if s.strip()]
            if args.terms else None
        )
        result = engine.query(
            args.exp, terms=terms, topic_seed=args.topic,
            threshold=args.threshold, min_terms=args.min_terms, limit=args.limit,
        )
        if args.json:
            print(json.dumps(result.to_json_dict(), ensure_ascii=False, indent=2))
        else:
            for h in result.hits:
                print(f"{h.score:.4f}\t{h.id}\t{h.doc_length}")
            for t in result.unknown_terms:
                print(f"warning: term not in vocabulary: {t}", file=sys.stderr)
        return EXIT_OK

    if args.command == "eval":
        index = store.load_artifact(args.exp, "index")
        truth = load_ground_truth(args.truth, corpus_size=index.n_docs)
        with open(args.predictions, encoding="utf-8") as fh:
            preds = json.load(fh)
        ranked = [h["id"] for h in preds["hits"]]
        cm = confusion(ranked, truth, corpus_ids=index.doc_lengths.keys())
        report = {
            "confusion": {"tp": cm.tp, "fp": cm.fp, "fn": cm.fn, "tn": cm.tn},
            "precision": precision(cm),
            "recall_informational": recall(cm) if cm.tp + cm.fn else None,
            "f1_informational": f1(cm) if cm.tp + cm.fn else None,
            "top_k": {
                "k": args.top_k,
                "precision": top_k_precision(ranked, truth, args.top_k),
            },
        }
        if args.json:
            print(json.dumps(report, ensure_ascii=False, indent=2))
        else:
            print(f"precision {report['precision']:.4f}")
            print(f"top-{args.top_k} precision {report['top_k']['precision']:.4f}")
            print(f"confusion tp={cm.tp} fp={cm.fp} fn={cm.fn} tn={cm.tn}")
        return EXIT_OK

    if args.command == "verify":
        report = store.verify(args.exp)
        bad = {k: v for k, v in report.items() if v != "ok"}
        for kind, status in report.items():
            print(f"{kind}: {status}")
        return EXIT_OK if not bad else EXIT_ENGINE

    if args.command == "serve":
        import uvicorn

        from .service import create_app

        host, _, port = args.listen.rpartition(":")
        uvicorn.run(create_app(args.exp_root), host=host or "127.0.0.1",
                    port=int(port))
        return EXIT_OK

    raise AssertionError(f"unhandled command {args.command}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on bad usage already; normalize other codes
        return EXIT_VALIDATION if e.code not in (0,) else 0
    try:
        return _run(args)
    except ValidationError as e:
        print(f"{e.code}: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except (CorpusFormatError, StoreError, ArtifactMissing, OSError) as e:
        code = getattr(e, "code", "IO_ERROR")
        print(f"{code}: {e}", file=sys.stderr)
        return EXIT_IO
    except TopicNavError as e:
        print(f"{e.code}: {e}", file=sys.stderr)
        return EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry points: disambiguate, evaluate, inspect, serve.

Exit codes: 0 success, 2 bad flags, 3 unreadable or malformed resource.
All diagnostics go to stderr so stdout stays pipeable.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import dense, sparse
from .annotation import (
    AnnotationError,
    InventoryModels,
    Resources,
    ServiceConfig,
    annotate_text,
    build_resources,
)
from .evaluation import (
    DatasetError,
    baseline_one,
    baseline_singletons,
    evaluate_predictions,
    load_dataset,
    run_evaluation,
)
from .inventory import InventoryError, load_inventory
from .pipeline import AnalysisError, get_analyzer

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RESOURCE = 3


class ResourceError(RuntimeError):
    pass


def _load_inventory_file(path: str):
    try:
        with open(path, encoding="utf-8") as f:
            return load_inventory(f)
    except OSError as exc:
        raise ResourceError(f"cannot read inventory {path}: {exc}") from exc
    except InventoryError as exc:
        raise ResourceError(f"malformed inventory {path}: {exc}") from exc


def _build_embeddings(args):
    if getattr(args, "vector_server", None):
        try:
            return dense.RemoteEmbeddingStore(args.vector_server)
        except dense.VectorServerError as exc:
            raise ResourceError(str(exc)) from exc
    if getattr(args, "embeddings", None):
        try:
            with open(args.embeddings, "rb") as f:
                return dense.load_embeddings_binary(f)
        except OSError as exc:
            raise ResourceError(f"cannot read embeddings {args.embeddings}: {exc}") from exc
        except dense.EmbeddingFormatError as exc:
            raise ResourceError(f"malformed embeddings {args.embeddings}: {exc}") from exc
    return None


def _build_single_resources(args, parser: argparse.ArgumentParser) -> Resources:
    embeddings = _build_embeddings(args)
    if args.method == "dense" and embeddings is None:
        parser.error("--method dense requires --embeddings or --vector-server")
    inventory = _load_inventory_file(args.inventory)
    bundle = InventoryModels(inventory=inventory, sparse_index=sparse.build_sparse_index(inventory))
    if embeddings is not None:
        bundle.synset_vectors = dense.build_synset_vectors(inventory, embeddings)
    return Resources(
        analyzer=args.analyzer,
        text_limit=10**9,
        models={"default": bundle},
        embeddings=embeddings,
    )


def _cmd_disambiguate(args, parser) -> int:
    resources = _build_single_resources(args, parser)
    text = sys.stdin.read()
    payload = annotate_text(resources, text, args.method, "default")
    if args.json:
        json.dump(payload, sys.stdout, ensure_ascii=False)
        sys.stdout.write("\n")
        return EXIT_OK
    for si, sentence in enumerate(payload["sentences"]):
        for span in sentence["spans"]:
            if "synset_id" in span:
                print(f"{si}\t{span['word']}\t{span['lemma']}\t{span['synset_id']}\t{span['score']:.4f}")
    return EXIT_OK


def _cmd_evaluate(args, parser) -> int:
    inventory = _load_inventory_file(args.inventory)
    try:
        with open(args.dataset, encoding="utf-8") as f:
            dataset = load_dataset(f)
    except OSError as exc:
        raise ResourceError(f"cannot read dataset {args.dataset}: {exc}") from exc
    except DatasetError as exc:
        raise ResourceError(f"malformed dataset {args.dataset}: {exc}") from exc

    if args.baseline:
        predictions = baseline_one(dataset) if args.baseline == "one" else baseline_singletons(dataset)
        report = evaluate_predictions(dataset, predictions, method_label=args.baseline)
    else:
        embeddings = _build_embeddings(args)
        if args.method == "dense" and embeddings is None:
            parser.error("--method dense requires --embeddings or --vector-server")
        index = sparse.build_sparse_index(inventory)
        if args.method == "sparse":
            def disambiguator(sentence, position):
                return sparse.disambiguate_word_sparse(index, inventory, sentence, position)
        else:
            table = dense.build_synset_vectors(inventory, embeddings)

            def disambiguator(sentence, position):
                return dense.disambiguate_word_dense(table, inventory, sentence, position, embeddings)

        report = run_evaluation(dataset, disambiguator, inventory, args.analyzer, method_label=args.method)

    print(report.format_table())
    if args.report:
        Path(args.report).write_text(json.dumps(report.to_json(), ensure_ascii=False, indent=2) + "\n",
                                     encoding="utf-8")
    return EXIT_OK


def _cmd_inspect(args, parser) -> int:
    inventory = _load_inventory_file(args.inventory)
    if args.lemma:
        for synset in inventory.candidates(args.lemma):
            hyps = ",".join(synset.hypernyms)
            print(f"{synset.id}\t{','.join(synset.synonyms)}\t{hyps}")
        return EXIT_OK
    stats = inventory.stats
    print(f"synsets\t{stats.synset_count}")
    print(f"vocabulary\t{stats.vocabulary_size}")
    print(f"w_max\t{stats.w_max}")
    print(f"s_max\t{stats.s_max}")
    return EXIT_OK


def _cmd_serve(args, parser) -> int:
    import uvicorn

    from .server import create_app

    host, _, port = args.listen.rpartition(":")
    if not host or not port.isdigit():
        parser.error(f"--listen must be host:port, got {args.listen!r}")
    try:
        config = ServiceConfig.load(args.config)
        resources = build_resources(config)
    except OSError as exc:
        parser.error(f"cannot read config {args.config}: {exc}")
    except (ValueError, InventoryError) as exc:
        parser.error(f"bad config {args.config}: {exc}")
    app = create_app(resources, webui_dir=config.webui_dir)
    uvicorn.run(app, host=host, port=int(port), log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lexsense",
                                     description="Word sense disambiguation over a sense inventory")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_model_flags(p):
        p.add_argument("--inventory", required=True, help="inventory TSV path")
        p.add_argument("--method", choices=["sparse", "dense"], default="sparse")
        p.add_argument("--embeddings", help="binary word-vector file")
        p.add_argument("--vector-server", help="host:port of a vector server")
        p.add_argument("--analyzer", default="baseline", help="registered analyzer name")

    p = sub.add_parser("disambiguate", help="annotate text from stdin")
    add_model_flags(p)
    p.add_argument("--json", action="store_true", help="emit the service JSON payload")
    p.set_defaults(fn=_cmd_disambiguate)

    p = sub.add_parser("evaluate", help="score a gold dataset")
    add_model_flags(p)
    p.add_argument("--dataset", required=True, help="evaluation TSV path")
    p.add_argument("--baseline", choices=["one", "singletons"])
    p.add_argument("--report", help="write the JSON report here")
    p.set_defaults(fn=_cmd_evaluate)

    p = sub.add_parser("inspect", help="inventory statistics or candidate lookup")
    p.add_argument("--inventory", required=True)
    p.add_argument("--lemma")
    p.set_defaults(fn=_cmd_inspect)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--config", required=True)
    p.add_argument("--listen", default="127.0.0.1:8080")
    p.set_defaults(fn=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        get_analyzer(getattr(args, "analyzer", "baseline"))
    except AnalysisError as exc:
        parser.error(str(exc))
    try:
        return args.fn(args, parser)
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (AnnotationError, AnalysisError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())

"""Shared service layer: configuration, loaded resources, and the JSON
annotation payload produced identically by the HTTP API and the CLI."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

from . import dense, sparse
from .inventory import SenseInventory, load_inventory
from .pipeline import analyze, get_analyzer

DEFAULT_TEXT_LIMIT = 20_000

METHODS = ("sparse", "dense")


class ConfigError(ValueError):
    pass


class AnnotationError(ValueError):
    """Request-level failure with a machine-readable code."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass
class ServiceConfig:
    """Parsed key-value config file.

    Recognized keys: ``analyzer`` (registered analyzer name),
    ``text_limit`` (characters), ``inventory.<name>`` (TSV path),
    ``embeddings`` (binary vector file path), ``vector_server`` (host:port),
    ``webui`` (static file directory). ``VECTOR_SERVER_ADDR`` in the
    environment overrides ``vector_server``.
    """

    analyzer: str = "baseline"
    text_limit: int = DEFAULT_TEXT_LIMIT
    inventories: list[tuple[str, Path]] = field(default_factory=list)
    embeddings_path: Path | None = None
    vector_server: str | None = None
    webui_dir: Path | None = None

    @classmethod
    def load(cls, path: str | Path) -> "ServiceConfig":
        config = cls()
        base = Path(path).parent
        for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ConfigError(f"{path}:{lineno}: expected key = value, got {line!r}")
            key, value = key.strip(), value.strip()
            if key == "analyzer":
                config.analyzer = value
            elif key == "text_limit":
                try:
                    config.text_limit = int(value)
                except ValueError:
                    raise ConfigError(f"{path}:{lineno}: text_limit must be an integer") from None
            elif key.startswith("inventory."):
                config.inventories.append((key[len("inventory."):], base / value))
            elif key == "embeddings":
                config.embeddings_path = base / value
            elif key == "vector_server":
                config.vector_server = value
            elif key == "webui":
                config.webui_dir = base / value
            else:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        if not config.inventories:
            raise ConfigError(f"{path}: at least one inventory.<name> entry is required")
        env_addr = os.environ.get("VECTOR_SERVER_ADDR")
        if env_addr:
            config.vector_server = env_addr
        return config


@dataclass
class InventoryModels:
    inventory: SenseInventory
    sparse_index: sparse.SparseIndex
    synset_vectors: dense.SynsetVectorTable | None = None


@dataclass
class Resources:
    """Everything built once at startup; immutable while serving."""

    analyzer: str
    text_limit: int
    models: dict[str, InventoryModels]
    embeddings: object | None = None  # EmbeddingStore or RemoteEmbeddingStore

    @property
    def embeddings_loaded(self) -> bool:
        return self.embeddings is not None

    def inventory_summaries(self) -> list[dict]:
        out = []
        for name, bundle in self.models.items():
            stats = bundle.inventory.stats
            out.append({
                "name": name,
                "synset_count": stats.synset_count,
                "vocabulary_size": stats.vocabulary_size,
            })
        return out


def build_resources(config: ServiceConfig) -> Resources:
    get_analyzer(config.analyzer)  # fail fast on unknown analyzer
    embeddings = None
    if config.vector_server:
        embeddings = dense.RemoteEmbeddingStore(config.vector_server)
    elif config.embeddings_path is not None:
        with open(config.embeddings_path, "rb") as f:
            embeddings = dense.load_embeddings_binary(f)
    models: dict[str, InventoryModels] = {}
    for name, path in config.inventories:
        if name in models:
            raise ConfigError(f"duplicate inventory name {name!r}")
        with open(path, encoding="utf-8") as f:
            inventory = load_inventory(f)
        bundle = InventoryModels(inventory=inventory, sparse_index=sparse.build_sparse_index(inventory))
        if embeddings is not None:
            bundle.synset_vectors = dense.build_synset_vectors(inventory, embeddings)
        models[name] = bundle
    return Resources(
        analyzer=config.analyzer,
        text_limit=config.text_limit,
        models=models,
        embeddings=embeddings,
    )


def annotate_text(resources: Resources, text: str, method: str, inventory: str | None = None) -> dict:
    """Analyze and disambiguate, returning the wire-format payload.

    Each span carries word/pos/lemma/position; spans with an assigned sense
    additionally carry synset_id, score, synonyms, and hypernyms.
    """
    if method not in METHODS:
        raise AnnotationError("unknown_method", f"unknown method {method!r}; expected one of {METHODS}")
    if inventory is None:
        inventory = next(iter(resources.models))
    bundle = resources.models.get(inventory)
    if bundle is None:
        raise AnnotationError("unknown_inventory", f"unknown inventory {inventory!r}")
    if len(text) > resources.text_limit:
        raise AnnotationError(
            "text_too_large", f"text of {len(text)} characters exceeds the limit of {resources.text_limit}"
        )
    if method == "dense" and (resources.embeddings is None or bundle.synset_vectors is None):
        raise AnnotationError("embeddings_not_loaded", "dense method requires a configured embedding source")

    sentences_payload = []
    for sentence in analyze(text, resources.analyzer):
        if method == "sparse":
            assignments = sparse.disambiguate_sentence_sparse(bundle.sparse_index, bundle.inventory, sentence)
        else:
            assignments = dense.disambiguate_sentence_dense(
                bundle.synset_vectors, bundle.inventory, sentence, resources.embeddings
            )
        by_position = {a.span_position: a for a in assignments}
        spans = []
        for span in sentence.spans:
            entry = {
                "word": span.word,
                "pos": span.pos.value,
                "lemma": span.lemma,
                "position": span.position,
            }
            assignment = by_position.get(span.position)
            if assignment is not None and not assignment.abstained:
                synset = bundle.inventory.by_id[assignment.synset_id]
                entry.update({
                    "synset_id": assignment.synset_id,
                    "score": assignment.score,
                    "synonyms": list(synset.synonyms),
                    "hypernyms": list(synset.hypernyms),
                })
            spans.append(entry)
        sentences_payload.append({"spans": spans})
    return {"sentences": sentences_payload}

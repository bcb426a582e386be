"""Dense disambiguator: averaged word embeddings for synsets and sentences.

Embeddings come either from a classic binary word-vector file or from a
remote vector server speaking line-delimited JSON over TCP. Synset vectors
are pre-computed as the mean of the embeddings found for their bag lemmas.
"""

from __future__ import annotations

import json
import logging
import socket
import socketserver
import threading
from dataclasses import dataclass, field
from typing import IO, Iterable, Mapping

import numpy as np

from .assignment import SenseAssignment, WorkCounter
from .inventory import SenseInventory
from .pipeline import AnalyzedSentence, content_lemmas

log = logging.getLogger(__name__)

METHOD = "dense"


class EmbeddingFormatError(ValueError):
    """Malformed binary embedding file; message carries the byte offset."""


@dataclass
class EmbeddingStore:
    """In-memory word -> vector map of fixed dimension (float32 storage)."""

    dimension: int
    vectors: dict[str, np.ndarray]
    source: str = "file"

    def get(self, lemma: str) -> np.ndarray | None:
        return self.vectors.get(lemma)

    def get_many(self, lemmas: Iterable[str]) -> dict[str, np.ndarray]:
        out = {}
        for lemma in lemmas:
            v = self.vectors.get(lemma)
            if v is not None:
                out[lemma] = v
        return out


def load_embeddings_binary(stream: IO[bytes]) -> EmbeddingStore:
    """Read the classic binary layout: ASCII header "<count> <dim>\\n", then per
    record the word terminated by a space and dim little-endian float32 values,
    each record optionally followed by a newline. First occurrence wins on
    duplicate words."""
    offset = 0

    def read_exact(n: int, what: str) -> bytes:
        nonlocal offset
        b = stream.read(n)
        if len(b) != n:
            raise EmbeddingFormatError(
                f"truncated while reading {what} at byte offset {offset} "
                f"(wanted {n} bytes, got {len(b)})"
            )
        offset += n
        return b

    def read_until(delim: bytes, what: str) -> bytes:
        nonlocal offset
        chunks = []
        while True:
            b = stream.read(1)
            if not b:
                raise EmbeddingFormatError(f"truncated while reading {what} at byte offset {offset}")
            offset += 1
            if b == delim:
                return b"".join(chunks)
            chunks.append(b)

    header = read_until(b"\n", "header")
    parts = header.split()
    if len(parts) != 2:
        raise EmbeddingFormatError(f"bad header {header!r} at byte offset 0")
    try:
        count, dim = int(parts[0]), int(parts[1])
    except ValueError:
        raise EmbeddingFormatError(f"non-numeric header {header!r} at byte offset 0") from None
    if count < 0 or dim <= 0:
        raise EmbeddingFormatError(f"invalid header counts {count} {dim}")

    vectors: dict[str, np.ndarray] = {}
    for i in range(count):
        word = read_until(b" ", f"word #{i}").decode("utf-8").lstrip("\n")
        raw = read_exact(4 * dim, f"vector for {word!r}")
        vec = np.frombuffer(raw, dtype="<f4").copy()
        vectors.setdefault(word, vec)
    return EmbeddingStore(dimension=dim, vectors=vectors, source="file")


def save_embeddings_binary(store: EmbeddingStore, stream: IO[bytes]) -> None:
    """Inverse of ``load_embeddings_binary``; one newline after each record."""
    stream.write(f"{len(store.vectors)} {store.dimension}\n".encode("ascii"))
    for word, vec in store.vectors.items():
        stream.write(word.encode("utf-8") + b" ")
        stream.write(np.asarray(vec, dtype="<f4").tobytes())
        stream.write(b"\n")


class VectorServerError(RuntimeError):
    pass


class RemoteEmbeddingStore:
    """Client for the JSON-lines vector protocol; one round trip per batch.

    Request:  {"op": "lookup", "words": [...]}\\n
    Response: {"dim": d, "vectors": {word: [...] | null}}\\n
    """

    source = "remote"

    def __init__(self, address: str, dimension: int | None = None, timeout: float = 10.0):
        host, _, port = address.rpartition(":")
        if not host or not port.isdigit():
            raise VectorServerError(f"bad vector server address {address!r} (want host:port)")
        self._addr = (host, int(port))
        self._timeout = timeout
        self._lock = threading.Lock()
        self.dimension = dimension
        if self.dimension is None:
            self.dimension = int(self._request([])["dim"])

    def _request(self, words: list[str]) -> dict:
        payload = json.dumps({"op": "lookup", "words": words}) + "\n"
        with self._lock:
            try:
                with socket.create_connection(self._addr, timeout=self._timeout) as sock:
                    sock.sendall(payload.encode("utf-8"))
                    with sock.makefile("r", encoding="utf-8") as f:
                        line = f.readline()
            except OSError as exc:
                raise VectorServerError(f"vector server {self._addr} unreachable: {exc}") from exc
        if not line:
            raise VectorServerError("vector server closed the connection without replying")
        response = json.loads(line)
        if "error" in response:
            raise VectorServerError(f"vector server error: {response['error']}")
        return response

    def get_many(self, lemmas: Iterable[str]) -> dict[str, np.ndarray]:
        words = list(dict.fromkeys(lemmas))
        if not words:
            return {}
        response = self._request(words)
        dim = int(response["dim"])
        if self.dimension is not None and dim != self.dimension:
            raise VectorServerError(f"dimension mismatch: server has {dim}, expected {self.dimension}")
        out = {}
        for word, values in response.get("vectors", {}).items():
            if values is not None:
                out[word] = np.asarray(values, dtype=np.float32)
        return out

    def get(self, lemma: str) -> np.ndarray | None:
        return self.get_many([lemma]).get(lemma)


class VectorServer:
    """Serves an EmbeddingStore over the JSON-lines TCP protocol."""

    def __init__(self, store: EmbeddingStore, host: str = "127.0.0.1", port: int = 0):
        outer = self

        class Handler(socketserver.StreamRequestHandler):
            def handle(self):
                for raw in self.rfile:
                    try:
                        request = json.loads(raw)
                        if request.get("op") != "lookup":
                            raise ValueError(f"unknown op {request.get('op')!r}")
                        words = request.get("words", [])
                        vectors = {
                            w: ([float(x) for x in v] if (v := outer.store.get(w)) is not None else None)
                            for w in words
                        }
                        reply = {"dim": outer.store.dimension, "vectors": vectors}
                    except (ValueError, KeyError) as exc:
                        reply = {"error": str(exc)}
                    self.wfile.write((json.dumps(reply) + "\n").encode("utf-8"))

        class Server(socketserver.ThreadingTCPServer):
            allow_reuse_address = True
            daemon_threads = True

        self.store = store
        self._server = Server((host, port), Handler)
        self._thread: threading.Thread | None = None

    @property
    def address(self) -> str:
        host, port = self._server.server_address[:2]
        return f"{host}:{port}"

    def start(self) -> "VectorServer":
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)
        self._thread.start()
        return self

    def stop(self) -> None:
        self._server.shutdown()
        self._server.server_close()

    def __enter__(self):
        return self.start()

    def __exit__(self, *exc):
        self.stop()


@dataclass(frozen=True)
class SynsetVector:
    vector: np.ndarray  # float64 mean of found bag-lemma embeddings
    covered_count: int


@dataclass
class SynsetVectorTable:
    dimension: int
    entries: dict[str, SynsetVector] = field(default_factory=dict)
    strict_size: bool = False

    def get(self, synset_id: str) -> SynsetVector | None:
        return self.entries.get(synset_id)


def build_synset_vectors(
    inv: SenseInventory, emb, strict_size: bool = False
) -> SynsetVectorTable:
    """Average each synset bag's embeddings (multiplicity preserved).

    The mean divides by the count of lemmas actually found unless
    ``strict_size`` is set, in which case it divides by the full bag size.
    Synsets with no embedded lemma are logged and omitted.
    """
    all_lemmas = {lemma for s in inv.synsets for lemma in s.bag}
    found = emb.get_many(all_lemmas)
    table = SynsetVectorTable(dimension=emb.dimension, strict_size=strict_size)
    for synset in inv.synsets:
        acc = np.zeros(emb.dimension, dtype=np.float64)
        covered = 0
        for lemma in synset.bag:
            v = found.get(lemma)
            if v is not None:
                acc += v.astype(np.float64)
                covered += 1
        if covered == 0:
            log.info("synset %s has no embedded lemmas; skipped", synset.id)
            continue
        denom = len(synset.bag) if strict_size else covered
        table.entries[synset.id] = SynsetVector(vector=acc / denom, covered_count=covered)
    return table


def sentence_vector_dense(emb, sentence: AnalyzedSentence) -> np.ndarray | None:
    """Mean embedding of the content lemmas found in the store; None if none."""
    counts = content_lemmas(sentence)
    found = emb.get_many(counts.keys())
    if not found:
        return None
    acc = np.zeros(emb.dimension, dtype=np.float64)
    total = 0
    for lemma, cnt in counts.items():
        v = found.get(lemma)
        if v is not None:
            acc += cnt * v.astype(np.float64)
            total += cnt
    return acc / total if total else None


def _cosine(a: np.ndarray, b: np.ndarray) -> float:
    denom = float(np.linalg.norm(a) * np.linalg.norm(b))
    return float(np.dot(a, b)) / denom if denom > 0 else 0.0


def disambiguate_word_dense(
    table: SynsetVectorTable,
    inv: SenseInventory,
    sentence: AnalyzedSentence,
    position: int,
    emb,
    counter: WorkCounter | None = None,
) -> SenseAssignment:
    """Cosine arg max between the sentence vector and candidate synset vectors.

    Candidates without a synset vector are skipped; abstains when the sentence
    vector is absent or all candidates were skipped. Ties go to the smallest id.
    """
    if not 0 <= position < len(sentence.spans):
        raise IndexError(f"position {position} out of range for sentence of {len(sentence.spans)} spans")
    lemma = sentence.spans[position].lemma
    candidate_ids = inv.index.get(lemma, [])
    if not candidate_ids:
        return SenseAssignment.abstain(position, METHOD)
    sent = sentence_vector_dense(emb, sentence)
    return _pick_dense(table, candidate_ids, sent, position, counter)


def _pick_dense(
    table: SynsetVectorTable,
    candidate_ids: list[str],
    sent: np.ndarray | None,
    position: int,
    counter: WorkCounter | None,
) -> SenseAssignment:
    if sent is None:
        return SenseAssignment.abstain(position, METHOD)
    best_id = None
    best_score = -np.inf
    for sid in candidate_ids:
        entry = table.get(sid)
        if entry is None:
            continue
        if counter is not None:
            counter.tick()
        score = _cosine(entry.vector, sent)
        if score > best_score:
            best_id, best_score = sid, score
    if best_id is None:
        return SenseAssignment.abstain(position, METHOD)
    return SenseAssignment(span_position=position, synset_id=best_id, score=float(best_score), method=METHOD)


def disambiguate_sentence_dense(
    table: SynsetVectorTable,
    inv: SenseInventory,
    sentence: AnalyzedSentence,
    emb,
    counter: WorkCounter | None = None,
) -> list[SenseAssignment]:
    """Disambiguate every content-word span, sharing one sentence vector."""
    sent = sentence_vector_dense(emb, sentence)
    out = []
    for span in sentence.content_spans():
        if not span.lemma:
            continue
        candidate_ids = inv.index.get(span.lemma, [])
        if not candidate_ids:
            out.append(SenseAssignment.abstain(span.position, METHOD))
            continue
        out.append(_pick_dense(table, candidate_ids, sent, span.position, counter))
    return out

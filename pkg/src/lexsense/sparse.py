"""Sparse vector-space disambiguator.

Synset bags become rows of a tf-idf weighted word-synset matrix held in
compressed sparse row form; a sentence becomes a sparse vector in the same
space, and each target word resolves to the candidate synset with maximal
cosine similarity to the sentence vector.
"""

from __future__ import annotations

import io
import math
import struct
from dataclasses import dataclass, field

import numpy as np

from .assignment import SenseAssignment, WorkCounter
from .inventory import SenseInventory
from .pipeline import AnalyzedSentence, content_lemmas

METHOD = "sparse"


@dataclass(frozen=True)
class SparseConfig:
    binary_tf: bool = False      # 0/1 term presence instead of raw counts
    smooth_idf: bool = True      # ln((1+N)/(1+df))+1 vs ln(N/df)+1
    exclude_target: bool = False  # drop the target lemma from the sentence vector


@dataclass
class SparseIndex:
    """CSR tf-idf matrix over (synset row, lemma column) plus lookup tables."""

    vocabulary: dict[str, int]
    row_ids: list[str]
    indptr: np.ndarray   # int64, len rows+1
    indices: np.ndarray  # int64, column index per stored value
    data: np.ndarray     # float64 tf-idf weights
    idf: np.ndarray      # float64 per column
    config: SparseConfig = field(default_factory=SparseConfig)

    def __post_init__(self):
        self.row_map = {sid: r for r, sid in enumerate(self.row_ids)}
        self.row_norms = np.array(
            [
                float(np.linalg.norm(self.data[self.indptr[r] : self.indptr[r + 1]]))
                for r in range(len(self.row_ids))
            ]
        )

    def row(self, synset_id: str) -> tuple[np.ndarray, np.ndarray]:
        r = self.row_map[synset_id]
        lo, hi = self.indptr[r], self.indptr[r + 1]
        return self.indices[lo:hi], self.data[lo:hi]


@dataclass(frozen=True)
class SparseSentenceVector:
    columns: np.ndarray  # int64, strictly increasing
    values: np.ndarray   # float64 tf-idf weights
    norm: float

    def as_dict(self) -> dict[int, float]:
        return dict(zip(self.columns.tolist(), self.values.tolist()))


def _tf(count: int, config: SparseConfig) -> float:
    return 1.0 if config.binary_tf else float(count)


def build_sparse_index(inv: SenseInventory, config: SparseConfig | None = None) -> SparseIndex:
    """Transform the inventory into the tf-idf word-synset CSR matrix.

    Columns are lemmas in sorted order; rows follow inventory order.
    """
    config = config or SparseConfig()
    if not inv.synsets:
        raise ValueError("cannot build a sparse index from an empty inventory")
    vocabulary = {lemma: c for c, lemma in enumerate(sorted(inv.index))}
    n = len(inv.synsets)
    idf = np.empty(len(vocabulary))
    for lemma, c in vocabulary.items():
        df = len(inv.index[lemma])
        if config.smooth_idf:
            idf[c] = math.log((1 + n) / (1 + df)) + 1.0
        else:
            idf[c] = math.log(n / df) + 1.0

    indptr = [0]
    indices: list[int] = []
    data: list[float] = []
    for synset in inv.synsets:
        counts = synset.bag_counts()
        cols = sorted(vocabulary[lemma] for lemma in counts)
        col_to_count = {vocabulary[lemma]: cnt for lemma, cnt in counts.items()}
        for c in cols:
            indices.append(c)
            data.append(_tf(col_to_count[c], config) * idf[c])
        indptr.append(len(indices))

    return SparseIndex(
        vocabulary=vocabulary,
        row_ids=[s.id for s in inv.synsets],
        indptr=np.asarray(indptr, dtype=np.int64),
        indices=np.asarray(indices, dtype=np.int64),
        data=np.asarray(data, dtype=np.float64),
        idf=idf,
        config=config,
    )


def sentence_vector_sparse(
    idx: SparseIndex, sentence: AnalyzedSentence, drop_lemma: str | None = None
) -> SparseSentenceVector:
    """tf-idf vector of the sentence's content lemmas in index space.

    Out-of-vocabulary lemmas contribute nothing. ``drop_lemma`` removes one
    count of that lemma (the exclude-target knob).
    """
    counts = content_lemmas(sentence)
    if drop_lemma is not None and counts[drop_lemma] > 0:
        counts[drop_lemma] -= 1
    cols = []
    vals = []
    for lemma in sorted(counts):
        if counts[lemma] <= 0:
            continue
        c = idx.vocabulary.get(lemma)
        if c is None:
            continue
        cols.append(c)
        vals.append(_tf(counts[lemma], idx.config) * idx.idf[c])
    columns = np.asarray(cols, dtype=np.int64)
    values = np.asarray(vals, dtype=np.float64)
    return SparseSentenceVector(columns=columns, values=values, norm=float(np.linalg.norm(values)))


def _cosine(idx: SparseIndex, synset_id: str, vec: dict[int, float], vec_norm: float) -> float:
    cols, weights = idx.row(synset_id)
    dot = 0.0
    for c, w in zip(cols.tolist(), weights.tolist()):
        v = vec.get(c)
        if v is not None:
            dot += w * v
    denom = idx.row_norms[idx.row_map[synset_id]] * vec_norm
    return dot / denom if denom > 0 else 0.0


def disambiguate_word_sparse(
    idx: SparseIndex,
    inv: SenseInventory,
    sentence: AnalyzedSentence,
    position: int,
    counter: WorkCounter | None = None,
    _sent_vec: SparseSentenceVector | None = None,
) -> SenseAssignment:
    """Pick arg max over candidate synsets of cosine(synset row, sentence vector).

    Abstains when the lemma has no candidates or the sentence vector is zero;
    ties break toward the smallest synset id (candidate order is id-sorted).
    """
    if not 0 <= position < len(sentence.spans):
        raise IndexError(f"position {position} out of range for sentence of {len(sentence.spans)} spans")
    lemma = sentence.spans[position].lemma
    candidate_ids = inv.index.get(lemma, [])
    if not candidate_ids:
        return SenseAssignment.abstain(position, METHOD)
    drop = lemma if idx.config.exclude_target else None
    sent = _sent_vec if (_sent_vec is not None and drop is None) else sentence_vector_sparse(idx, sentence, drop_lemma=drop)
    if sent.norm == 0.0:
        return SenseAssignment.abstain(position, METHOD)
    vec = sent.as_dict()
    best_id = None
    best_score = -math.inf
    for sid in candidate_ids:
        if counter is not None:
            counter.tick()
        score = _cosine(idx, sid, vec, sent.norm)
        if score > best_score:
            best_id, best_score = sid, score
    return SenseAssignment(span_position=position, synset_id=best_id, score=best_score, method=METHOD)


def disambiguate_sentence_sparse(
    idx: SparseIndex,
    inv: SenseInventory,
    sentence: AnalyzedSentence,
    counter: WorkCounter | None = None,
) -> list[SenseAssignment]:
    """Disambiguate every content-word span, sharing one sentence vector."""
    sent = sentence_vector_sparse(idx, sentence)
    return [
        disambiguate_word_sparse(idx, inv, sentence, span.position, counter=counter, _sent_vec=sent)
        for span in sentence.content_spans()
        if span.lemma
    ]


_MAGIC = b"SPX1"


def save_sparse_index(idx: SparseIndex, stream) -> None:
    """Versioned binary cache: magic, sizes, CSR arrays, idf, then string tables."""
    w = stream.write
    w(_MAGIC)
    w(struct.pack("<QQQ", len(idx.row_ids), len(idx.vocabulary), len(idx.data)))
    w(struct.pack("<??", idx.config.binary_tf, idx.config.smooth_idf))
    w(np.asarray(idx.indptr, dtype="<i8").tobytes())
    w(np.asarray(idx.indices, dtype="<i8").tobytes())
    w(np.asarray(idx.data, dtype="<f8").tobytes())
    w(np.asarray(idx.idf, dtype="<f8").tobytes())
    for sid in idx.row_ids:
        b = sid.encode("utf-8")
        w(struct.pack("<I", len(b)))
        w(b)
    for lemma in sorted(idx.vocabulary, key=idx.vocabulary.get):
        b = lemma.encode("utf-8")
        w(struct.pack("<I", len(b)))
        w(b)


def load_sparse_index(stream) -> SparseIndex:
    def read_exact(n: int) -> bytes:
        b = stream.read(n)
        if len(b) != n:
            raise ValueError(f"truncated sparse index cache (wanted {n} bytes, got {len(b)})")
        return b

    if read_exact(4) != _MAGIC:
        raise ValueError("not a sparse index cache (bad magic bytes)")
    rows, cols, nnz = struct.unpack("<QQQ", read_exact(24))
    binary_tf, smooth_idf = struct.unpack("<??", read_exact(2))
    indptr = np.frombuffer(read_exact(8 * (rows + 1)), dtype="<i8").copy()
    indices = np.frombuffer(read_exact(8 * nnz), dtype="<i8").copy()
    data = np.frombuffer(read_exact(8 * nnz), dtype="<f8").copy()
    idf = np.frombuffer(read_exact(8 * cols), dtype="<f8").copy()

    def read_str() -> str:
        (n,) = struct.unpack("<I", read_exact(4))
        return read_exact(n).decode("utf-8")

    row_ids = [read_str() for _ in range(rows)]
    vocabulary = {read_str(): c for c in range(cols)}
    return SparseIndex(
        vocabulary=vocabulary,
        row_ids=row_ids,
        indptr=indptr,
        indices=indices,
        data=data,
        idf=idf,
        config=SparseConfig(binary_tf=binary_tf, smooth_idf=smooth_idf),
    )

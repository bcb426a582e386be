"""Sense-evaluation harness: per-lemma adjusted Rand index with
instance-weighted aggregation, the One/Singletons degenerate baselines, and
V-measure kept only to demonstrate why it rewards all-singleton output.
"""

from __future__ import annotations

import logging
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import IO, Callable, Iterable, Mapping, Sequence

from .assignment import SenseAssignment
from .inventory import SenseInventory
from .pipeline import AnalyzedSentence, Analyzer, analyze

log = logging.getLogger(__name__)

ABSTAIN_LABEL = "-"


class DatasetError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class EvalInstance:
    """One gold-labeled occurrence of an ambiguous lemma in context.

    The target is addressed by character offsets into ``context``; the token
    position is resolved against the analyzer's output during evaluation.
    """

    instance_id: str
    lemma: str
    gold_sense: str
    context: str
    target_start: int
    target_end: int


@dataclass(frozen=True)
class LemmaResult:
    instance_count: int
    ari: float


@dataclass
class EvalReport:
    method_label: str
    per_lemma: dict[str, LemmaResult]
    total_ari: float
    excluded: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "method": self.method_label,
            "per_lemma": {
                lemma: {"instances": r.instance_count, "ari": r.ari}
                for lemma, r in sorted(self.per_lemma.items())
            },
            "total_ari": self.total_ari,
            "excluded": list(self.excluded),
        }

    def format_table(self) -> str:
        width = max([len(l) for l in self.per_lemma] + [len("TOTAL"), 5])
        lines = [f"{'lemma':<{width}}  instances  ARI"]
        for lemma, r in sorted(self.per_lemma.items()):
            lines.append(f"{lemma:<{width}}  {r.instance_count:>9}  {r.ari:+.4f}")
        total_n = sum(r.instance_count for r in self.per_lemma.values())
        lines.append(f"{'TOTAL':<{width}}  {total_n:>9}  {self.total_ari:+.4f}")
        if self.excluded:
            lines.append(f"excluded (unresolvable target): {len(self.excluded)}")
        return "\n".join(lines)


def _contingency(gold: Sequence, pred: Sequence) -> tuple[Counter, Counter, Counter]:
    cells = Counter(zip(gold, pred))
    return cells, Counter(gold), Counter(pred)


def _same_partition(gold: Sequence, pred: Sequence) -> bool:
    groups_g = defaultdict(list)
    groups_p = defaultdict(list)
    for i, (g, p) in enumerate(zip(gold, pred)):
        groups_g[g].append(i)
        groups_p[p].append(i)
    return {frozenset(v) for v in groups_g.values()} == {frozenset(v) for v in groups_p.values()}


def adjusted_rand_index(gold: Sequence, pred: Sequence) -> float:
    """Chance-corrected partition agreement (pair-counting form).

    Only the induced partitions matter, never the label identities.
    Degenerate cases: identical partitions score 1.0; otherwise the 0/0 of a
    vanishing denominator is taken as 0.
    """
    if len(gold) != len(pred):
        raise ValueError(f"label lists differ in length: {len(gold)} vs {len(pred)}")
    n = len(gold)
    if n == 0:
        raise ValueError("cannot score empty label lists")
    cells, gold_sizes, pred_sizes = _contingency(gold, pred)
    index = sum(math.comb(c, 2) for c in cells.values())
    sum_g = sum(math.comb(c, 2) for c in gold_sizes.values())
    sum_p = sum(math.comb(c, 2) for c in pred_sizes.values())
    pairs = math.comb(n, 2)
    if pairs == 0:
        return 1.0
    # exact rational arithmetic until the final division
    numerator = index * pairs - sum_g * sum_p
    denominator = (sum_g + sum_p) * pairs - 2 * sum_g * sum_p  # 2*pairs*(max - expected)
    if denominator == 0:
        return 1.0 if _same_partition(gold, pred) else 0.0
    return 2 * numerator / denominator


def _entropy(sizes: Iterable[int], n: int) -> float:
    return -sum((c / n) * math.log(c / n) for c in sizes if c > 0)


def v_measure(gold: Sequence, pred: Sequence) -> float:
    """Harmonic mean of homogeneity and completeness.

    Shipped as a diagnostic only: an all-singleton prediction is perfectly
    homogeneous, so this measure rewards degenerate output that the adjusted
    Rand index correctly scores at zero.
    """
    if len(gold) != len(pred):
        raise ValueError(f"label lists differ in length: {len(gold)} vs {len(pred)}")
    n = len(gold)
    if n == 0:
        raise ValueError("cannot score empty label lists")
    cells, gold_sizes, pred_sizes = _contingency(gold, pred)
    h_gold = _entropy(gold_sizes.values(), n)
    h_pred = _entropy(pred_sizes.values(), n)
    h_gold_given_pred = -sum(
        (c / n) * math.log(c / pred_sizes[p]) for (_, p), c in cells.items() if c > 0
    )
    h_pred_given_gold = -sum(
        (c / n) * math.log(c / gold_sizes[g]) for (g, _), c in cells.items() if c > 0
    )
    homogeneity = 1.0 if h_gold == 0 else 1.0 - h_gold_given_pred / h_gold
    completeness = 1.0 if h_pred == 0 else 1.0 - h_pred_given_gold / h_pred
    if homogeneity + completeness == 0:
        return 0.0
    return 2 * homogeneity * completeness / (homogeneity + completeness)


def weighted_ari(per_lemma: Mapping[str, tuple[int, float]]) -> float:
    """Instance-weighted aggregate: sum(count * ari) / sum(count)."""
    if not per_lemma:
        raise ValueError("no per-lemma results to aggregate")
    total = 0
    acc = 0.0
    for lemma, (count, ari) in per_lemma.items():
        if count < 1:
            raise ValueError(f"lemma {lemma!r} has non-positive instance count {count}")
        total += count
        acc += count * ari
    return acc / total


def load_dataset(stream: IO[str] | Iterable[str]) -> list[EvalInstance]:
    """Parse the evaluation TSV: a header naming at least
    ``context_id word gold_sense_id positions context``, then one instance per
    row with positions as ``start-end`` character offsets (first pair used)."""
    rows = iter(enumerate(stream, start=1))
    try:
        _, header_line = next(rows)
    except StopIteration:
        raise DatasetError("empty dataset (no header)") from None
    header = header_line.rstrip("\n").split("\t")
    required = ["context_id", "word", "gold_sense_id", "positions", "context"]
    missing = [c for c in required if c not in header]
    if missing:
        raise DatasetError(f"header is missing columns {missing}", line=1)
    col = {name: header.index(name) for name in required}

    instances = []
    seen_ids = set()
    for lineno, raw in rows:
        line = raw.rstrip("\n")
        if not line.strip():
            continue
        cells = line.split("\t")
        if len(cells) < len(header):
            raise DatasetError(f"expected {len(header)} columns, got {len(cells)}", line=lineno)
        instance_id = cells[col["context_id"]].strip()
        if instance_id in seen_ids:
            raise DatasetError(f"duplicate context_id {instance_id!r}", line=lineno)
        seen_ids.add(instance_id)
        positions = cells[col["positions"]].strip().split(",")[0]
        try:
            start_s, _, end_s = positions.partition("-")
            start, end = int(start_s), int(end_s)
        except ValueError:
            raise DatasetError(f"bad positions field {positions!r} (want start-end)", line=lineno) from None
        instances.append(
            EvalInstance(
                instance_id=instance_id,
                lemma=cells[col["word"]].strip().casefold(),
                gold_sense=cells[col["gold_sense_id"]].strip(),
                context=cells[col["context"]],
                target_start=start,
                target_end=end,
            )
        )
    return instances


def resolve_target(
    sentences: list[AnalyzedSentence], context: str, start: int, end: int
) -> tuple[int, int] | None:
    """Map character offsets in the raw context to (sentence index, token
    position), by re-locating each span's surface form left to right."""
    cursor = 0
    for si, sentence in enumerate(sentences):
        for span in sentence.spans:
            at = context.find(span.word, cursor)
            if at < 0:
                return None
            cursor = at + len(span.word)
            if at < end and start < cursor:
                return si, span.position
    return None


Disambiguator = Callable[[AnalyzedSentence, int], SenseAssignment]


def run_evaluation(
    dataset: Sequence[EvalInstance],
    disambiguator: Disambiguator,
    inv: SenseInventory,
    analyzer: Analyzer | str,
    method_label: str = "system",
) -> EvalReport:
    """Predict a sense for every instance and score the clustering per lemma.

    ABSTAIN maps to the shared label "-" so abstentions stay in the instance
    set (dropping them would silently reweight the aggregate). Instances whose
    target cannot be located after analysis are excluded and reported.
    """
    if not dataset:
        raise ValueError("empty evaluation dataset")
    predictions: dict[str, str] = {}
    excluded: list[str] = []
    for instance in dataset:
        sentences = analyze(instance.context, analyzer)
        located = resolve_target(sentences, instance.context, instance.target_start, instance.target_end)
        if located is None:
            log.warning("instance %s: target %d-%d not resolvable; excluded",
                        instance.instance_id, instance.target_start, instance.target_end)
            excluded.append(instance.instance_id)
            continue
        si, position = located
        assignment = disambiguator(sentences[si], position)
        predictions[instance.instance_id] = (
            ABSTAIN_LABEL if assignment.abstained else assignment.synset_id
        )
    return evaluate_predictions(dataset, predictions, method_label, excluded=excluded)


def evaluate_predictions(
    dataset: Sequence[EvalInstance],
    predictions: Mapping[str, str],
    method_label: str,
    excluded: Sequence[str] = (),
) -> EvalReport:
    """Score explicit instance -> label predictions (used for baselines too)."""
    by_lemma: dict[str, list[EvalInstance]] = defaultdict(list)
    for instance in dataset:
        if instance.instance_id in predictions:
            by_lemma[instance.lemma].append(instance)
    if not by_lemma:
        raise ValueError("no scorable instances (all excluded?)")
    per_lemma = {}
    for lemma, instances in by_lemma.items():
        gold = [i.gold_sense for i in instances]
        pred = [predictions[i.instance_id] for i in instances]
        per_lemma[lemma] = LemmaResult(instance_count=len(instances), ari=adjusted_rand_index(gold, pred))
    total = weighted_ari({l: (r.instance_count, r.ari) for l, r in per_lemma.items()})
    return EvalReport(
        method_label=method_label, per_lemma=per_lemma, total_ari=total, excluded=list(excluded)
    )


def baseline_one(dataset: Sequence[EvalInstance]) -> dict[str, str]:
    """Every instance of a lemma gets the same sense label."""
    return {i.instance_id: "1" for i in dataset}


def baseline_singletons(dataset: Sequence[EvalInstance]) -> dict[str, str]:
    """Every instance gets its own unique sense label."""
    return {i.instance_id: i.instance_id for i in dataset}

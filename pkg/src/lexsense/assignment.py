"""Shared disambiguation result type and work instrumentation."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class SenseAssignment:
    """Outcome of disambiguating one span.

    ``synset_id`` is None for ABSTAIN (no candidates, or no context signal);
    ``score`` is the cosine similarity and is None exactly when abstaining.
    """

    span_position: int
    synset_id: str | None
    score: float | None
    method: str

    @property
    def abstained(self) -> bool:
        return self.synset_id is None

    @classmethod
    def abstain(cls, position: int, method: str) -> "SenseAssignment":
        return cls(span_position=position, synset_id=None, score=None, method=method)


@dataclass
class WorkCounter:
    """Counts candidate-similarity evaluations, for complexity-bound checks."""

    candidate_evaluations: int = 0
    per_sentence: list[int] = field(default_factory=list)

    def tick(self, n: int = 1) -> None:
        self.candidate_evaluations += n

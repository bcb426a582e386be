"""Sense inventory data model, TSV parsing, and the lemma -> synset inverted index.

A synset is a bag of words: its synonyms plus its one-level hypernyms.
Disambiguation candidates for a lemma are exactly the synsets whose bag
contains that lemma, looked up through the inverted index.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import IO, Iterable


class InventoryError(ValueError):
    """Malformed inventory input."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class Synset:
    """One word sense: an id, its synonym lemmas, and its hypernym lemmas.

    Lemmas are case-folded. Multiplicity is kept: a lemma listed both as a
    synonym and a hypernym counts twice in the bag.
    """

    id: str
    synonyms: tuple[str, ...]
    hypernyms: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.synonyms:
            raise InventoryError(f"synset {self.id!r} has no synonyms")
        object.__setattr__(self, "synonyms", tuple(s.casefold() for s in self.synonyms))
        object.__setattr__(self, "hypernyms", tuple(h.casefold() for h in self.hypernyms))

    @property
    def bag(self) -> tuple[str, ...]:
        """Synonyms and hypernyms together, multiplicity preserved."""
        return self.synonyms + self.hypernyms

    def bag_counts(self) -> Counter:
        return Counter(self.bag)


@dataclass(frozen=True)
class InventoryStats:
    synset_count: int
    vocabulary_size: int
    w_max: int  # max number of synsets any one lemma occurs in
    s_max: int  # max bag size over synsets


@dataclass
class SenseInventory:
    """An ordered synset collection with its inverted index and statistics."""

    synsets: list[Synset]
    index: dict[str, list[str]] = field(init=False)
    by_id: dict[str, Synset] = field(init=False)

    def __post_init__(self):
        by_id: dict[str, Synset] = {}
        index: dict[str, list[str]] = {}
        for synset in self.synsets:
            if synset.id in by_id:
                raise InventoryError(f"duplicate synset id {synset.id!r}")
            by_id[synset.id] = synset
            for lemma in set(synset.bag):
                index.setdefault(lemma, []).append(synset.id)
        for ids in index.values():
            ids.sort()
        self.index = index
        self.by_id = by_id

    def candidates(self, lemma: str) -> list[Synset]:
        """Synsets whose bag contains the lemma, ordered by synset id."""
        return [self.by_id[sid] for sid in self.index.get(lemma.casefold(), [])]

    @property
    def stats(self) -> InventoryStats:
        return InventoryStats(
            synset_count=len(self.synsets),
            vocabulary_size=len(self.index),
            w_max=max((len(ids) for ids in self.index.values()), default=0),
            s_max=max((len(s.bag) for s in self.synsets), default=0),
        )

    def __eq__(self, other):
        return isinstance(other, SenseInventory) and self.synsets == other.synsets

    def __len__(self):
        return len(self.synsets)


def _split_lemmas(cell: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in cell.split(",") if part.strip())


def load_inventory(source: IO[str] | Iterable[str], format: str = "tsv") -> SenseInventory:
    """Parse an inventory from a text stream.

    The only supported format is "tsv": one synset per line as
    ``id<TAB>synonyms<TAB>hypernyms`` with comma-separated lemma lists; the
    hypernym column may be omitted. Blank lines and ``#`` comments are skipped.
    """
    if format != "tsv":
        raise InventoryError(f"unknown inventory format {format!r}")
    synsets = []
    for lineno, raw in enumerate(source, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cells = line.split("\t")
        if len(cells) not in (2, 3):
            raise InventoryError(
                f"expected 2 or 3 tab-separated columns, got {len(cells)}", line=lineno
            )
        synset_id = cells[0].strip()
        if not synset_id:
            raise InventoryError("empty synset id", line=lineno)
        synonyms = _split_lemmas(cells[1])
        if not synonyms:
            raise InventoryError(f"synset {synset_id!r} has an empty synonym list", line=lineno)
        hypernyms = _split_lemmas(cells[2]) if len(cells) == 3 else ()
        try:
            synsets.append(Synset(synset_id, synonyms, hypernyms))
        except InventoryError as exc:
            raise InventoryError(str(exc), line=lineno) from exc
    try:
        return SenseInventory(synsets)
    except InventoryError:
        raise


def serialize_inventory(inv: SenseInventory) -> str:
    """Canonical TSV rendering; parses back to an equal inventory."""
    lines = []
    for synset in inv.synsets:
        cells = [synset.id, ",".join(synset.synonyms)]
        if synset.hypernyms:
            cells.append(",".join(synset.hypernyms))
        lines.append("\t".join(cells))
    return "".join(line + "\n" for line in lines)

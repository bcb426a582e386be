"""Text analysis pipeline: pluggable tokenizer/tagger/lemmatizer producing spans.

A span is one analyzed token: surface form, POS tag, lemma, and position in
its sentence. Analyzers are registered by name; two self-contained ones ship
with the package (see ``baseline_analyzer`` and ``allnouns_analyzer``).
"""

from __future__ import annotations

import re
import unicodedata
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Callable


class PosTag(str, Enum):
    NOUN = "NOUN"
    VERB = "VERB"
    ADJ = "ADJ"
    ADV = "ADV"
    PRON = "PRON"
    DET = "DET"
    ADP = "ADP"
    CONJ = "CONJ"
    NUM = "NUM"
    PART = "PART"
    INTJ = "INTJ"
    PUNCT = "PUNCT"
    X = "X"


CONTENT_TAGS = frozenset({PosTag.NOUN, PosTag.VERB, PosTag.ADJ, PosTag.ADV})


def is_content(pos: PosTag) -> bool:
    return pos in CONTENT_TAGS


@dataclass(frozen=True)
class Span:
    word: str
    pos: PosTag
    lemma: str
    position: int


@dataclass(frozen=True)
class AnalyzedSentence:
    spans: tuple[Span, ...]
    source_text: str

    def content_spans(self) -> list[Span]:
        return [s for s in self.spans if is_content(s.pos)]


Analyzer = Callable[[str], list[AnalyzedSentence]]


class AnalysisError(RuntimeError):
    """An analyzer failed; carries positional context when known."""


_ANALYZERS: dict[str, Analyzer] = {}


def register_analyzer(name: str, fn: Analyzer) -> None:
    _ANALYZERS[name] = fn


def get_analyzer(name: str) -> Analyzer:
    try:
        return _ANALYZERS[name]
    except KeyError:
        raise AnalysisError(f"no analyzer registered under {name!r}") from None


def analyzer_names() -> list[str]:
    return sorted(_ANALYZERS)


def analyze(text: str, analyzer: Analyzer | str) -> list[AnalyzedSentence]:
    """Run an analyzer (by name or directly) over the text."""
    fn = get_analyzer(analyzer) if isinstance(analyzer, str) else analyzer
    try:
        return fn(text)
    except AnalysisError:
        raise
    except Exception as exc:
        raise AnalysisError(f"analyzer failed on input of length {len(text)}: {exc}") from exc


def content_lemmas(sentence: AnalyzedSentence) -> Counter:
    """Multiset of lemmas of the content-word spans (nouns/verbs/adjs/advs)."""
    return Counter(s.lemma for s in sentence.content_spans())


_TOKEN_RE = re.compile(r"\S+")
_SENTENCE_FINAL = set(".?!")


def _is_punct_char(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def _segment(token: str) -> list[tuple[str, bool]]:
    """Split a whitespace token into maximal punct / non-punct runs."""
    runs: list[tuple[str, bool]] = []
    for ch in token:
        punct = _is_punct_char(ch)
        if runs and runs[-1][1] == punct:
            runs[-1] = (runs[-1][0] + ch, punct)
        else:
            runs.append((ch, punct))
    return runs

def _tokenize(text: str) -> list[tuple[str, bool, int, int]]:
    """(token, is_punct, start, end) tuples over the whole input."""
    out = []
    for m in _TOKEN_RE.finditer(text):
        offset = m.start()
        for run, punct in _segment(m.group()):
            out.append((run, punct, offset, offset + len(run)))
            offset += len(run)
    return out


def _split_tagged(text: str, tag_word: Callable[[str], PosTag]) -> list[AnalyzedSentence]:
    tokens = _tokenize(text)
    sentences: list[AnalyzedSentence] = []
    current: list[tuple[str, bool]] = []
    bounds: tuple[int, int] | None = None

    def flush():
        nonlocal current, bounds
        if not current:
            return
        spans = tuple(
            Span(
                word=tok,
                pos=PosTag.PUNCT if punct else tag_word(tok),
                lemma=tok.casefold(),
                position=i,
            )
            for i, (tok, punct) in enumerate(current)
        )
        sentences.append(AnalyzedSentence(spans=spans, source_text=text[bounds[0] : bounds[1]]))
        current = []
        bounds = None

    for tok, punct, start, end in tokens:
        bounds = (bounds[0] if bounds else start, end)
        current.append((tok, punct))
        if punct and set(tok) <= _SENTENCE_FINAL:
            flush()
    flush()
    return sentences


def baseline_analyzer(text: str) -> list[AnalyzedSentence]:
    """Language-agnostic fallback: whitespace tokens, punctuation split off,
    sentences end at ``.?!``, lemma is the case-folded surface, POS is X.

    Real deployments register a morphological analyzer instead; with this one
    no span is a content word, so disambiguation has nothing to act on.
    """
    return _split_tagged(text, lambda tok: PosTag.X)


def allnouns_analyzer(text: str) -> list[AnalyzedSentence]:
    """Same tokenization as the baseline but every word is tagged NOUN, making
    every word a disambiguation target. Useful for fixtures and smoke tests."""
    return _split_tagged(text, lambda tok: PosTag.NOUN)


register_analyzer("baseline", baseline_analyzer)
register_analyzer("allnouns", allnouns_analyzer)


def sentence_to_json(sentence: AnalyzedSentence) -> list[dict]:
    """Plain-JSON span list used by the HTTP service and CLI."""
    return [
        {"word": s.word, "pos": s.pos.value, "lemma": s.lemma, "position": s.position}
        for s in sentence.spans
    ]

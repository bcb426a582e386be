import io
import random
from pathlib import Path

import pytest

from lexsense.dense import load_embeddings_binary
from lexsense.inventory import SenseInventory, Synset, load_inventory
from lexsense.pipeline import AnalyzedSentence, PosTag, Span

FIXTURES = Path(__file__).parent / "fixtures"

LEMMA_POOL = [f"w{i}" for i in range(12)]


@pytest.fixture
def fixture_inventory():
    with open(FIXTURES / "inventory.tsv", encoding="utf-8") as f:
        return load_inventory(f)


@pytest.fixture
def fixture_embeddings():
    with open(FIXTURES / "embeddings.bin", "rb") as f:
        return load_embeddings_binary(f)


@pytest.fixture
def fixture_paths():
    return {
        "inventory": FIXTURES / "inventory.tsv",
        "embeddings": FIXTURES / "embeddings.bin",
        "dataset": FIXTURES / "dataset.tsv",
        "config": FIXTURES / "service.conf",
    }


def random_inventory(rng: random.Random, max_synsets: int = 20) -> SenseInventory:
    n = rng.randint(1, max_synsets)
    synsets = []
    for i in range(n):
        synonyms = tuple(rng.choices(LEMMA_POOL, k=rng.randint(1, 4)))
        hypernyms = tuple(rng.choices(LEMMA_POOL, k=rng.randint(0, 3)))
        synsets.append(Synset(id=str(i + 1), synonyms=synonyms, hypernyms=hypernyms))
    return SenseInventory(synsets)


def random_sentence(rng: random.Random, max_tokens: int = 15) -> AnalyzedSentence:
    k = rng.randint(1, max_tokens)
    words = rng.choices(LEMMA_POOL + ["zz1", "zz2"], k=k)
    spans = tuple(
        Span(word=w, pos=rng.choice([PosTag.NOUN, PosTag.VERB, PosTag.DET, PosTag.PUNCT]),
             lemma=w, position=i)
        for i, w in enumerate(words)
    )
    return AnalyzedSentence(spans=spans, source_text=" ".join(words))


def stream(text: str) -> io.StringIO:
    return io.StringIO(text)

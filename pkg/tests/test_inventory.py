import io
import random

import pytest
from hypothesis import given, settings, strategies as st

from lexsense.inventory import (
    InventoryError,
    SenseInventory,
    Synset,
    load_inventory,
    serialize_inventory,
)

from conftest import random_inventory


def load(text):
    return load_inventory(io.StringIO(text))


def test_single_line_example():
    inv = load("1\texperiment,experimenting\tattempt,research\n")
    assert len(inv) == 1
    synset = inv.by_id["1"]
    assert len(synset.bag) == 4
    assert inv.index["experiment"] == ["1"]
    assert inv.index["research"] == ["1"]


def test_empty_stream():
    inv = load("")
    assert len(inv) == 0
    assert inv.stats.synset_count == 0
    assert inv.stats.vocabulary_size == 0
    assert inv.stats.w_max == 0 and inv.stats.s_max == 0


def test_shared_lemma_indexed_sorted():
    inv = load("2\tbank\tmoney\n1\tbank\triver\n")
    assert inv.index["bank"] == ["1", "2"]
    assert inv.stats.w_max == 2
    # brute-force recomputation
    expect = sorted(s.id for s in inv.synsets if "bank" in s.bag)
    assert [s.id for s in inv.candidates("bank")] == expect


def test_hypernym_only_membership_counts():
    inv = load("1\texperiment\tresearch\n")
    assert [s.id for s in inv.candidates("research")] == ["1"]


def test_case_folding():
    inv = load("1\tBank,RIVER\n")
    assert inv.by_id["1"].synonyms == ("bank", "river")
    assert inv.candidates("BANK")[0].id == "1"


def test_bag_keeps_multiplicity():
    synset = Synset("s", synonyms=("a", "b"), hypernyms=("a",))
    assert synset.bag == ("a", "b", "a")
    assert synset.bag_counts()["a"] == 2


def test_comments_and_blank_lines_skipped():
    inv = load("# header\n\n1\ta\n")
    assert len(inv) == 1


def test_malformed_line_reports_number():
    with pytest.raises(InventoryError, match="line 2"):
        load("1\ta\n2\ta\tb\tc\td\n")


def test_duplicate_id_rejected():
    with pytest.raises(InventoryError, match="duplicate"):
        load("1\ta\n1\tb\n")


def test_empty_synonyms_rejected():
    with pytest.raises(InventoryError, match="empty synonym"):
        load("1\t\thyp\n")


def test_unknown_format_rejected():
    with pytest.raises(InventoryError):
        load_inventory(io.StringIO(""), format="xml")


def test_unknown_lemma_is_not_an_error():
    inv = load("1\ta\n")
    assert inv.candidates("nope") == []


def test_stats_brute_force():
    rng = random.Random(7)
    for _ in range(25):
        inv = random_inventory(rng)
        stats = inv.stats
        assert stats.synset_count == len(inv.synsets)
        assert stats.vocabulary_size == len({l for s in inv.synsets for l in s.bag})
        assert stats.w_max == max(
            sum(1 for s in inv.synsets if l in s.bag) for l in inv.index
        )
        assert stats.s_max == max(len(s.bag) for s in inv.synsets)
        assert stats.w_max >= 1 and stats.s_max >= 1


def test_round_trip_and_determinism():
    text = "1\tbank\triver\n2\tbank\tmoney\n3\ta,b\n"
    inv1 = load(text)
    inv2 = load(text)
    assert inv1 == inv2
    assert inv1.index == inv2.index
    assert serialize_inventory(inv1) == text
    assert load(serialize_inventory(inv1)) == inv1


lemma_st = st.text(alphabet="abcdef", min_size=1, max_size=3)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.tuples(st.lists(lemma_st, min_size=1, max_size=4), st.lists(lemma_st, max_size=3)),
        min_size=1,
        max_size=10,
    )
)
def test_index_completeness_property(specs):
    synsets = [Synset(str(i), tuple(syn), tuple(hyp)) for i, (syn, hyp) in enumerate(specs)]
    inv = SenseInventory(synsets)
    for synset in inv.synsets:
        for lemma in synset.bag:
            assert synset in inv.candidates(lemma)
    for lemma, ids in inv.index.items():
        for sid in ids:
            assert lemma in inv.by_id[sid].bag
        assert ids == sorted(ids)

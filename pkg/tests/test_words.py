from __future__ import annotations

import pytest

from conftest import random_word
from src.squarefree import find_square
from src.words import (
    EMPTY,
    Letter,
    TernaryWord,
    cyclic_shift,
    factor_indices,
    has_internal_occurrence,
    parse_transcribed,
    reverse,
    word,
)

PI = "210201021012010"


def test_text_round_trip():
    assert str(word("0120210")) == "0120210"
    assert word("0120210").letters == b"\x00\x01\x02\x00\x02\x01\x00"
    assert str(EMPTY) == ""
    assert len(EMPTY) == 0


@pytest.mark.parametrize("bad", ["0123", "01a", "-"])
def test_rejects_non_ternary_text(bad):
    with pytest.raises(ValueError):
        word(bad)


def test_rejects_raw_letters_out_of_range():
    with pytest.raises(ValueError):
        TernaryWord(b"\x00\x03")
    with pytest.raises(ValueError):
        TernaryWord.from_letters([0, 1, 3])


def test_letter_values():
    assert [int(a) for a in Letter] == [0, 1, 2]


def test_sequence_protocol():
    w = word("21020")
    assert w[0] == 2
    assert w[1:3] == word("10")
    assert list(w) == [2, 1, 0, 2, 0]
    assert word("210") + word("20") == w
    assert word("020") in w
    assert word("11") not in w
    assert w.startswith(word("21")) and w.endswith(word("20"))


def test_parse_transcribed_strips_line_continuations():
    text = "012102010210121021202101202120121012010212021012102120210201\n  -21012021201210120102"
    parsed = parse_transcribed(text)
    assert len(parsed) == 80
    assert str(parsed).startswith("01210201021012102120")


@pytest.mark.parametrize(
    "w, i, expected",
    [
        ("012", 1, "120"),
        ("21020", 1, "02101"),
        ("012", 2, "201"),
        ("", 1, ""),
    ],
)
def test_cyclic_shift(w, i, expected):
    assert cyclic_shift(word(w), i) == word(expected)


def test_cyclic_shift_rejects_negative_count():
    with pytest.raises(ValueError):
        cyclic_shift(word("01"), -1)


def test_cyclic_shift_laws(rng):
    for _ in range(200):
        w = random_word(rng, rng.randrange(0, 40))
        i, j = rng.randrange(6), rng.randrange(6)
        assert cyclic_shift(w, 3) == w
        assert cyclic_shift(cyclic_shift(w, i), j) == cyclic_shift(w, i + j)
        assert len(cyclic_shift(w, i)) == len(w)
        assert reverse(cyclic_shift(w, i)) == cyclic_shift(reverse(w), i)
        assert (find_square(w) is None) == (find_square(cyclic_shift(w, i)) is None)


def test_reverse():
    assert reverse(word("012")) == word("210")
    assert reverse(EMPTY) == EMPTY
    assert reverse(word(PI)) == word("010210120102012")


def test_factor_indices_examples():
    hits = factor_indices(word(PI), word("010"))
    assert [hit.index for hit in hits] == [4, 12]
    assert [hit.internal for hit in hits] == [True, False]
    assert [hit.index for hit in factor_indices(word("000"), word("00"))] == [0, 1]
    assert factor_indices(word("012"), word("11")) == []


def test_factor_indices_rejects_empty_factor():
    with pytest.raises(ValueError):
        factor_indices(word("012"), EMPTY)


def test_factor_indices_matches_naive_scan(rng):
    for _ in range(300):
        w = random_word(rng, rng.randrange(0, 200))
        v = random_word(rng, rng.randrange(1, 4))
        naive = [
            i for i in range(len(w) - len(v) + 1) if w.letters[i : i + len(v)] == v.letters
        ]
        assert [hit.index for hit in factor_indices(w, v)] == naive


def test_internal_occurrence():
    assert has_internal_occurrence(word("20102"), word("010"))
    assert not has_internal_occurrence(word("01020"), word("010"))
    assert not has_internal_occurrence(word("02010"), word("010"))

from __future__ import annotations

import itertools

import pytest

from src import thue_morse
from src.errors import VerificationError
from src.squarefree import avoids, find_square
from src.thue_morse import (
    BRACKET,
    BRACKET_PREIMAGE,
    FORBIDDEN_IN_X,
    BracketedX,
    FactorShape,
    ThueMorseStream,
    bracketed_factor_starts,
    find_bracketed_factor,
    make_x,
    one_count,
    one_count_stream,
    tm_letter,
    tm_morphism,
    tm_prefix,
)
from src.words import word


def test_prefix():
    assert tm_prefix(16) == "0110100110010110"
    assert tm_prefix(0) == ""
    assert tm_prefix(2) == "01"
    with pytest.raises(ValueError):
        tm_prefix(-1)


def test_stream_matches_prefix():
    stream = ThueMorseStream()
    letters = list(itertools.islice(stream, 64))
    assert "".join(map(str, letters)) == tm_prefix(64)
    assert stream.emitted == 64


@pytest.mark.parametrize("n", [1, 5, 16, 100, 513])
def test_fixed_point_law(n):
    assert tm_prefix(2 * n) == tm_morphism(tm_prefix(n))


def test_morphism_powers():
    assert tm_morphism("01", 3) == BRACKET_PREIMAGE
    assert tm_morphism("0", 4) == tm_prefix(16)
    assert tm_letter(3) == 0 and tm_letter(7) == 1


@pytest.mark.parametrize(
    "u, expected",
    [
        ("010", "1"),
        ("00", "0"),
        ("0", ""),
        ("0110", "2"),
        (BRACKET_PREIMAGE, "2102012"),
    ],
)
def test_one_count(u, expected):
    assert one_count(u) == word(expected)


@pytest.mark.parametrize("u", ["", "1", "10", "01", "01110", "0120"])
def test_one_count_rejects(u):
    with pytest.raises(ValueError):
        one_count(u)


def test_one_count_stream_starts_with_bracket():
    head = list(itertools.islice(one_count_stream(), 7))
    assert head == [2, 1, 0, 2, 0, 1, 2]


def test_one_count_stream_is_square_free_and_avoids_forbidden():
    head = word("".join(map(str, itertools.islice(one_count_stream(), 3000))))
    assert find_square(head) is None
    assert avoids(head, FORBIDDEN_IN_X)


def test_one_count_of_cubed_factors_is_square_free():
    t = tm_prefix(4096)
    for start in range(0, 3000, 37):
        for length in (6, 11, 25):
            factor = t[start : start + length]
            u = tm_morphism(factor, 3)
            if u[0] != "0":
                u = u[u.index("0") :]
            u = u[: u.rindex("0") + 1]
            r = one_count(u)
            assert find_square(r) is None
            assert avoids(r, FORBIDDEN_IN_X)


@pytest.mark.parametrize("k", range(6, 101))
def test_bracketed_factors_of_both_shapes(k):
    t = tm_prefix(1 << 14)
    for shape in FactorShape:
        factor = find_bracketed_factor(k, shape)
        assert len(factor) == k
        assert factor.startswith("01")
        assert factor.endswith(shape.suffix)
        assert factor in t


def test_bracketed_factor_occurrences_ascend():
    starts = list(itertools.islice(bracketed_factor_starts(6, FactorShape.SAME_ENDS), 5))
    assert starts == sorted(starts) and len(set(starts)) == 5
    assert find_bracketed_factor(6, occurrence=1) == tm_prefix(starts[1] + 6)[starts[1] :]


def test_factor_length_below_six_is_rejected():
    with pytest.raises(ValueError):
        find_bracketed_factor(5)
    with pytest.raises(ValueError):
        make_x(5)


def test_make_x_examples():
    assert make_x(6).x == word("101202101")
    assert len(make_x(6).r) == 23
    assert make_x(7).x == word("0210201210120")
    bracketed = make_x(38)
    assert (len(bracketed.r), len(bracketed.x)) == (151, 137)


@pytest.mark.parametrize("k", range(6, 201))
def test_make_x_sweep(k):
    bracketed = make_x(k)
    assert len(bracketed.r) == 4 * k - 1
    assert len(bracketed.x) == 4 * k - 15
    assert len(bracketed.x) % 4 == 1
    assert bracketed.r.startswith(BRACKET) and bracketed.r.endswith(BRACKET)
    assert find_square(bracketed.r) is None
    assert avoids(bracketed.r, FORBIDDEN_IN_X)
    assert bracketed.violations() == []


def test_bracketed_violations_are_reported():
    bogus = BracketedX(r=word("2102012"), x=word(""), k=6)
    problems = bogus.violations()
    assert any("expected 23" in problem for problem in problems)


def test_make_x_verification_error_carries_context(monkeypatch):
    monkeypatch.setattr(thue_morse, "one_count", lambda u: word("0101"))
    with pytest.raises(VerificationError) as info:
        thue_morse.make_x(6)
    assert info.value.context["k"] == 6
    assert info.value.context["problems"]

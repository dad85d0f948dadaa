"""Ternary words over {0, 1, 2} and the cyclic shift operator.

A word is stored as ``bytes`` holding the letter values 0, 1, 2 (not the
ASCII digits), so slicing, comparison and factor search all run at C speed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Iterator, NamedTuple, overload

_TO_VALUES = bytes.maketrans(b"012", b"\x00\x01\x02")
_TO_DIGITS = bytes.maketrans(b"\x00\x01\x02", b"012")
_SHIFT_TABLES = (
    bytes.maketrans(b"\x00\x01\x02", b"\x00\x01\x02"),
    bytes.maketrans(b"\x00\x01\x02", b"\x01\x02\x00"),
    bytes.maketrans(b"\x00\x01\x02", b"\x02\x00\x01"),
)
_TRANSCRIPTION_NOISE = re.compile(r"[\s\-]+")


class Letter(IntEnum):
    ZERO = 0
    ONE = 1
    TWO = 2


@dataclass(frozen=True, slots=True)
class TernaryWord:
    letters: bytes = b""

    def __post_init__(self) -> None:
        if self.letters.translate(None, b"\x00\x01\x02"):
            raise ValueError(f"letters outside {{0, 1, 2}}: {self.letters!r}")

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def from_text(cls, text: str) -> TernaryWord:
        raw = text.encode("ascii")
        if raw.translate(None, b"012"):
            raise ValueError(f"not a ternary word: {text!r}")
        return cls(raw.translate(_TO_VALUES))

    @classmethod
    def from_letters(cls, letters: Iterable[int]) -> TernaryWord:
        return cls(bytes(int(Letter(a)) for a in letters))

    # ------------------------------------------------------------------
    # Sequence protocol
    # ------------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    @overload
    def __getitem__(self, index: int) -> int: ...

    @overload
    def __getitem__(self, index: slice) -> TernaryWord: ...

    def __getitem__(self, index: int | slice) -> int | TernaryWord:
        if isinstance(index, slice):
            return TernaryWord(self.letters[index])
        return self.letters[index]

    def __add__(self, other: TernaryWord) -> TernaryWord:
        if not isinstance(other, TernaryWord):
            return NotImplemented
        return TernaryWord(self.letters + other.letters)

    def __contains__(self, factor: object) -> bool:
        if not isinstance(factor, TernaryWord):
            return False
        return factor.letters in self.letters

    def __str__(self) -> str:
        return self.letters.translate(_TO_DIGITS).decode("ascii")

    def __repr__(self) -> str:
        return f"TernaryWord({str(self)!r})"

    def startswith(self, prefix: TernaryWord) -> bool:
        return self.letters.startswith(prefix.letters)

    def endswith(self, suffix: TernaryWord) -> bool:
        return self.letters.endswith(suffix.letters)


EMPTY = TernaryWord()


def word(text: str) -> TernaryWord:
    """Shorthand for ``TernaryWord.from_text``."""
    return TernaryWord.from_text(text)


def parse_transcribed(text: str) -> TernaryWord:
    """Read a word typeset across lines with hyphenated continuations."""
    return TernaryWord.from_text(_TRANSCRIPTION_NOISE.sub("", text))


# ---------------------------------------------------------------------------
# Operators
# ---------------------------------------------------------------------------


def cyclic_shift(w: TernaryWord, i: int = 1) -> TernaryWord:
    """Apply sigma^i letterwise, where sigma(a) = (a + 1) mod 3."""
    if i < 0:
        raise ValueError(f"shift count must be >= 0, got {i}")
    return TernaryWord(w.letters.translate(_SHIFT_TABLES[i % 3]))


def reverse(w: TernaryWord) -> TernaryWord:
    return TernaryWord(w.letters[::-1])


class FactorOccurrence(NamedTuple):
    index: int
    internal: bool


def factor_indices(w: TernaryWord, v: TernaryWord) -> list[FactorOccurrence]:
    """Every start index of v in w, overlaps included, in ascending order.

    An occurrence is internal when it is neither a prefix nor a suffix of w.
    """
    if not len(v):
        raise ValueError("factor must be nonempty")
    hits: list[FactorOccurrence] = []
    haystack, needle = w.letters, v.letters
    end = len(haystack) - len(needle)
    start = haystack.find(needle)
    while start != -1:
        hits.append(FactorOccurrence(start, 0 < start < end))
        start = haystack.find(needle, start + 1)
    return hits


def has_internal_occurrence(w: TernaryWord, v: TernaryWord) -> bool:
    return any(hit.internal for hit in factor_indices(w, v))

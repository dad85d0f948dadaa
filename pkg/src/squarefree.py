"""Square detection, palindrome census and the factor scans run on alpha-words.

Batch detection compares a word with itself shifted by each half-length:
XOR-ing the two shifted copies yields a byte string whose zero runs are the
places where the copies agree, and a run of ``half`` zeros is a square.
"""

from __future__ import annotations

import logging
from typing import Iterable, Optional

import numpy as np

from src.types import SquareWitness
from src.words import EMPTY, Letter, TernaryWord

logger = logging.getLogger(__name__)


def _agreement_profile(data: bytes, half: int) -> bytes:
    """Byte j is zero iff data[j] == data[j + half]."""
    size = len(data) - half
    diff = int.from_bytes(data[:size], "big") ^ int.from_bytes(data[half:], "big")
    return diff.to_bytes(size, "big")


def find_square(w: TernaryWord) -> Optional[SquareWitness]:
    """Leftmost square of w (shortest among those starting there), or None."""
    data = w.letters
    best_start, best_half = len(data), 0
    for half in range(1, len(data) // 2 + 1):
        if best_start == 0:
            break
        profile = _agreement_profile(data, half)
        # only occurrences strictly left of the current best can improve it
        start = profile.find(bytes(half), 0, best_start - 1 + half)
        if start != -1:
            best_start, best_half = start, half
    if not best_half:
        return None
    return SquareWitness(start=best_start, half_length=best_half)


def is_square_free(w: TernaryWord) -> bool:
    data = w.letters
    return not any(
        bytes(half) in _agreement_profile(data, half)
        for half in range(1, len(data) // 2 + 1)
    )


def witness_holds(w: TernaryWord, witness: SquareWitness) -> bool:
    start, half = witness.start, witness.half_length
    if start + 2 * half > len(w):
        return False
    return w.letters[start:start + half] == w.letters[start + half:start + 2 * half]


def ends_with_square(w: TernaryWord) -> bool:
    data = w.letters
    size = len(data)
    return any(
        data[size - 2 * half:size - half] == data[size - half:]
        for half in range(1, size // 2 + 1)
    )


def square_free_words(length: int) -> list[TernaryWord]:
    """All square-free ternary words of the given length, in lexicographic order."""
    level = [EMPTY]
    for _ in range(length):
        level = [
            grown
            for stem in level
            for grown in (stem + TernaryWord(bytes([a])) for a in Letter)
            if not ends_with_square(grown)
        ]
    return level


# ---------------------------------------------------------------------------
# Incremental checker
# ---------------------------------------------------------------------------

class IncrementalChecker:
    """Accepts letters one at a time while the committed word stays square-free.

    For every half-length h the checker keeps ``reach[h] = M + h`` where M is the
    last position j with w[j] != w[j - h]. A new letter at position m closes a
    square of half h exactly when it agrees with w[m - h] and reach[h] <= m.
    Only half-lengths that fit in the current word are tracked; a half becomes
    active when the word reaches length 2h and is primed from the committed
    letters at that moment.

    With ``keep_history`` every accepted push records what it overwrote so that
    ``pop`` restores the previous state exactly. Long streams turn it off.
    """

    def __init__(self, *, keep_history: bool = True, capacity: int = 64) -> None:
        capacity = max(capacity, 8)
        self._letters = np.zeros(capacity, dtype=np.int8)
        self._reach = np.zeros(capacity // 2 + 2, dtype=np.int64)
        self._halves = np.arange(capacity // 2 + 2, dtype=np.int64)
        self._size = 0
        self._active = 0
        self._history: Optional[list[tuple[np.ndarray, np.ndarray, int]]] = (
            [] if keep_history else None
        )

    def __len__(self) -> int:
        return self._size

    @property
    def committed(self) -> TernaryWord:
        return TernaryWord(self._letters[: self._size].tobytes())

    def _grow(self, needed: int) -> None:
        if needed <= len(self._letters):
            return
        capacity = max(needed, 2 * len(self._letters))
        letters = np.zeros(capacity, dtype=np.int8)
        letters[: self._size] = self._letters[: self._size]
        reach = np.zeros(capacity // 2 + 2, dtype=np.int64)
        reach[: len(self._reach)] = self._reach
        self._letters = letters
        self._reach = reach
        self._halves = np.arange(len(reach), dtype=np.int64)

    def push(self, letter: int) -> bool:
        a = int(Letter(letter))
        m = self._size
        self._grow(m + 1)
        w = self._letters
        active = (m + 1) // 2
        if active > self._active:
            # prime the half that just started to fit: last mismatch among
            # the committed positions h .. m-1
            h = active
            mismatches = np.flatnonzero(w[h:m] != w[: m - h])
            last = h + int(mismatches[-1]) if mismatches.size else h - 1
            self._reach[h] = last + h
        if active:
            reach = self._reach[1 : active + 1]
            agrees = w[m - active : m][::-1] == a
            if np.any(agrees & (reach <= m)):
                return False
            if self._history is not None:
                disagrees = ~agrees
                self._history.append((disagrees, reach[disagrees].copy(), self._active))
                np.putmask(reach, disagrees, m + self._halves[1 : active + 1])
            else:
                np.putmask(reach, ~agrees, m + self._halves[1 : active + 1])
        elif self._history is not None:
            self._history.append((np.zeros(0, dtype=bool), np.zeros(0, dtype=np.int64), 0))
        w[m] = a
        self._size = m + 1
        self._active = active
        return True

    def pop(self) -> int:
        """Undo the last accepted push and return its letter."""
        if self._history is None:
            raise RuntimeError("checker was created without history; pop is unavailable")
        if not self._size:
            raise IndexError("pop from an empty checker")
        disagrees, previous, prior_active = self._history.pop()
        self._size -= 1
        active = len(disagrees)
        if active:
            reach = self._reach[1 : active + 1]
            reach[disagrees] = previous
        self._active = prior_active
        return int(self._letters[self._size])

    def feed(self, letters: Iterable[int]) -> int:
        """Push letters until one is rejected; return how many were accepted."""
        accepted = 0
        for letter in letters:
            if not self.push(letter):
                break
            accepted += 1
        return accepted


# ---------------------------------------------------------------------------
# Factor scans
# ---------------------------------------------------------------------------

def palindrome3_centers(w: TernaryWord) -> set[int]:
    """Centers b of the length 3 palindromes aba (a != b) occurring in w."""
    data = w.letters
    return {
        data[i + 1]
        for i in range(len(data) - 2)
        if data[i] == data[i + 2] != data[i + 1]
    }


def triple_letter_5_factors(w: TernaryWord) -> list[tuple[TernaryWord, int]]:
    """Length 5 factors in which some letter appears at least three times."""
    data = w.letters
    hits: list[tuple[TernaryWord, int]] = []
    for i in range(len(data) - 4):
        factor = data[i : i + 5]
        if max(factor.count(a) for a in (0, 1, 2)) >= 3:
            hits.append((TernaryWord(factor), i))
    return hits


def avoids(w: TernaryWord, forbidden: Iterable[TernaryWord]) -> bool:
    return not any(f.letters in w.letters for f in forbidden)

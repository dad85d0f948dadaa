"""Thue-Morse machinery and the bracketed square-free words r = 2102012 x 2102012.

Binary words are plain ``str`` over "01"; ternary results are TernaryWords.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from src.errors import VerificationError
from src.squarefree import avoids, is_square_free
from src.words import TernaryWord, word

logger = logging.getLogger(__name__)

BRACKET = word("2102012")
BRACKET_PREIMAGE = "0110100110010110"  # h^3(01); its 1-count is BRACKET
FORBIDDEN_IN_X = (word("010"), word("212"))
MIN_FACTOR_LENGTH = 6

_H = str.maketrans({"0": "01", "1": "10"})


class FactorShape(str, Enum):
    SAME_ENDS = "01v01"
    SWAPPED_ENDS = "01v10"

    @property
    def suffix(self) -> str:
        return self.value[-2:]


def tm_letter(i: int) -> int:
    return i.bit_count() & 1


class ThueMorseStream:
    """Yields t(0), t(1), ... where t(i) is the parity of the popcount of i."""

    def __init__(self) -> None:
        self.emitted = 0

    def __iter__(self) -> Iterator[int]:
        return self

    def __next__(self) -> int:
        letter = tm_letter(self.emitted)
        self.emitted += 1
        return letter


def tm_prefix(n: int) -> str:
    if n < 0:
        raise ValueError(f"prefix length must be >= 0, got {n}")
    return "".join("1" if tm_letter(i) else "0" for i in range(n))


def tm_morphism(u: str, power: int = 1) -> str:
    """Apply h(0) = 01, h(1) = 10 to u, ``power`` times."""
    for _ in range(power):
        u = u.translate(_H)
    return u


# ---------------------------------------------------------------------------
# Factors of t
# ---------------------------------------------------------------------------

def bracketed_factor_starts(k: int, shape: FactorShape) -> Iterator[int]:
    """Start indices in t of length-k factors 01v01 (or 01v10), ascending.

    The scan window starts at max(4k + 64, 1024) letters and doubles whenever
    it runs dry.
    """
    if k < MIN_FACTOR_LENGTH:
        raise ValueError(f"factor length must be >= {MIN_FACTOR_LENGTH}, got {k}")
    window = max(4 * k + 64, 1024)
    scanned = 0
    while True:
        t = tm_prefix(window)
        for i in range(scanned, window - k + 1):
            if t.startswith("01", i) and t.startswith(shape.suffix, i + k - 2):
                yield i
        scanned = window - k + 1
        logger.debug("doubling Thue-Morse scan window past %d for k=%d", window, k)
        window *= 2


def find_bracketed_factor(
    k: int,
    shape: FactorShape = FactorShape.SAME_ENDS,
    occurrence: int = 0,
) -> str:
    """The ``occurrence``-th (0 = first) length-k factor of t with the given ends."""
    starts = bracketed_factor_starts(k, shape)
    for _ in range(occurrence):
        next(starts)
    start = next(starts)
    return tm_prefix(start + k)[start:]


# ---------------------------------------------------------------------------
# 1-counts
# ---------------------------------------------------------------------------

def one_count(u: str) -> TernaryWord:
    """Lengths of the runs of 1s between consecutive 0s of u."""
    if u.strip("01"):
        raise ValueError(f"not a binary word: {u!r}")
    if not u or u[0] != "0" or u[-1] != "0":
        raise ValueError(f"1-count needs a word beginning and ending with 0: {u!r}")
    runs = u.split("0")[1:-1]
    if any(len(run) > 2 for run in runs):
        raise ValueError(f"run of more than two 1s in {u!r}; not a Thue-Morse factor")
    return TernaryWord(bytes(len(run) for run in runs))


def one_count_stream() -> Iterator[int]:
    """The 1-count of t itself, letter by letter (t begins with 0)."""
    run = 0
    bits = ThueMorseStream()
    next(bits)
    for bit in bits:
        if bit:
            run += 1
        else:
            yield run
            run = 0


# ---------------------------------------------------------------------------
# Bracketed x
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BracketedX:
    r: TernaryWord
    x: TernaryWord
    k: int
    occurrence: int = 0

    def violations(self) -> list[str]:
        problems = []
        if len(self.r) != 4 * self.k - 1:
            problems.append(f"|r| = {len(self.r)}, expected {4 * self.k - 1}")
        if self.r != BRACKET + self.x + BRACKET:
            problems.append("r is not 2102012 x 2102012")
        if not is_square_free(self.r):
            problems.append("r contains a square")
        if not avoids(self.r, FORBIDDEN_IN_X):
            problems.append("r contains 010 or 212")
        return problems


def make_x(k: int, occurrence: int = 0) -> BracketedX:
    """Build r = 1-count(h^3(01v01)) for the chosen length-k factor 01v01 of t."""
    factor = find_bracketed_factor(k, FactorShape.SAME_ENDS, occurrence)
    u = tm_morphism(factor, 3)
    r = one_count(u)
    bracketed = BracketedX(r=r, x=r[len(BRACKET) : len(r) - len(BRACKET)], k=k, occurrence=occurrence)
    problems = bracketed.violations()
    if problems:
        raise VerificationError(
            f"bracketed word for k={k} failed verification",
            {"k": k, "occurrence": occurrence, "problems": problems},
        )
    logger.debug("make_x(k=%d, occurrence=%d): |x| = %d", k, occurrence, len(bracketed.x))
    return bracketed

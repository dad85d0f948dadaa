"""Stem factorizations w = p mu_1(p) mu_2(p) ... over the ternary alphabet.

Decoding, encoding, streaming of certified square-free words built by a
cyclic shift morphism, and the checks run on the bundled non-uniform
morphisms for n = 20, 21 and 22.
"""

from __future__ import annotations

import itertools
import logging
import os
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Optional, Sequence

from src.constructor import construct
from src.errors import FixtureError, StreamVerificationError, VerificationError
from src.fixtures import load_muller
from src.morphism import crochemore_test, from_images
from src.squarefree import IncrementalChecker, find_square
from src.thue_morse import one_count_stream
from src.types import (
    MullerImageReport,
    MullerReport,
    SquareWitness,
    StemCertificate,
    StemSource,
    StreamSummary,
)
from src.words import TernaryWord, word

logger = logging.getLogger(__name__)

MULLER_LENGTHS = (20, 21, 22)
MULLER_STEM_20 = word("01210201021012102120")


# ---------------------------------------------------------------------------
# Letter permutations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Permutation3:
    """A bijection on {0, 1, 2}, given by the images of 0, 1 and 2."""

    images: tuple[int, int, int] = (0, 1, 2)

    def __post_init__(self) -> None:
        if sorted(self.images) != [0, 1, 2]:
            raise ValueError(f"not a permutation of 0, 1, 2: {self.images}")

    @classmethod
    def identity(cls) -> Permutation3:
        return cls((0, 1, 2))

    @classmethod
    def shift(cls, i: int) -> Permutation3:
        """sigma^i."""
        return cls(tuple((a + i) % 3 for a in range(3)))  # type: ignore[arg-type]

    @classmethod
    def parse(cls, text: str) -> Permutation3:
        return cls(tuple(word(text)))  # type: ignore[arg-type]

    def __call__(self, a: int) -> int:
        return self.images[a]

    def compose(self, other: Permutation3) -> Permutation3:
        """self after other."""
        return Permutation3(tuple(self.images[b] for b in other.images))  # type: ignore[arg-type]

    def inverse(self) -> Permutation3:
        inverted = [0, 0, 0]
        for a, b in enumerate(self.images):
            inverted[b] = a
        return Permutation3(tuple(inverted))  # type: ignore[arg-type]

    def apply(self, w: TernaryWord) -> TernaryWord:
        table = bytes.maketrans(b"\x00\x01\x02", bytes(self.images))
        return TernaryWord(w.letters.translate(table))

    @property
    def is_cyclic_shift(self) -> bool:
        return self in CYCLIC_SHIFTS

    def __str__(self) -> str:
        return "".join(str(b) for b in self.images)


# lexicographic by images, so the first match is the smallest-image extension
ALL_PERMUTATIONS: tuple[Permutation3, ...] = tuple(
    Permutation3(images) for images in itertools.permutations(range(3))  # type: ignore[arg-type]
)
CYCLIC_SHIFTS = frozenset(Permutation3.shift(i) for i in range(3))


def all_permutations() -> tuple[Permutation3, ...]:
    return ALL_PERMUTATIONS


# ---------------------------------------------------------------------------
# Factorizations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StemFactorization:
    stem: TernaryWord
    block_permutations: tuple[Permutation3, ...]

    @property
    def covered_length(self) -> int:
        return len(self.stem) * (1 + len(self.block_permutations))

    def reconstruct(self) -> TernaryWord:
        return encode_stem(self.stem, self.block_permutations)

    def to_certificate(self) -> StemCertificate:
        return StemCertificate(
            stem=str(self.stem),
            permutations=[str(mu) for mu in self.block_permutations],
            covered_length=self.covered_length,
        )

    @classmethod
    def from_certificate(cls, certificate: StemCertificate) -> StemFactorization:
        factorization = cls(
            stem=word(certificate.stem),
            block_permutations=tuple(Permutation3.parse(p) for p in certificate.permutations),
        )
        if factorization.covered_length != certificate.covered_length:
            raise ValueError(
                f"certificate claims {certificate.covered_length} letters, "
                f"its blocks cover {factorization.covered_length}"
            )
        return factorization


def encode_stem(stem: TernaryWord, permutations: Iterable[Permutation3]) -> TernaryWord:
    return TernaryWord(stem.letters + b"".join(mu.apply(stem).letters for mu in permutations))


def _block_permutations(
    w: TernaryWord, stem: TernaryWord
) -> tuple[list[Permutation3], Optional[int]]:
    """Permutation for every length-|stem| block of w, or the first block index
    that is not a permuted stem."""
    n = len(stem)
    lookup: dict[bytes, Permutation3] = {}
    for mu in ALL_PERMUTATIONS:
        lookup.setdefault(mu.apply(stem).letters, mu)
    data = w.letters
    permutations = []
    for index, start in enumerate(range(0, len(data), n)):
        mu = lookup.get(data[start : start + n])
        if mu is None:
            return permutations, index
        permutations.append(mu)
    return permutations, None


def _check_blocks(length: int, n: int) -> None:
    if n < 1:
        raise ValueError(f"block length must be >= 1, got {n}")
    if length % n:
        raise ValueError(f"word length {length} is not a multiple of {n}")


def decode_stem(w: TernaryWord, n: int) -> Optional[StemFactorization]:
    """Factor w into its first block and permuted copies of it, or None.

    When the stem lacks a letter the block maps leave that letter's image
    open; the smallest free image is used.
    """
    _check_blocks(len(w), n)
    if len(w) < 2 * n:
        raise ValueError(f"need at least two blocks of length {n}, got {len(w)} letters")
    stem = w[:n]
    permutations, failed = _block_permutations(w, stem)
    if failed is not None:
        logger.debug("block %d of length %d is not a permuted stem", failed, n)
        return None
    return StemFactorization(stem=stem, block_permutations=tuple(permutations[1:]))


def decode_against_stem(w: TernaryWord, stem: TernaryWord) -> Optional[list[Permutation3]]:
    """Permutations of the given stem for every block of w, first block included."""
    _check_blocks(len(w), len(stem))
    permutations, failed = _block_permutations(w, stem)
    return None if failed is not None else permutations


def sliding_window_square_check(w: TernaryWord, width: int) -> Optional[SquareWitness]:
    """Batch square search over windows of ``width`` letters overlapping by half.

    Every square of length at most width/2 lies inside some window.
    """
    if width < 2:
        raise ValueError(f"window width must be >= 2, got {width}")
    step = width // 2
    for start in range(0, max(len(w) - step, 1), step):
        witness = find_square(w[start : start + width])
        if witness is not None:
            return SquareWitness(start=start + witness.start, half_length=witness.half_length)
    return None


# ---------------------------------------------------------------------------
# Streaming
# ---------------------------------------------------------------------------

def stream_stem_word(
    n: int,
    length: int,
    sink: Optional[Callable[[str], Any]] = None,
    *,
    window_check: bool = True,
    data_dir: str | os.PathLike[str] | None = None,
) -> tuple[StemFactorization, StreamSummary]:
    """Apply the certified morphism for n to the 1-count of the Thue-Morse word.

    Each output letter goes through an incremental square checker; a rejection
    is fatal. ``sink`` receives the digit text of each emitted block. The stem
    is the first block f(a_0), and block i is sigma^(a_i - a_0) of it.
    """
    certified = construct(n, data_dir=data_dir)
    _check_blocks(length, n)
    if length < 2 * n:
        raise ValueError(f"stream needs at least two blocks of length {n}, got {length}")

    images = [image.letters for image in certified.morphism.images]
    checker = IncrementalChecker(keep_history=False, capacity=length)
    blocks = length // n
    first_letter: Optional[int] = None
    permutations: list[Permutation3] = []

    for index, a in enumerate(itertools.islice(one_count_stream(), blocks)):
        block = images[a]
        for offset, letter in enumerate(block):
            if not checker.push(letter):
                position = index * n + offset
                window = checker.committed[max(0, position - 4 * n) : position]
                raise StreamVerificationError(
                    f"square closed at position {position} of the n={n} stream",
                    position,
                    f"{window}{letter}",
                )
        if first_letter is None:
            first_letter = a
        else:
            permutations.append(Permutation3.shift((a - first_letter) % 3))
        if sink is not None:
            sink(str(TernaryWord(block)))
        if (index + 1) % 1000 == 0:
            logger.debug("n=%d: %d/%d blocks streamed", n, index + 1, blocks)

    factorization = StemFactorization(
        stem=TernaryWord(images[first_letter]), block_permutations=tuple(permutations)
    )
    committed = checker.committed
    if factorization.reconstruct() != committed:
        raise VerificationError(
            "stream does not match its own stem certificate", {"n": n, "length": length}
        )

    window_passed: Optional[bool] = None
    if window_check:
        witness = sliding_window_square_check(committed, 4 * n)
        window_passed = witness is None
        if witness is not None:
            raise StreamVerificationError(
                f"batch window check found a square of half {witness.half_length}",
                witness.start,
                str(committed[witness.start : witness.start + 2 * witness.half_length]),
            )

    summary = StreamSummary(
        n=n,
        length=length,
        blocks=blocks,
        window_check_passed=window_passed,
        recipe=certified.recipe,
        certificate=factorization.to_certificate(),
    )
    logger.info("n=%d: streamed %d letters in %d certified blocks", n, length, blocks)
    return factorization, summary


# ---------------------------------------------------------------------------
# Non-uniform morphisms for 20, 21, 22
# ---------------------------------------------------------------------------

def _image_report(letter: int, image: TernaryWord, stem: TernaryWord) -> MullerImageReport:
    n = len(stem)
    if len(image) % n:
        return MullerImageReport(
            letter=letter,
            length=len(image),
            decoded=False,
            failure=f"length {len(image)} is not a multiple of {n}",
        )
    permutations, failed = _block_permutations(image, stem)
    if failed is not None:
        return MullerImageReport(
            letter=letter,
            length=len(image),
            decoded=False,
            failure=f"block at offset {failed * n} is not a permutation of the stem",
        )
    return MullerImageReport(
        letter=letter,
        length=len(image),
        decoded=True,
        blocks=len(permutations),
        permutations=[str(mu) for mu in permutations],
    )


def find_stem_candidates(images: Sequence[TernaryWord], n: int) -> list[str]:
    """Length-n words (smallest of their permutation class) that every image
    factors over, taken from the aligned blocks of the images."""
    seen: set[bytes] = set()
    candidates = []
    for image in images:
        if len(image) % n:
            return []
        for start in range(0, len(image), n):
            block = image[start : start + n]
            representative = min(mu.apply(block).letters for mu in ALL_PERMUTATIONS)
            if representative in seen:
                continue
            seen.add(representative)
            stem = TernaryWord(representative)
            if all(decode_against_stem(other, stem) is not None for other in images):
                candidates.append(str(stem))
    return sorted(candidates)


def verify_muller(n: int, data_dir: str | os.PathLike[str] | None = None) -> MullerReport:
    """Crochemore certificate plus stem decoding of each bundled image."""
    if n not in MULLER_LENGTHS:
        raise ValueError(f"bundled non-uniform morphisms exist for {MULLER_LENGTHS}, got {n}")
    morphisms = load_muller(data_dir)
    if n not in morphisms:
        raise FixtureError(f"no bundled morphism for n={n}")
    images = morphisms[n]
    certificate = crochemore_test(from_images(images))

    if n == 20:
        stem, source = MULLER_STEM_20, StemSource.QUOTED
    else:
        stem, source = images[0][:n], StemSource.IMAGE_PREFIX
    reports = [_image_report(a, image, stem) for a, image in enumerate(images)]

    candidates: list[str] = []
    if not all(report.decoded for report in reports):
        logger.warning("n=%d: stem %s does not factor every image; searching", n, stem)
        candidates = find_stem_candidates(images, n)
        if candidates:
            stem, source = word(candidates[0]), StemSource.DISCOVERED
            reports = [_image_report(a, image, stem) for a, image in enumerate(images)]
        else:
            source = StemSource.NOT_FOUND

    return MullerReport(
        n=n,
        stem=str(stem) if source is not StemSource.NOT_FOUND else None,
        stem_source=source,
        certificate=certificate,
        images=reports,
        candidates=candidates,
    )

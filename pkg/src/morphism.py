"""Ternary morphisms and their square-freeness certificates.

Two classical finite tests are implemented. A uniform morphism is square-free
as soon as it maps the 12 square-free words of length 3 to square-free words
(Berstel). A general ternary morphism is checked on every square-free word of
length at most 5 (Crochemore's criterion in its ternary form).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from src.squarefree import find_square, is_square_free, square_free_words
from src.types import CertificateMethod, Counterexample, SquarefreeCertificate
from src.words import TernaryWord, cyclic_shift

logger = logging.getLogger(__name__)

BERSTEL_WORDS: tuple[TernaryWord, ...] = tuple(square_free_words(3))
CROCHEMORE_WORDS: tuple[TernaryWord, ...] = tuple(
    w for length in range(1, 6) for w in square_free_words(length)
)


@dataclass(frozen=True)
class TernaryMorphism:
    images: tuple[TernaryWord, TernaryWord, TernaryWord]

    def __post_init__(self) -> None:
        if len(self.images) != 3:
            raise ValueError(f"a ternary morphism needs 3 images, got {len(self.images)}")
        for letter, image in enumerate(self.images):
            if not len(image):
                raise ValueError(f"image of {letter} is empty")

    @property
    def uniform(self) -> bool:
        return len({len(image) for image in self.images}) == 1

    @property
    def cyclic_shift_form(self) -> bool:
        image0, image1, image2 = self.images
        return image1 == cyclic_shift(image0, 1) and image2 == cyclic_shift(image1, 1)

    @property
    def width(self) -> int:
        """Common image length of a uniform morphism."""
        if not self.uniform:
            raise ValueError("morphism is not uniform")
        return len(self.images[0])

    def image(self, letter: int) -> TernaryWord:
        return self.images[letter]

    def __str__(self) -> str:
        return ", ".join(f"{a} -> {image}" for a, image in enumerate(self.images))


def from_seed(f0: TernaryWord) -> TernaryMorphism:
    """The cyclic shift morphism with f(0) = f0, f(1) = sigma(f0), f(2) = sigma^2(f0)."""
    if not len(f0):
        raise ValueError("seed must be nonempty")
    return TernaryMorphism((f0, cyclic_shift(f0, 1), cyclic_shift(f0, 2)))


def from_images(images: Sequence[TernaryWord]) -> TernaryMorphism:
    return TernaryMorphism(tuple(images))  # type: ignore[arg-type]


def apply(m: TernaryMorphism, w: TernaryWord) -> TernaryWord:
    images = [image.letters for image in m.images]
    return TernaryWord(b"".join(images[a] for a in w.letters))


def _certify(
    m: TernaryMorphism,
    words: Sequence[TernaryWord],
    method: CertificateMethod,
) -> SquarefreeCertificate:
    for w in words:
        image = apply(m, w)
        if is_square_free(image):
            continue
        witness = find_square(image)
        logger.debug("%s: image of %s has square %s", method.value, w, witness)
        return SquarefreeCertificate(
            method=method,
            tested_words=len(words),
            verdict=False,
            counterexample=Counterexample(word=str(w), image_witness=witness),
        )
    return SquarefreeCertificate(method=method, tested_words=len(words), verdict=True)


def berstel_test(m: TernaryMorphism) -> SquarefreeCertificate:
    if not m.uniform:
        raise ValueError("the Berstel test needs a uniform morphism; use crochemore_test")
    return _certify(m, BERSTEL_WORDS, CertificateMethod.BERSTEL_3)


def crochemore_test(m: TernaryMorphism) -> SquarefreeCertificate:
    return _certify(m, CROCHEMORE_WORDS, CertificateMethod.CROCHEMORE_5)

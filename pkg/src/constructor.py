"""Certified n-uniform square-free cyclic shift morphisms for every admissible n.

For 13 <= n <= 122 the seed f(0) comes from the appendix fixture. From 123 on
(and on request from 105 on) it is assembled as y = alpha_q x alpha_r, with x
cut out of a 1-count of the Thue-Morse word. Every seed, whatever its source,
is accepted only after the Berstel test certifies it.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from typing import Optional

from src.alpha_catalog import ALPHA
from src.errors import ConstructionError, FixtureError, NonexistenceError, VerificationError
from src.fixtures import load_appendix, load_muller
from src.morphism import TernaryMorphism, berstel_test, from_seed
from src.search import EXCLUDED, search_seeds
from src.thue_morse import make_x
from src.types import (
    ConstructionRecipe,
    ConstructionSource,
    SquarefreeCertificate,
    SearchMode,
    StemEvidence,
    StemExistence,
)
from src.words import TernaryWord

logger = logging.getLogger(__name__)

MIN_N = 13
APPENDIX_MAX_N = 122
ASSEMBLY_MIN_N = 123
CITED_ONLY = frozenset({14, 15, 16})
TRIVIAL_STEM_LENGTHS = frozenset({1, 2})
MIN_X_LENGTH = 9  # 4k - 15 with k = 6
MAX_X_ATTEMPTS = 8

# |alpha_q| + |alpha_r| -> (q, r); the four sums cover the four residues mod 4
PAIR_FOR_SUM: dict[int, tuple[int, int]] = {
    96: (1, 2),
    117: (2, 3),
    110: (1, 4),
    103: (1, 3),
}


@dataclass(frozen=True)
class PairChoice:
    q: int
    r: int
    x_length: int
    k: int


@dataclass(frozen=True)
class CertifiedMorphism:
    morphism: TernaryMorphism
    recipe: ConstructionRecipe
    certificate: SquarefreeCertificate

    @property
    def seed(self) -> TernaryWord:
        return self.morphism.images[0]


# ---------------------------------------------------------------------------
# Pair selection
# ---------------------------------------------------------------------------

def _pair_for(n: int) -> PairChoice | None:
    for pair_sum, (q, r) in PAIR_FOR_SUM.items():
        x_length = n - pair_sum
        if x_length % 4 == 1 and x_length >= MIN_X_LENGTH:
            return PairChoice(q=q, r=r, x_length=x_length, k=(x_length + 15) // 4)
    return None


def select_pair(n: int) -> PairChoice:
    """The unique (q, r) whose length sum leaves an x of length 1 mod 4."""
    if n < ASSEMBLY_MIN_N:
        raise ValueError(f"select_pair needs n >= {ASSEMBLY_MIN_N}, got {n}")
    choice = _pair_for(n)
    assert choice is not None  # every residue has x_length >= 9 from 123 on
    return choice


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def assemble(n: int) -> CertifiedMorphism:
    """Build and certify y = alpha_q x alpha_r.

    Works for every n whose residue class already admits x of length >= 9
    (the smallest such n per class are 105, 112, 119 and 126). When the
    Berstel test rejects a seed, the next 01v01 factor of the same length is
    tried, up to MAX_X_ATTEMPTS times.
    """
    choice = _pair_for(n)
    if choice is None:
        raise ValueError(f"no alpha pair leaves an x of length >= {MIN_X_LENGTH} for n={n}")
    alpha_q, alpha_r = ALPHA[choice.q], ALPHA[choice.r]

    last_recipe: ConstructionRecipe | None = None
    for occurrence in range(MAX_X_ATTEMPTS):
        bracketed = make_x(choice.k, occurrence)
        seed = alpha_q + bracketed.x + alpha_r
        recipe = ConstructionRecipe(
            n=n,
            source=ConstructionSource.ASSEMBLED,
            q=choice.q,
            r=choice.r,
            x_length=len(bracketed.x),
            k=choice.k,
            occurrence=occurrence,
        )
        if len(seed) != n:
            raise ConstructionError(f"assembled seed has length {len(seed)}, expected {n}", recipe)
        morphism = from_seed(seed)
        certificate = berstel_test(morphism)
        if certificate.verdict:
            logger.debug(
                "n=%d assembled from alpha_%d + x(k=%d, occurrence %d) + alpha_%d",
                n, choice.q, choice.k, occurrence, choice.r,
            )
            return CertifiedMorphism(morphism=morphism, recipe=recipe, certificate=certificate)
        logger.warning(
            "n=%d: seed from occurrence %d failed the Berstel test on %s; retrying",
            n, occurrence, certificate.counterexample.word if certificate.counterexample else "?",
        )
        last_recipe = recipe
    raise ConstructionError(
        f"no certified seed for n={n} after {MAX_X_ATTEMPTS} choices of x", last_recipe
    )


def construct(
    n: int,
    *,
    assembled: bool = False,
    data_dir: str | os.PathLike[str] | None = None,
) -> CertifiedMorphism:
    """A certified n-uniform square-free cyclic shift morphism.

    ``assembled`` forces the alpha/x assembly for 105 <= n <= 122 instead of
    the appendix lookup.
    """
    if n in EXCLUDED:
        raise NonexistenceError(
            n, f"exhaustive search rules out n in {sorted(EXCLUDED)}"
        )
    if n < MIN_N:
        raise ValueError(f"construct needs n >= {MIN_N}, got {n}; search covers shorter seeds")
    if n >= ASSEMBLY_MIN_N or assembled:
        return assemble(n)

    seeds = load_appendix(data_dir)
    if n not in seeds:
        raise FixtureError(f"appendix fixture has no entry for n={n}")
    recipe = ConstructionRecipe(n=n, source=ConstructionSource.APPENDIX)
    morphism = from_seed(seeds[n])
    certificate = berstel_test(morphism)
    if not certificate.verdict:
        raise VerificationError(
            f"appendix seed for n={n} failed the Berstel test",
            {"seed": str(seeds[n]), "certificate": certificate.model_dump(mode="json")},
        )
    logger.debug("n=%d taken from the appendix fixture", n)
    return CertifiedMorphism(morphism=morphism, recipe=recipe, certificate=certificate)


# ---------------------------------------------------------------------------
# Stem existence
# ---------------------------------------------------------------------------

def stem_evidence(
    n: int, data_dir: str | os.PathLike[str] | None = None
) -> StemExistence:
    """Why an infinite square-free word with an n-stem factorization exists.

    Below 13 the absence of a uniform cyclic shift morphism proves nothing
    about stems, so those lengths are reported as not established unless the
    factorization is trivial.
    """
    if n < 1:
        raise ValueError(f"stem length must be >= 1, got {n}")
    if n in TRIVIAL_STEM_LENGTHS:
        return StemExistence(n=n, exists=True, evidence=StemEvidence.TRIVIAL, bundled=False)
    if n in CITED_ONLY:
        return StemExistence(n=n, exists=True, evidence=StemEvidence.CITED, bundled=False)
    if n in EXCLUDED:
        try:
            bundled = n in load_muller(data_dir)
        except FixtureError:
            bundled = False
        return StemExistence(n=n, exists=True, evidence=StemEvidence.MULLER_MORPHISM, bundled=bundled)
    if n >= MIN_N:
        return StemExistence(n=n, exists=True, evidence=StemEvidence.UNIFORM_MORPHISM, bundled=True)

    outcome = search_seeds(n, SearchMode.FIRST)
    if outcome.solutions:
        return StemExistence(n=n, exists=True, evidence=StemEvidence.UNIFORM_MORPHISM, bundled=False)
    logger.info("n=%d: no uniform cyclic shift morphism; stem existence not established", n)
    return StemExistence(n=n, exists=None, evidence=StemEvidence.UNKNOWN, bundled=False)


def stem_word_exists(
    n: int, data_dir: str | os.PathLike[str] | None = None
) -> Optional[bool]:
    """True when an n-stem word is known to exist; None when it is not established."""
    return stem_evidence(n, data_dir).exists

"""The four alpha-words and machine checks of every property claimed for them.

The words were found by computer search; each begins with the prefix
pi = 210201021012010 and ends with its reversal. All checks accept an
alternative catalog so that corrupted copies can be run through them.
"""

from __future__ import annotations

import hashlib
import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from src.squarefree import (
    avoids,
    find_square,
    palindrome3_centers,
    triple_letter_5_factors,
)
from src.thue_morse import BRACKET, FORBIDDEN_IN_X, make_x
from src.types import AlphaPropertyReport, PropertyCheck
from src.words import (
    TernaryWord,
    cyclic_shift,
    factor_indices,
    has_internal_occurrence,
    reverse,
    word,
)

logger = logging.getLogger(__name__)

ALPHA: dict[int, TernaryWord] = {
    1: word("21020102101201021201210212010210120102012"),
    2: word("2102010210120102120121020120210201210212010210120102012"),
    3: word("21020102101201021201210201202101201021201210212010210120102012"),
    4: word("210201021012010212012102012021012010210120210201210212010210120102012"),
}
EXPECTED_LENGTHS = {1: 41, 2: 55, 3: 62, 4: 69}
PI = word("210201021012010")

# Shortest prefix/suffix window in which 020, 010 and 101 all occur; the
# length-10 prefix 2102010210 only has centers 1 and 2 (101 starts at index 8).
PALINDROME_WINDOW = 11
ISOLATION_LENGTH = 7
PALINDROME_010 = word("010")
PALINDROME_010_INDICES = [4, 12]
TRIPLE_PREFIX_FACTOR = word("02010")
TRIPLE_SUFFIX_FACTOR = word("01020")
BORDER = word("2")

Catalog = Mapping[int, TernaryWord]


def alpha_checksum(catalog: Catalog = ALPHA) -> str:
    text = "".join(f"{catalog[q]}\n" for q in sorted(catalog))
    return hashlib.sha256(text.encode("ascii")).hexdigest()


def _check_index(q: int, catalog: Catalog) -> None:
    if q not in catalog:
        raise ValueError(f"alpha index must be one of {sorted(catalog)}, got {q}")


# ---------------------------------------------------------------------------
# Palindromes, special factors and borders
# ---------------------------------------------------------------------------

def _borders(alpha: TernaryWord, others: list[TernaryWord]) -> tuple[set[str], set[str]]:
    """Proper prefixes of alpha that are suffixes of some other word, and vice versa."""
    prefixes: set[str] = set()
    suffixes: set[str] = set()
    for other in others:
        for size in range(1, min(len(alpha) - 1, len(other)) + 1):
            if other.endswith(alpha[:size]):
                prefixes.add(str(alpha[:size]))
            if other.startswith(alpha[len(alpha) - size :]):
                suffixes.add(str(alpha[len(alpha) - size :]))
    return prefixes, suffixes


def _remark2_checks(
    alpha: TernaryWord, others: list[TernaryWord], label: str
) -> list[PropertyCheck]:
    checks: list[PropertyCheck] = []

    square = find_square(alpha)
    checks.append(
        PropertyCheck(
            name=f"square_free{label}",
            passed=square is None,
            witness=None if square is None else f"square at {square.start}, half {square.half_length}",
        )
    )

    prefix = alpha[: len(PI)]
    indices = [hit.index for hit in factor_indices(prefix, PALINDROME_010)]
    checks.append(
        PropertyCheck(
            name=f"pi_prefix_010{label}",
            passed=prefix == PI and indices == PALINDROME_010_INDICES,
            witness=f"prefix {prefix}, 010 at {indices}",
        )
    )

    for side, window in (
        ("prefix", alpha[:PALINDROME_WINDOW]),
        ("suffix", alpha[len(alpha) - PALINDROME_WINDOW :]),
    ):
        centers = palindrome3_centers(window)
        checks.append(
            PropertyCheck(
                name=f"palindrome_centers_{side}{label}",
                passed=centers == {0, 1, 2},
                witness=f"{window} has centers {sorted(centers)}",
            )
        )

    hits = triple_letter_5_factors(alpha)
    expected_ok = (
        len(hits) == 2
        and hits[0][0] == TRIPLE_PREFIX_FACTOR
        and hits[0][1] + 5 <= ISOLATION_LENGTH
        and hits[1][0] == TRIPLE_SUFFIX_FACTOR
        and hits[1][1] >= len(alpha) - ISOLATION_LENGTH
    )
    checks.append(
        PropertyCheck(
            name=f"triple_letter_factors{label}",
            passed=expected_ok,
            witness=", ".join(f"{factor}@{index}" for factor, index in hits),
        )
    )

    prefixes, suffixes = _borders(alpha, others)
    checks.append(
        PropertyCheck(
            name=f"borders{label}",
            passed=prefixes == {str(BORDER)} and suffixes == {str(BORDER)},
            witness=f"prefix borders {sorted(prefixes)}, suffix borders {sorted(suffixes)}",
        )
    )
    return checks


def verify_remark2(q: int, catalog: Catalog = ALPHA) -> AlphaPropertyReport:
    """Square-freeness, the pi prefix, palindrome windows, special factors and
    borders of alpha_q, and the same for its reversal (against reversed partners)."""
    _check_index(q, catalog)
    alpha = catalog[q]
    others = [catalog[r] for r in sorted(catalog)]
    checks = _remark2_checks(alpha, others, "")
    checks += _remark2_checks(reverse(alpha), [reverse(w) for w in others], " (reversed)")
    report = AlphaPropertyReport(q=q, checks=checks)
    for failure in report.failures():
        logger.info("alpha_%d: %s failed (%s)", q, failure.name, failure.witness)
    return report


# ---------------------------------------------------------------------------
# Length 7 prefix isolation
# ---------------------------------------------------------------------------

def verify_shift_isolation(q: int, catalog: Catalog = ALPHA) -> bool:
    """No cyclic shift of the length-7 prefix (suffix) of alpha_q occurs anywhere
    in an alpha-word except as that word's own prefix (suffix)."""
    _check_index(q, catalog)
    alpha = catalog[q]
    prefix = alpha[:ISOLATION_LENGTH]
    suffix = alpha[len(alpha) - ISOLATION_LENGTH :]
    for i in range(3):
        for host in catalog.values():
            prefix_hits = [hit.index for hit in factor_indices(host, cyclic_shift(prefix, i))]
            suffix_hits = [hit.index for hit in factor_indices(host, cyclic_shift(suffix, i))]
            if any(index != 0 for index in prefix_hits):
                return False
            if any(index != len(host) - ISOLATION_LENGTH for index in suffix_hits):
                return False
    return True


# ---------------------------------------------------------------------------
# Finite lemmas
# ---------------------------------------------------------------------------

def lemma_aa_cases(catalog: Catalog = ALPHA) -> Iterator[tuple[int, int, int, int, TernaryWord]]:
    """(q, r, i, j, sigma^i(alpha_r) sigma^j(alpha_q)) for q != r and i != j."""
    for q, r in itertools.permutations(sorted(catalog), 2):
        for i, j in itertools.permutations(range(3), 2):
            yield q, r, i, j, cyclic_shift(catalog[r], i) + cyclic_shift(catalog[q], j)


def verify_lemma_aa(catalog: Catalog = ALPHA) -> bool:
    return all(find_square(joined) is None for *_, joined in lemma_aa_cases(catalog))


def verify_lemma_qr(catalog: Catalog = ALPHA) -> bool:
    """Shifts of alpha_q are never internal in (shift of alpha_r)(shift of alpha_q),
    and shifts of alpha_r never internal in (shift of alpha_r)(shift of alpha_q)."""
    for q, r in itertools.permutations(sorted(catalog), 2):
        shifts_q = [cyclic_shift(catalog[q], i) for i in range(3)]
        shifts_r = [cyclic_shift(catalog[r], i) for i in range(3)]
        for beta, gamma in itertools.product(shifts_q, shifts_r):
            if any(has_internal_occurrence(gamma + beta, alpha) for alpha in shifts_q):
                return False
            if any(has_internal_occurrence(delta + beta, gamma) for delta in shifts_r):
                return False
    return True


def _require_admissible_x(x: TernaryWord) -> None:
    bracketed = BRACKET + x + BRACKET
    if find_square(bracketed) is not None or not avoids(bracketed, FORBIDDEN_IN_X):
        raise ValueError(
            f"x must make 2102012 x 2102012 square-free and free of 010/212: {x}"
        )


def verify_lemmas_with_x(
    x: TernaryWord, q: int, r: int, catalog: Catalog = ALPHA
) -> bool:
    """x alpha_r and alpha_q x are square-free, and no cyclic shift of alpha_q or
    alpha_r is an internal factor of either word."""
    _check_index(q, catalog)
    _check_index(r, catalog)
    if q == r:
        raise ValueError("q and r must be distinct")
    _require_admissible_x(x)
    left = catalog[q] + x
    right = x + catalog[r]
    if find_square(left) is not None or find_square(right) is not None:
        return False
    for alpha in (catalog[q], catalog[r]):
        for i in range(3):
            shifted = cyclic_shift(alpha, i)
            if has_internal_occurrence(left, shifted) or has_internal_occurrence(right, shifted):
                return False
    return True


def verify_x_isolation(x: TernaryWord, catalog: Catalog = ALPHA) -> bool:
    """1 is not a palindrome center in x, so no cyclic shift of a palindrome
    window of an alpha-word can be a factor of any cyclic shift of x."""
    if 1 in palindrome3_centers(x):
        return False
    shifts_of_x = [cyclic_shift(x, i) for i in range(3)]
    for alpha in catalog.values():
        for window in (alpha[:PALINDROME_WINDOW], alpha[len(alpha) - PALINDROME_WINDOW :]):
            if any(window in shifted for shifted in shifts_of_x):
                return False
    return True


# ---------------------------------------------------------------------------
# Whole suite
# ---------------------------------------------------------------------------

@dataclass
class AlphaSuiteResult:
    remark2: list[AlphaPropertyReport] = field(default_factory=list)
    shift_isolation: dict[int, bool] = field(default_factory=dict)
    lemma_aa: bool = False
    lemma_qr: bool = False
    lemmas_with_x: dict[str, bool] = field(default_factory=dict)
    x_isolation: dict[int, bool] = field(default_factory=dict)

    def verdicts(self) -> dict[str, bool]:
        verdicts = {f"remark2_alpha{report.q}": report.passed for report in self.remark2}
        verdicts |= {f"shift_isolation_alpha{q}": ok for q, ok in self.shift_isolation.items()}
        verdicts["lemma_aa"] = self.lemma_aa
        verdicts["lemma_qr"] = self.lemma_qr
        verdicts |= {f"lemmas_with_x[{case}]": ok for case, ok in self.lemmas_with_x.items()}
        verdicts |= {f"x_isolation[k={k}]": ok for k, ok in self.x_isolation.items()}
        return verdicts


def run_alpha_suite(ks: tuple[int, ...] = (6, 20, 40), catalog: Catalog = ALPHA) -> AlphaSuiteResult:
    result = AlphaSuiteResult()
    for q in sorted(catalog):
        result.remark2.append(verify_remark2(q, catalog))
        result.shift_isolation[q] = verify_shift_isolation(q, catalog)
    result.lemma_aa = verify_lemma_aa(catalog)
    result.lemma_qr = verify_lemma_qr(catalog)
    for k in ks:
        x = make_x(k).x
        result.x_isolation[k] = verify_x_isolation(x, catalog)
        for q, r in itertools.permutations(sorted(catalog), 2):
            result.lemmas_with_x[f"k={k} q={q} r={r}"] = verify_lemmas_with_x(x, q, r, catalog)
    return result

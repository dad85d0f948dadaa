"""Exhaustive backtracking over seeds f(0) of n-uniform cyclic shift morphisms.

Applying sigma letterwise to a solution seed gives another solution, so only
seeds beginning with 2 are enumerated. A seed that is not itself square-free
cannot work (f(0) is a factor of every image), which is the pruning rule; each
complete seed is then settled by the Berstel test.

The tree is cut into work units at a fixed prefix depth. Units are explored
independently and merged in prefix order, so the outcome does not depend on
the number of workers.
"""

from __future__ import annotations

import functools
import itertools
import logging
import multiprocessing as mp
import os
from typing import Callable, Iterable, Iterator, NamedTuple, Optional

from src.config import SEARCH_CEILING, SEARCH_JOBS, SEARCH_SPLIT_DEPTH
from src.fixtures import load_appendix
from src.morphism import berstel_test, from_seed
from src.squarefree import IncrementalChecker, is_square_free, square_free_words
from src.types import AppendixCheckReport, AppendixEntryCheck, SearchMode, SearchOutcome
from src.words import Letter, TernaryWord, cyclic_shift, reverse, word

logger = logging.getLogger(__name__)

ROOT_LETTER = Letter.TWO
BRUTE_FORCE_MAX_N = 12
APPENDIX_RANGE = range(13, 123)
# lengths from 13 on with no solution; 2..12 have none either
EXCLUDED = frozenset({14, 15, 16, 20, 21, 22})


class _UnitResult(NamedTuple):
    solutions: list[str]
    nodes: int
    cut: bool


def canonical(seed: TernaryWord) -> TernaryWord:
    """The member of seed's sigma-orbit that begins with 2."""
    if not len(seed):
        return seed
    return cyclic_shift(seed, (ROOT_LETTER - seed[0]) % 3)


def _is_solution(seed: TernaryWord) -> bool:
    return berstel_test(from_seed(seed)).verdict


# ---------------------------------------------------------------------------
# Work units
# ---------------------------------------------------------------------------

def _work_units(n: int, split_depth: int) -> tuple[list[TernaryWord], int]:
    """Square-free prefixes starting with 2 at the split depth, and the number
    of tree nodes visited to enumerate them."""
    depth = min(split_depth, n)
    nodes = 0
    units: list[TernaryWord] = []
    for length in range(1, depth + 1):
        level = [w for w in square_free_words(length) if w[0] == ROOT_LETTER]
        nodes += len(level)
        if length == depth:
            units = level
    return units, nodes


def _explore_unit(
    prefix: bytes, n: int, first: bool, budget: Optional[int]
) -> _UnitResult:
    """Depth-first search below one prefix; nodes are accepted letters past it."""
    checker = IncrementalChecker(capacity=n)
    if checker.feed(prefix) != len(prefix):
        return _UnitResult([], 0, False)
    if len(prefix) == n:
        seed = checker.committed
        return _UnitResult([str(seed)] if _is_solution(seed) else [], 0, False)

    solutions: list[str] = []
    nodes = 0
    cut = False
    next_letter = [0]  # next candidate at each depth below the prefix
    while next_letter:
        a = next_letter[-1]
        if a > 2:
            next_letter.pop()
            if next_letter:
                checker.pop()
            continue
        next_letter[-1] = a + 1
        if budget is not None and nodes >= budget:
            cut = True
            break
        if not checker.push(a):
            continue
        nodes += 1
        if len(checker) < n:
            next_letter.append(0)
            continue
        seed = checker.committed
        if _is_solution(seed):
            solutions.append(str(seed))
            if first:
                break
        checker.pop()
    return _UnitResult(solutions, nodes, cut)


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------

def search_seeds(
    n: int,
    mode: SearchMode = SearchMode.ALL,
    budget: Optional[int] = None,
    *,
    jobs: int = SEARCH_JOBS,
    split_depth: int = SEARCH_SPLIT_DEPTH,
) -> SearchOutcome:
    """All (or the first) seeds of length n, starting with 2, whose cyclic shift
    morphism passes the Berstel test.

    ``budget`` caps the number of explored nodes; a search cut by it is
    reported with ``exhaustive=False``. With a budget the search always runs
    in a single worker so the cut point is reproducible.
    """
    if n < 1:
        raise ValueError(f"seed length must be >= 1, got {n}")
    if budget is not None and budget < 0:
        raise ValueError(f"budget must be >= 0, got {budget}")
    if jobs < 1 or split_depth < 1:
        raise ValueError("jobs and split_depth must be >= 1")

    first = mode is SearchMode.FIRST
    units, nodes = _work_units(n, split_depth)
    solutions: list[str] = []
    cut = False

    if budget is not None:
        if jobs > 1:
            logger.debug("node budget given; running in a single worker")
        remaining = budget - nodes
        if remaining < 0:
            cut = bool(units)
            units = []
        for prefix in units:
            result = _explore_unit(prefix.letters, n, first, remaining)
            remaining -= result.nodes
            solutions += result.solutions
            nodes += result.nodes
            if result.cut:
                cut = True
                break
            if first and solutions:
                break
    else:
        explore = functools.partial(_explore_unit, n=n, first=first, budget=None)
        prefixes = [prefix.letters for prefix in units]
        for index, result in enumerate(_run_units(explore, prefixes, jobs)):
            solutions += result.solutions
            nodes += result.nodes
            logger.debug("n=%d: unit %d/%d done, %d nodes", n, index + 1, len(prefixes), result.nodes)
            if first and solutions:
                break

    if cut:
        logger.warning("search for n=%d stopped by its budget of %d nodes", n, budget)
    outcome = SearchOutcome(
        n=n,
        mode=mode,
        solutions=solutions,
        nodes_explored=nodes,
        exhaustive=not cut,
        budget=budget,
    )
    logger.info("n=%d: %d solution(s), %d nodes", n, len(solutions), nodes)
    return outcome


def _run_units(
    explore: Callable[[bytes], _UnitResult], prefixes: list[bytes], jobs: int
) -> Iterator[_UnitResult]:
    if jobs == 1 or len(prefixes) < 2:
        yield from map(explore, prefixes)
        return
    with mp.Pool(min(jobs, len(prefixes))) as pool:
        # imap keeps prefix order; leaving the block early terminates the pool
        yield from pool.imap(explore, prefixes)


# ---------------------------------------------------------------------------
# Oracles and cross-checks
# ---------------------------------------------------------------------------

def brute_force_seeds(n: int) -> list[str]:
    """Every seed of length n (all first letters) that passes the Berstel test."""
    if not 1 <= n <= BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force is limited to 1 <= n <= {BRUTE_FORCE_MAX_N}, got {n}")
    found = []
    for letters in itertools.product(range(3), repeat=n):
        seed = TernaryWord(bytes(letters))
        if is_square_free(seed) and _is_solution(seed):
            found.append(str(seed))
    return found


def check_reversal_closure(solutions: Iterable[str]) -> list[str]:
    """Solutions whose reversal (brought back to a 2-initial seed) is missing.

    An empty result means the set is closed under reversal.
    """
    found = set(solutions)
    return sorted(s for s in found if str(canonical(reverse(word(s)))) not in found)


def cross_check_appendix(
    ns: Iterable[int] = APPENDIX_RANGE,
    *,
    ceiling: int = SEARCH_CEILING,
    jobs: int = SEARCH_JOBS,
    data_dir: str | os.PathLike[str] | None = None,
) -> AppendixCheckReport:
    """Certify every appendix seed in ``ns``; regenerate those up to ``ceiling``."""
    ns = sorted(set(ns))
    if ns and (ns[0] < APPENDIX_RANGE.start or ns[-1] >= APPENDIX_RANGE.stop):
        raise ValueError(
            f"appendix range is [{APPENDIX_RANGE.start}, {APPENDIX_RANGE.stop - 1}], got {ns[0]}..{ns[-1]}"
        )
    seeds = load_appendix(data_dir)
    report = AppendixCheckReport(ceiling=ceiling)
    for n in ns:
        if n in EXCLUDED:
            continue
        seed = seeds.get(n)
        if seed is None:
            report.entries.append(
                AppendixEntryCheck(n=n, seed="", certified=False, detail="no fixture entry")
            )
            continue
        certificate = berstel_test(from_seed(seed))
        entry = AppendixEntryCheck(
            n=n,
            seed=str(seed),
            certified=certificate.verdict,
            detail=None if certificate.verdict else f"Berstel test fails on {certificate.counterexample.word}",
        )
        if n <= ceiling:
            outcome = search_seeds(n, SearchMode.ALL, jobs=jobs)
            representative = str(canonical(seed))
            entry.searched = True
            entry.found_by_search = representative in outcome.solutions
            if not entry.found_by_search:
                entry.detail = f"seed {representative} not among {len(outcome.solutions)} search solutions"
        report.entries.append(entry)
    return report

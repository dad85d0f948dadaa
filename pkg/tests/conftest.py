from __future__ import annotations

import random

import pytest

from src.fixtures import load_appendix, load_muller
from src.squarefree import IncrementalChecker
from src.words import TernaryWord

APPENDIX_NS = [13, 17, 18, 19, *range(23, 123)]


def random_word(rng: random.Random, length: int) -> TernaryWord:
    return TernaryWord(bytes(rng.randrange(3) for _ in range(length)))


def random_square_free_word(rng: random.Random, length: int) -> TernaryWord:
    """Random square-free word by randomized backtracking."""
    checker = IncrementalChecker()
    choices: list[list[int]] = []
    while len(checker) < length:
        if len(choices) == len(checker):
            letters = [0, 1, 2]
            rng.shuffle(letters)
            choices.append(letters)
        options = choices[-1]
        if not options:
            choices.pop()
            checker.pop()
            continue
        if checker.push(options.pop()):
            continue
    return checker.committed


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240613)


@pytest.fixture(scope="session")
def appendix():
    return load_appendix()


@pytest.fixture(scope="session")
def muller():
    return load_muller()

"""Loading of the bundled data files: appendix seeds and the Müller morphisms."""

from __future__ import annotations

import hashlib
import logging
import os
from functools import lru_cache
from pathlib import Path

from src.config import APPENDIX_FILE, MULLER_FILE, get_data_dir
from src.errors import FixtureError
from src.words import TernaryWord, parse_transcribed

logger = logging.getLogger(__name__)


def checksum(path: Path) -> str:
    try:
        return hashlib.sha256(path.read_bytes()).hexdigest()
    except OSError as exc:
        raise FixtureError(f"cannot read fixture {path}: {exc}") from exc


def _data_lines(path: Path) -> list[tuple[int, list[str]]]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FixtureError(f"cannot read fixture {path}: {exc}") from exc
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line.split()))
    return rows


def _parse_word(path: Path, lineno: int, text: str) -> TernaryWord:
    try:
        return parse_transcribed(text)
    except ValueError as exc:
        raise FixtureError(f"{path}:{lineno}: {exc}") from exc


def _parse_int(path: Path, lineno: int, text: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise FixtureError(f"{path}:{lineno}: expected an integer, got {text!r}") from exc


def load_appendix(data_dir: str | os.PathLike[str] | None = None) -> dict[int, TernaryWord]:
    """Seeds f(0) keyed by n. Each seed must have length n."""
    return dict(_load_appendix(get_data_dir(data_dir) / APPENDIX_FILE))


@lru_cache(maxsize=8)
def _load_appendix(path: Path) -> tuple[tuple[int, TernaryWord], ...]:
    seeds: dict[int, TernaryWord] = {}
    for lineno, fields in _data_lines(path):
        if len(fields) != 2:
            raise FixtureError(f"{path}:{lineno}: expected 'N seed', got {len(fields)} fields")
        n = _parse_int(path, lineno, fields[0])
        seed = _parse_word(path, lineno, fields[1])
        if len(seed) != n:
            raise FixtureError(f"{path}:{lineno}: seed for n={n} has length {len(seed)}")
        if n in seeds:
            raise FixtureError(f"{path}:{lineno}: duplicate entry for n={n}")
        seeds[n] = seed
    logger.debug("loaded %d appendix seeds from %s", len(seeds), path)
    return tuple(sorted(seeds.items()))


def load_muller(
    data_dir: str | os.PathLike[str] | None = None,
) -> dict[int, tuple[TernaryWord, TernaryWord, TernaryWord]]:
    """Images (h(0), h(1), h(2)) of the non-uniform morphisms, keyed by n."""
    return dict(_load_muller(get_data_dir(data_dir) / MULLER_FILE))


@lru_cache(maxsize=8)
def _load_muller(path: Path) -> tuple[tuple[int, tuple[TernaryWord, TernaryWord, TernaryWord]], ...]:
    images: dict[int, dict[int, TernaryWord]] = {}
    for lineno, fields in _data_lines(path):
        if len(fields) != 3:
            raise FixtureError(f"{path}:{lineno}: expected 'N letter image', got {len(fields)} fields")
        n = _parse_int(path, lineno, fields[0])
        letter = _parse_int(path, lineno, fields[1])
        if letter not in (0, 1, 2):
            raise FixtureError(f"{path}:{lineno}: letter must be 0, 1 or 2, got {letter}")
        per_n = images.setdefault(n, {})
        if letter in per_n:
            raise FixtureError(f"{path}:{lineno}: duplicate image for n={n}, letter {letter}")
        per_n[letter] = _parse_word(path, lineno, fields[2])
    result = []
    for n, per_n in sorted(images.items()):
        if sorted(per_n) != [0, 1, 2]:
            raise FixtureError(f"{path}: morphism for n={n} lacks images for {sorted({0, 1, 2} - set(per_n))}")
        result.append((n, (per_n[0], per_n[1], per_n[2])))
    return tuple(result)


def fixture_checksums(data_dir: str | os.PathLike[str] | None = None) -> dict[str, str]:
    """sha256 of every fixture file that exists in the data directory."""
    directory = get_data_dir(data_dir)
    return {
        name: checksum(directory / name)
        for name in (APPENDIX_FILE, MULLER_FILE)
        if (directory / name).exists()
    }

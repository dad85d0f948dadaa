import logging
import os
from pathlib import Path

from dotenv import load_dotenv
from rich.console import Console
from rich.logging import RichHandler

load_dotenv()

BUNDLED_DATA_DIR = Path(__file__).parent / "data"

DATA_DIR = os.environ.get("STEM_DATA_DIR", "")
SEARCH_CEILING = int(os.environ.get("SEARCH_CEILING", "30"))
SEARCH_JOBS = int(os.environ.get("SEARCH_JOBS", "1"))
SEARCH_SPLIT_DEPTH = int(os.environ.get("SEARCH_SPLIT_DEPTH", "6"))
LOG_LEVEL = os.environ.get("LOG_LEVEL", "WARNING")

APPENDIX_FILE = "appendix.txt"
MULLER_FILE = "muller.txt"


def get_data_dir(override: str | os.PathLike[str] | None = None) -> Path:
    """Fixture directory: CLI flag, then STEM_DATA_DIR, then the bundled data."""
    if override:
        return Path(override)
    if DATA_DIR:
        return Path(DATA_DIR)
    return BUNDLED_DATA_DIR


def configure_logging(level: str | int = LOG_LEVEL) -> None:
    handler = RichHandler(
        console=Console(stderr=True),
        show_path=False,
        rich_tracebacks=True,
    )
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[handler],
        force=True,
    )

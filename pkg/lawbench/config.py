"""Environment configuration, default bounds and logging setup."""

import logging
import os

from lawbench.errors import UsageError
from lawbench.schemas import Bounds

# Spec document used when neither --spec nor MLB_SPEC_PATH is given
DEFAULT_SPEC_PATH = "data/catalog.json"
SPEC_PATH = os.getenv("MLB_SPEC_PATH", DEFAULT_SPEC_PATH)

LOG_LEVEL = os.getenv("MLB_LOG_LEVEL", "WARNING").upper()
LOG_FORMAT = "%(levelname)-5.5s [%(name)s] %(message)s"

WORKERS = int(os.getenv("MLB_WORKERS", "1"))

DEFAULT_BOUNDS = Bounds(maxCases=int(os.getenv("MLB_MAX_CASES", "250000")))


def setup_logging(level: str | None = None) -> None:
    """Configure the ``lawbench`` logger tree to write to stderr."""
    logger = logging.getLogger("lawbench")
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)
    name = (level or LOG_LEVEL).upper()
    try:
        logger.setLevel(name)
    except ValueError:
        raise UsageError(f"unknown log level {name!r}") from None


def parse_bounds_overrides(text: str) -> dict[str, int]:
    """Parse ``--bounds`` syntax: ``maxListLen=3,maxFnEnum=128``."""
    overrides: dict[str, int] = {}
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        key, sep, value = chunk.partition("=")
        if not sep:
            raise ValueError(f"expected key=value, got {chunk!r}")
        overrides[key.strip()] = int(value)
    return overrides


def layer_bounds(base: Bounds, *layers: dict) -> Bounds:
    """Apply override dictionaries left to right; pydantic re-validates the result."""
    merged = base.model_dump()
    for layer in layers:
        merged.update({key: value for key, value in layer.items() if value is not None})
    return Bounds.model_validate(merged)

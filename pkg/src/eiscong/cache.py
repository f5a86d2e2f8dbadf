"""Persisted Bernoulli cache: line format "k num/den", decimal, append-only."""

from __future__ import annotations

import os
from fractions import Fraction
from pathlib import Path

from . import exact

__all__ = ["CACHE_ENV_VAR", "default_cache_path", "load_bernoulli_cache", "save_bernoulli_cache"]

CACHE_ENV_VAR = "EISCONG_BERNOULLI_CACHE"


def default_cache_path() -> Path | None:
    value = os.environ.get(CACHE_ENV_VAR)
    return Path(value) if value else None


def parse_cache_line(line: str) -> tuple[int, Fraction]:
    index_text, value_text = line.split()
    num_text, den_text = value_text.split("/")
    return int(index_text), Fraction(int(num_text), int(den_text))


def format_cache_line(index: int, value: Fraction) -> str:
    return f"{index} {value.numerator}/{value.denominator}\n"


def load_bernoulli_cache(path: str | Path) -> int:
    """Seed the in-memory memo from a cache file; returns entries loaded."""
    path = Path(path)
    if not path.exists():
        return 0
    count = 0
    with path.open() as handle:
        for line in handle:
            line = line.strip()
            if not line:
                continue
            index, value = parse_cache_line(line)
            exact.seed_bernoulli(index, value)
            count += 1
    return count


def save_bernoulli_cache(path: str | Path) -> int:
    """Append memoized values not yet present in the file; returns appended count."""
    path = Path(path)
    existing: set[int] = set()
    if path.exists():
        with path.open() as handle:
            for line in handle:
                line = line.strip()
                if line:
                    existing.add(parse_cache_line(line)[0])
    new_indices = [k for k in exact.bernoulli_cached_indices() if k not in existing]
    if not new_indices:
        return 0
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("a") as handle:
        for k in new_indices:
            handle.write(format_cache_line(k, exact.bernoulli(k)))
    return len(new_indices)

"""Utility functions for hypercover."""

import time
import zlib
from contextlib import contextmanager
from typing import Dict, Iterator, Union

import numpy as np
from rich.console import Console

# Shared console so that --quiet silences library warnings too
console = Console(legacy_windows=True)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")

_verbosity: Dict[str, int] = {"level": LOG_LEVELS.index("INFO")}

# Symbols that show up in degree and threshold messages
_ASCII_SYMBOLS = str.maketrans(
    {
        "δ": "delta",
        "Δ": "Delta",
        "λ": "lambda",
        "Λ": "Lambda",
        "≥": ">=",
        "≤": "<=",
        "≠": "!=",
        "→": "->",
        "⌊": "floor(",
        "⌋": ")",
        "⌈": "ceil(",
        "⌉": ")",
    }
)


def set_quiet(quiet: bool) -> None:
    """Silence (or re-enable) all console output."""
    console.quiet = quiet


def set_log_level(level: str) -> None:
    """Choose how chatty the console is: DEBUG, INFO, WARNING or ERROR."""
    name = level.upper()
    if name not in LOG_LEVELS:
        raise ValueError(f"unknown log level '{level}' (choose from {', '.join(LOG_LEVELS)})")
    _verbosity["level"] = LOG_LEVELS.index(name)


def log_enabled(level: str) -> bool:
    return LOG_LEVELS.index(level) >= _verbosity["level"]


def log_debug(message: str) -> None:
    """Progress detail from inside the algorithms."""
    if log_enabled("DEBUG"):
        console.print(f"[dim]{message}[/dim]")


def log_warning(message: str) -> None:
    if log_enabled("WARNING"):
        console.print(f"[yellow]Warning:[/yellow] {message}")


def sanitize_error(e: Exception) -> str:
    """One ASCII line for an error, as printed on the console and stored in run records.

    Math symbols are spelled out and multi-line messages (pydantic, networkx)
    are joined with '; '.
    """
    text = (str(e) or type(e).__name__).translate(_ASCII_SYMBOLS)
    text = "; ".join(line.strip() for line in text.splitlines() if line.strip())
    return text.encode("ascii", errors="ignore").decode("ascii")


def format_elapsed_time(seconds: float) -> str:
    """Milliseconds below one second, then seconds, then minutes."""
    if seconds < 1:
        return f"{seconds * 1000:.0f}ms"
    if seconds < 60:
        return f"{seconds:.1f}s"
    minutes, secs = divmod(int(seconds), 60)
    return f"{minutes}m {secs:02d}s"


class StepTimer:
    """Elapsed-time holder filled in by `timed_step`."""

    def __init__(self) -> None:
        self.elapsed = 0.0


@contextmanager
def timed_step(step_name: str) -> Iterator[StepTimer]:
    """Time a CLI step; the duration is printed at INFO and below."""
    timer = StepTimer()
    start_time = time.perf_counter()
    try:
        yield timer
    finally:
        timer.elapsed = time.perf_counter() - start_time
        if log_enabled("INFO"):
            console.print(f"[dim]{step_name}: {format_elapsed_time(timer.elapsed)}[/dim]")


def stream_key(name: Union[str, int]) -> int:
    """Stable integer key for a named random sub-stream."""
    if isinstance(name, int):
        return name
    return zlib.crc32(name.encode("utf-8"))


def make_rng(seed: int, *path: Union[str, int]) -> np.random.Generator:
    """Build a generator for the sub-stream `path` of the master `seed`.

    The same (seed, path) always yields the same stream, independent of
    the order in which other streams were created.
    """
    sequence = np.random.SeedSequence(
        entropy=seed, spawn_key=tuple(stream_key(p) for p in path)
    )
    return np.random.default_rng(sequence)

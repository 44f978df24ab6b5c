"""
General utility functions.
"""
import os
import hashlib
import itertools
from pathlib import Path

# optional import: the kernel modules use this package without logging set up
try:
    from mfcas.log import get_logger

    logger = get_logger(__name__)
except ModuleNotFoundError:
    logger = None

__all__ = [
    "DummyExecutor",
    "md5_matches",
    "md5sum",
    "get_n_workers",
    "fresh_name",
    "powerset",
]


def md5sum(filepath) -> str:
    """Returns the MD5 hex digest of a file."""
    with open(filepath, "rb") as f:
        return hashlib.md5(f.read()).hexdigest()


def md5_matches(expected_md5: str, filepath: str) -> bool:
    """Checks the MD5 hash for a given filename and compares with the expected value.

    Args:
        expected_md5: expected MD5 hash.
        filepath: file for which MD5 will be computed.

    Returns:
        True if MD5 matches, False otherwise.
    """
    if not Path(filepath).exists():
        return False

    found = md5sum(filepath)
    if found != expected_md5 and logger is not None:
        logger.warning(f"MD5 mismatch for {filepath}: expected {expected_md5}, found {found}")
    return found == expected_md5


def get_n_workers(n_jobs: int | None) -> int:
    """
    Returns the number of workers for parallel processing.

    Args:
        n_jobs: requested number of jobs. None means all cores; a negative value
            is added to the number of cores.

    Returns:
        The number of workers to use.
    """
    n_cpu_cores = os.cpu_count()
    if n_cpu_cores is None:
        raise ValueError(
            "Could not determine the number of CPU cores. Please specify a positive value of n_jobs"
        )

    if n_jobs is None:
        return n_cpu_cores

    n_workers = n_cpu_cores + n_jobs if n_jobs < 0 else n_jobs

    if n_workers < 1:
        raise ValueError(
            f"The number of processes to use must be greater than 0. Got {n_workers}. "
            "Please check the n_jobs argument provided"
        )

    return n_workers


def fresh_name(base: str, taken) -> str:
    """
    Returns a variable name derived from base that is not in taken. For example,
    fresh_name("y", {"y", "y1"}) returns "y2".
    """
    taken = set(taken)
    if base not in taken:
        return base

    for i in itertools.count(1):
        candidate = f"{base}{i}"
        if candidate not in taken:
            return candidate


def powerset(items):
    """All subsets of items as tuples, ordered by size and then lexicographically."""
    items = list(items)
    return itertools.chain.from_iterable(
        itertools.combinations(items, k) for k in range(len(items) + 1)
    )


class DummyExecutor:
    """
    A dummy executor runs tasks sequentially without parallelization.
    """

    def __init__(self, *args, **kwargs):
        pass

    def map(self, func, iterable):
        return map(func, iterable)

    def submit(self, func, *args, **kwargs):
        from concurrent.futures import Future

        future = Future()
        try:
            future.set_result(func(*args, **kwargs))
        except Exception as e:
            future.set_exception(e)
        return future

    def __enter__(self):
        return self

    def __exit__(self, *args):
        pass

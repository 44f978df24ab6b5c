"""
Helpers for matrices of polynomials, stored as numpy object arrays of
MultiPoly. numpy's own object matmul is avoided: products skip zero entries
and always stay in a given ring.
"""
from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from mfcas.algebra.poly import MultiPoly, WeightedRing
from mfcas.exceptions import RingMismatch


def zeros(ring: WeightedRing, nrows: int, ncols: int) -> np.ndarray:
    out = np.empty((nrows, ncols), dtype=object)
    zero = ring.zero()
    for i in range(nrows):
        for j in range(ncols):
            out[i, j] = zero
    return out


def identity(ring: WeightedRing, n: int) -> np.ndarray:
    out = zeros(ring, n, n)
    for i in range(n):
        out[i, i] = ring.one()
    return out


def as_matrix(rows: Sequence[Sequence], ring: WeightedRing) -> np.ndarray:
    """
    Coerces nested sequences of polynomials, scalars or strings into a
    polynomial matrix over ``ring``.
    """
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    if any(len(r) != ncols for r in rows):
        raise ValueError("rows of a matrix must have equal length")
    out = zeros(ring, len(rows), ncols)
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            out[i, j] = ring(value)
    return out


def map_entries(a: np.ndarray, func: Callable) -> np.ndarray:
    out = np.empty(a.shape, dtype=object)
    for idx, value in np.ndenumerate(a):
        out[idx] = func(value)
    return out


def to_ring(a: np.ndarray, ring: WeightedRing) -> np.ndarray:
    return map_entries(a, lambda p: p.to_ring(ring))


def matmul(a: np.ndarray, b: np.ndarray, ring: WeightedRing = None) -> np.ndarray:
    """Exact product of polynomial matrices, both embedded into ``ring``."""
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape} matrices")
    if ring is None:
        ring = _matrix_ring(a) or _matrix_ring(b)
    if ring is None:
        raise RingMismatch("cannot infer the ring of empty matrices")

    out = zeros(ring, a.shape[0], b.shape[1])
    b_rows = [
        [(k, b[j, k].to_ring(ring)) for k in range(b.shape[1]) if b[j, k]]
        for j in range(b.shape[0])
    ]
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            x = a[i, j]
            if not x:
                continue
            x = x.to_ring(ring)
            for k, y in b_rows[j]:
                out[i, k] = out[i, k] + x * y
    return out


def add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.empty(a.shape, dtype=object)
    for idx, value in np.ndenumerate(a):
        out[idx] = value + b[idx]
    return out


def scale(a: np.ndarray, scalar) -> np.ndarray:
    return map_entries(a, lambda p: p * scalar)


def block(rows: Sequence[Sequence[np.ndarray]]) -> np.ndarray:
    """Assembles a block matrix from object arrays with compatible shapes."""
    heights = [row[0].shape[0] for row in rows]
    widths = [b.shape[1] for b in rows[0]]
    out = np.empty((sum(heights), sum(widths)), dtype=object)
    r = 0
    for row, h in zip(rows, heights):
        c = 0
        for b, w in zip(row, widths):
            if b.shape != (h, w):
                raise ValueError(f"block of shape {b.shape} does not fit ({h}, {w})")
            out[r : r + h, c : c + w] = b  # noqa: E203
            c += w
        r += h
    return out


def is_zero(a: np.ndarray) -> bool:
    return all(not value for value in a.flat)


def equal(a: np.ndarray, b: np.ndarray) -> bool:
    if a.shape != b.shape:
        return False
    return all(x == y for x, y in zip(a.flat, b.flat))


def scalar_identity_check(a: np.ndarray, value: MultiPoly) -> tuple | None:
    """
    Returns None if a == value * id, else the first offending (row, column).
    """
    for (i, j), entry in np.ndenumerate(a):
        expected = value if i == j else 0
        if entry != expected:
            return (i, j)
    return None


def format_matrix(a: np.ndarray) -> list[list[str]]:
    return [[str(a[i, j]) for j in range(a.shape[1])] for i in range(a.shape[0])]


def _matrix_ring(a: np.ndarray):
    for value in a.flat:
        if isinstance(value, MultiPoly):
            return value.ring
    return None

"""
Integer kernels on planar pairings.

A pairing with n bottom and m top points is an int64 array ``partner`` of
length n + m: bottom points are 0, ..., n-1 and top points n, ..., n+m-1,
both read from left to right, and partner[p] is the point joined to p.
"""
import numpy as np
from numpy.typing import NDArray
from numba import njit


@njit(cache=True, nogil=True)
def boundary_position(p: int, n: int, m: int) -> int:
    """
    Position of point p when the boundary of the rectangle is read
    counter-clockwise: the bottom from left to right, then the top from
    right to left.
    """
    if p < n:
        return p
    return n + m - 1 - (p - n)


@njit(cache=True, nogil=True)
def is_planar(partner: NDArray[np.int64], n: int, m: int) -> bool:
    """
    Checks that partner is a fixed-point-free involution without crossing
    pairs.
    """
    size = n + m
    if partner.shape[0] != size or size % 2:
        return False

    at = np.empty(size, dtype=np.int64)
    for p in range(size):
        q = partner[p]
        if q < 0 or q >= size or q == p or partner[q] != p:
            return False
        at[boundary_position(p, n, m)] = p

    stack = np.empty(size, dtype=np.int64)
    top = 0
    for pos in range(size):
        other = boundary_position(partner[at[pos]], n, m)
        if other > pos:
            stack[top] = pos
            top += 1
        else:
            if top == 0 or stack[top - 1] != other:
                return False
            top -= 1
    return top == 0


@njit(cache=True, nogil=True)
def compose_pairings(
    lower: NDArray[np.int64], n: int, m: int, upper: NDArray[np.int64], k: int
):
    """
    Stacks ``upper`` (m -> k) on top of ``lower`` (n -> m).

    Returns:
        The partner array of the n -> k pairing and the number of closed
        loops formed in the middle.
    """
    out = np.empty(n + k, dtype=np.int64)
    seen = np.zeros(m, dtype=np.bool_)

    # outer points: 0..n-1 in lower, n..n+k-1 are the tops of upper
    for start in range(n + k):
        in_lower = start < n
        p = start if in_lower else m + (start - n)
        end = -1
        while True:
            if in_lower:
                q = lower[p]
                if q < n:
                    end = q
                    break
                seen[q - n] = True
                p = q - n
                in_lower = False
            else:
                q = upper[p]
                if q >= m:
                    end = n + (q - m)
                    break
                seen[q] = True
                p = n + q
                in_lower = True
        out[start] = end

    loops = 0
    for s in range(m):
        if seen[s]:
            continue
        loops += 1
        # a closed component alternates between upper and lower inside the middle
        p = s
        while not seen[p]:
            seen[p] = True
            q = upper[p]
            seen[q] = True
            p = lower[n + q] - n
    return out, loops


@njit(cache=True, nogil=True)
def tensor_pairings(
    left: NDArray[np.int64],
    n1: int,
    m1: int,
    right: NDArray[np.int64],
    n2: int,
    m2: int,
) -> NDArray[np.int64]:
    """Places ``right`` (n2 -> m2) to the right of ``left`` (n1 -> m1)."""
    n = n1 + n2
    out = np.empty(n + m1 + m2, dtype=np.int64)
    for p in range(n1 + m1):
        q = left[p]
        src = p if p < n1 else n + (p - n1)
        out[src] = q if q < n1 else n + (q - n1)
    for p in range(n2 + m2):
        q = right[p]
        src = n1 + p if p < n2 else n + m1 + (p - n2)
        out[src] = n1 + q if q < n2 else n + m1 + (q - n2)
    return out


@njit(cache=True, nogil=True)
def closure_loops(partner: NDArray[np.int64], n: int) -> int:
    """
    Number of loops after joining top point n + i to bottom point i on the
    right of an n -> n pairing.
    """
    size = 2 * n
    seen = np.zeros(size, dtype=np.bool_)
    loops = 0
    for start in range(size):
        if seen[start]:
            continue
        loops += 1
        p = start
        while not seen[p]:
            seen[p] = True
            q = partner[p]
            seen[q] = True
            p = q + n if q < n else q - n
    return loops

"""
Reduction of factorizations with internal variables to finite rank.

Over the outer ring, M is a free module with basis y^k e_j for all internal
monomials y^k. Truncating the powers of the internal variables and splitting
off contractible pieces (one unit entry at a time) leaves a finite-rank
factorization homotopy equivalent to M once the truncation is large enough.
"""
from __future__ import annotations

from mfcas import conf
from mfcas.algebra.fields import rational
from mfcas.algebra.poly import exponents_up_to
from mfcas.exceptions import BoundTooSmall, MfcasError, NoProgress
from mfcas.log import get_logger
from mfcas.mfcore import MatrixFactorization
from mfcas.mfcore import matrix as mx
from mfcas.mfcore.factorization import mf_make

logger = get_logger(__name__)


class _SparseDifferential:
    """The odd differential on the truncated module as a sparse matrix."""

    def __init__(self):
        self.rows = {}
        self.cols = {}

    def add(self, r, s, p):
        row = self.rows.setdefault(r, {})
        value = row.get(s)
        value = p if value is None else value + p
        if value:
            row[s] = value
            self.cols.setdefault(s, {})[r] = value
        else:
            row.pop(s, None)
            self.cols.get(s, {}).pop(r, None)

    def get(self, r, s):
        return self.rows.get(r, {}).get(s)

    def units(self):
        for r, row in self.rows.items():
            for s, p in row.items():
                if p.is_constant():
                    yield r, s

    def eliminate(self, a, b):
        """Splits off the contractible piece spanned by b and D(b); D[a, b] is a unit."""
        c_inv = 1 / self.rows[a][b].constant_term()
        column = [(r, p) for r, p in self.cols.get(b, {}).items() if r != a]
        row = [(s, p) for s, p in self.rows.get(a, {}).items() if s != b]
        for r, p in column:
            for s, q in row:
                self.add(r, s, -(p * q) * c_inv)
        for index in (a, b):
            for s in list(self.rows.pop(index, {})):
                self.cols.get(s, {}).pop(index, None)
            for r in list(self.cols.pop(index, {})):
                self.rows.get(r, {}).pop(index, None)


def _internal_degree(M: MatrixFactorization) -> int:
    internal = list(M.internal)
    top = 0
    for p in list(M.d1.flat) + list(M.d0.flat):
        for k in p.coefficient_in(internal):
            top = max(top, sum(k))
    return top


def _truncate(M: MatrixFactorization, top: int, outer_ring):
    internal = list(M.internal)
    elements = []
    for e in exponents_up_to(len(internal), top):
        for j in range(M.rank):
            elements.append((tuple(e), j))
    index = {el: n for n, el in enumerate(elements)}

    D = _SparseDifferential()
    full = M.differential()
    split = {}
    for (i, j), p in _nonzero(full):
        split[(i, j)] = {
            k: part.to_ring(outer_ring) for k, part in p.coefficient_in(internal).items()
        }
    for (k, j), s in index.items():
        for (i, jj), parts in split.items():
            if jj != j:
                continue
            for shift, p in parts.items():
                target = tuple(a + b for a, b in zip(k, shift))
                if sum(target) <= top:
                    D.add(index[(target, i)], s, p)
    return elements, D


def _nonzero(matrix):
    for i in range(matrix.shape[0]):
        for j in range(matrix.shape[1]):
            if matrix[i, j]:
                yield (i, j), matrix[i, j]


def _reduce_at(M: MatrixFactorization, bound: int, spread: int):
    """
    One truncated reduction.

    Returns:
        (factorization or None, number of eliminations, number of survivors).
    """
    outer_ring = M.ring.sub_ring(M.outer)
    elements, D = _truncate(M, bound + spread, outer_ring)

    names = list(M.internal)

    def degree(n):
        return sum(elements[n][0])

    def weight(n):
        k, j = elements[n]
        return M.degrees[j] + sum(
            (M.ring.weight(v) * e for v, e in zip(names, k)), rational(0)
        )

    lowest = min(M.ring.weight(v) for v in names)
    if M.grading is not None and lowest > 0:
        # images of elements above this C-degree may have lost terms
        cutoff = (bound + 1) * lowest + min(M.degrees) - 1
        level = weight
    else:
        cutoff = bound
        level = degree

    alive = set(range(len(elements)))
    eliminated = 0
    while True:
        candidates = list(D.units())
        if not candidates:
            break
        a, b = min(
            candidates,
            key=lambda rs: (max(level(rs[0]), level(rs[1])), level(rs[1]), rs),
        )
        D.eliminate(a, b)
        alive -= {a, b}
        eliminated += 1

    parities = M.parities
    keep = sorted(
        (n for n in alive if level(n) < cutoff),
        key=lambda n: (level(n), elements[n][1], n),
    )
    even = [n for n in keep if parities[elements[n][1]] == 0]
    odd = [n for n in keep if parities[elements[n][1]] == 1]

    d1 = mx.zeros(outer_ring, len(even), len(odd))
    d0 = mx.zeros(outer_ring, len(odd), len(even))
    for r, a in enumerate(even):
        for c, b in enumerate(odd):
            p = D.get(a, b)
            if p is not None:
                d1[r, c] = p
    for r, a in enumerate(odd):
        for c, b in enumerate(even):
            p = D.get(a, b)
            if p is not None:
                d0[r, c] = p

    grading = None
    if M.grading is not None:
        grading = ([weight(n) for n in even], [weight(n) for n in odd])

    labels = [elements[n] for n in even + odd]
    try:
        result = mf_make(
            d1,
            d0,
            M.W.to_ring(outer_ring),
            M.V.to_ring(outer_ring),
            grading=grading,
            ring=outer_ring,
            left=M.left,
            right=M.right,
            internal=(),
            labels=labels,
            name=f"red({M.name})",
        )
    except MfcasError as e:
        logger.debug(f"bound {bound}: truncation is not a factorization yet ({e})")
        return None, eliminated, len(keep)
    return result, eliminated, len(keep)


def finite_rank_reduce(M: MatrixFactorization, bound: int = None) -> MatrixFactorization:
    """
    A finite-rank factorization over the outer variables homotopy equivalent
    to M.

    The internal monomials are truncated at bound + s, s the largest internal
    degree of an entry of M, unit entries are eliminated in order of
    increasing degree, and the survivors below the truncation edge are kept
    (C-degree for graded input, internal degree below ``bound`` otherwise).
    Without an explicit bound, bounds s + 1, s + 2, ... up to
    conf.REDUCTION["MAX_BOUND"] are tried until the result is a factorization
    whose rank no longer changes.

    Raises:
        BoundTooSmall: when no tried bound yields a stable factorization.
        NoProgress: when no unit entry exists although the rank keeps growing.
    """
    if not M.internal:
        return M
    spread = _internal_degree(M)

    if bound is not None:
        result, _, _ = _reduce_at(M, bound, spread)
        if result is None:
            raise BoundTooSmall(f"bound {bound} is too small to reduce {M.name}")
        return result

    previous = None
    previous_size = None
    for b in range(spread + 1, conf.REDUCTION["MAX_BOUND"] + 1):
        result, eliminated, size = _reduce_at(M, b, spread)
        logger.debug(
            f"{M.name}: bound {b}, {eliminated} eliminations, {size} survivors"
        )
        if result is not None:
            shape = (result.n0, result.n1)
            if shape == previous:
                logger.info(f"{M.name} reduces to rank {shape} at bound {b}")
                return result
            previous = shape
        else:
            previous = None
        if eliminated == 0 and previous_size is not None and size > previous_size:
            raise NoProgress(f"no unit entries in the truncations of {M.name}")
        previous_size = size

    raise BoundTooSmall(
        f"{M.name} did not stabilize up to bound {conf.REDUCTION['MAX_BOUND']}"
    )

"""
Exact sparse linear algebra over any field whose elements support the usual
arithmetic operators (sympy QQ elements, FieldElement, sympy field elements).

Vectors are dictionaries {column index: nonzero value}; matrices are lists of
such rows or dense lists of lists.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from sympy.polys.domains import QQ


def sparse_rows(matrix) -> list[dict]:
    """Converts a dense list-of-lists matrix into sparse rows."""
    rows = []
    for row in matrix:
        if isinstance(row, dict):
            rows.append({j: v for j, v in row.items() if v})
        else:
            rows.append({j: v for j, v in enumerate(row) if v})
    return rows


def axpy(y: dict, a, x: dict) -> dict:
    """Returns y + a*x as a new sparse vector."""
    out = dict(y)
    for j, v in x.items():
        w = out.get(j)
        w = a * v if w is None else w + a * v
        if w:
            out[j] = w
        else:
            out.pop(j, None)
    return out


class EchelonBasis:
    """
    Incrementally maintained row-echelon basis of a subspace.

    Every stored row has leading (smallest) column equal to its pivot and a
    leading coefficient of one.
    """

    def __init__(self):
        self.rows = {}
        self._sorted = []

    def __len__(self):
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return list(self._sorted)

    def reduce(self, vector: dict) -> dict:
        """Returns the remainder of vector modulo the stored subspace."""
        v = {j: x for j, x in vector.items() if x}
        for p in self._sorted:
            c = v.get(p)
            if c:
                v = axpy(v, -c, self.rows[p])
        return v

    def contains(self, vector: dict) -> bool:
        return not self.reduce(vector)

    def add(self, vector: dict) -> bool:
        """Adds vector to the span. Returns False when it was already in it."""
        v = self.reduce(vector)
        if not v:
            return False

        pivot = min(v)
        inv = 1 / v[pivot]
        self.rows[pivot] = {j: x * inv for j, x in v.items()}
        self._insert_pivot(pivot)
        return True

    def _insert_pivot(self, pivot: int):
        lo, hi = 0, len(self._sorted)
        while lo < hi:
            mid = (lo + hi) // 2
            if self._sorted[mid] < pivot:
                lo = mid + 1
            else:
                hi = mid
        self._sorted.insert(lo, pivot)

    def extend(self, vectors: Iterable[dict]) -> int:
        return sum(1 for v in vectors if self.add(v))

    def reduced(self) -> dict:
        """Returns the rows in reduced row-echelon form, keyed by pivot."""
        rows = {p: dict(r) for p, r in self.rows.items()}
        for p in reversed(self._sorted):
            row_p = rows[p]
            for q in self._sorted:
                if q >= p:
                    break
                c = rows[q].get(p)
                if c:
                    rows[q] = axpy(rows[q], -c, row_p)
        return rows


def rref(matrix) -> dict:
    """Reduced row-echelon form as {pivot column: row}."""
    basis = EchelonBasis()
    basis.extend(sparse_rows(matrix))
    return basis.reduced()


def rank(matrix) -> int:
    basis = EchelonBasis()
    return basis.extend(sparse_rows(matrix))


def nullspace(matrix, ncols: int) -> list[dict]:
    """
    Basis of {v : matrix v = 0}, one sparse vector per free column, in
    increasing order of the free column.
    """
    reduced = rref(matrix)
    basis = []
    for f in range(ncols):
        if f in reduced:
            continue
        v = {f: QQ.one}
        for p, row in reduced.items():
            c = row.get(f)
            if c:
                v[p] = -c
        basis.append(v)
    return basis


def solve_sparse(rows: Sequence[dict], rhs: Sequence, ncols: int) -> dict | None:
    """
    Finds one solution of rows * v = rhs, free variables set to zero.

    Returns:
        A sparse solution vector, or None when the system is inconsistent.
    """
    augmented = []
    for row, b in zip(rows, rhs):
        r = {j: v for j, v in row.items() if v}
        if b:
            r[ncols] = b
        augmented.append(r)

    reduced = rref(augmented)
    if ncols in reduced:
        return None
    return {p: row[ncols] for p, row in reduced.items() if row.get(ncols)}


def solve(matrix, rhs: Sequence, zero=QQ.zero) -> list | None:
    """Dense front-end of solve_sparse; returns a list or None."""
    rows = sparse_rows(matrix)
    ncols = max((len(r) for r in matrix if not isinstance(r, dict)), default=0)
    solution = solve_sparse(rows, rhs, ncols)
    if solution is None:
        return None
    return [solution.get(j, zero) for j in range(ncols)]


def mat_vec(rows: Sequence[dict], vector: dict) -> dict:
    out = {}
    for i, row in enumerate(rows):
        acc = None
        for j, a in row.items():
            x = vector.get(j)
            if x:
                acc = a * x if acc is None else acc + a * x
        if acc:
            out[i] = acc
    return out

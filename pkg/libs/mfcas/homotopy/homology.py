"""
Homology of matrix factorizations at the origin.

Setting the variables of a factorization to zero turns (M0, M1, d0, d1) into a
Z2-graded complex; a closed even morphism is an isomorphism in the homotopy
category iff it induces an isomorphism on this homology. With one internal
variable left free the complex is one of modules over K[y], whose homology is
read off Smith normal forms.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from mfcas.algebra import MultiPoly
from mfcas.algebra.linalg import EchelonBasis, nullspace, rank
from mfcas.algebra.pid import UniPoly, invariant_factors
from mfcas.exceptions import NotClosed, UnsupportedShape
from mfcas.mfcore import MatrixFactorization, MFMorphism, cone, is_closed, materialize


@dataclass(frozen=True)
class HomologyReport:
    h0: int
    h1: int

    @property
    def total(self) -> int:
        return self.h0 + self.h1

    def to_dict(self) -> dict:
        return {"h0": self.h0, "h1": self.h1}


@dataclass
class PIDModulePresentation:
    """A finitely generated K[y]-module: K[y]^free_rank + sum_i K[y]/(torsion_i)."""

    free_rank: int
    torsion: list = dc_field(default_factory=list)
    variable: str = "y"

    @property
    def dimension(self):
        """Dimension over K, or None when the module is not torsion."""
        if self.free_rank:
            return None
        return sum(t.degree for t in self.torsion)

    def to_dict(self) -> dict:
        return {
            "free_rank": self.free_rank,
            "torsion": [t.to_string(self.variable) for t in self.torsion],
        }


def _constant_rows(matrix: np.ndarray) -> list[dict]:
    rows = []
    for row in matrix:
        rows.append({j: e.constant_term() for j, e in enumerate(row) if e})
    return rows


def bar_homology(M: MatrixFactorization) -> HomologyReport:
    """
    Dimensions of the homology of M with all variables set to zero:
    H0 = ker d0 / im d1 and H1 = ker d1 / im d0.
    """
    r1 = rank(_constant_rows(M.d1)) if M.n0 and M.n1 else 0
    r0 = rank(_constant_rows(M.d0)) if M.n0 and M.n1 else 0
    return HomologyReport(M.n0 - r0 - r1, M.n1 - r1 - r0)


def _univariate_matrix(matrix: np.ndarray, name: str) -> list[list[UniPoly]]:
    return [[UniPoly.from_multipoly(e, name) for e in row] for row in matrix]


def internal_homology(M: MatrixFactorization):
    """
    Homology over K[y] of M with its outer variables set to zero, where y is
    the only internal variable.

    Returns:
        (H0, H1) as PIDModulePresentation objects.

    Raises:
        UnsupportedShape: when M does not have exactly one internal variable.
    """
    if len(M.internal) != 1:
        raise UnsupportedShape(
            f"internal homology needs exactly one internal variable, "
            f"{M.name} has {list(M.internal)}"
        )
    (y,) = M.internal
    d1, d0 = M.evaluate_zero()
    r1, t1 = invariant_factors(_univariate_matrix(d1, y))
    r0, t0 = invariant_factors(_univariate_matrix(d0, y))
    return (
        PIDModulePresentation(M.n0 - r0 - r1, t1, y),
        PIDModulePresentation(M.n1 - r1 - r0, t0, y),
    )


#
# isomorphism test
#
class _KeyIndex(dict):
    """Assigns consecutive integers to hashable keys."""

    def __missing__(self, key):
        value = len(self)
        self[key] = value
        return value


def _expand(p: MultiPoly, y: str, i: int, keys: _KeyIndex, out: dict, scale=None):
    for (k,), part in p.coefficient_in([y]).items():
        c = part.constant_term()
        if scale is not None:
            c = c * scale
        if not c:
            continue
        idx = keys[(i, k)]
        v = out.get(idx)
        v = c if v is None else v + c
        if v:
            out[idx] = v
        else:
            out.pop(idx, None)


def _slice(M: MatrixFactorization, y: str, degree) -> list[tuple]:
    """The basis (j, m) of y^m e_j of C-degree ``degree``."""
    w = M.ring.weight(y)
    out = []
    for j, dj in enumerate(M.degrees):
        m = (degree - dj) / w
        if m >= 0 and m.denominator == 1:
            out.append((j, int(m.numerator)))
    return out


def _is_iso_into_internal(f: MFMorphism) -> bool:
    S, T = f.source, f.target
    if S.grading is None or T.grading is None:
        raise UnsupportedShape(
            "is_iso_H into an object with internal variables needs gradings"
        )
    (y,) = T.internal

    H0, H1 = internal_homology(T)
    if H0.free_rank or H1.free_rank:
        return False
    bar = bar_homology(S)
    if (bar.h0, bar.h1) != (H0.dimension, H1.dimension):
        return False

    outer = [n for n in f.ring.names if n != y]
    DT = T.differential()
    DT = [[e.evaluate_zero(T.outer) for e in row] for row in DT]
    DS = _constant_rows(S.differential())
    fm = [[e.evaluate_zero(outer) for e in row] for row in f.matrix]

    src_degrees = S.degrees
    for delta in sorted(set(src_degrees)):
        cols = [j for j, dj in enumerate(src_degrees) if dj == delta]
        below = [j for j, dj in enumerate(src_degrees) if dj == delta - 1]
        restricted = [{k: row[j] for k, j in enumerate(cols) if j in row} for row in DS]
        cycles = nullspace(restricted, len(cols))
        boundaries = rank(
            [{k: row[j] for k, j in enumerate(below) if j in row} for row in DS]
        )
        homology = len(cycles) - boundaries
        if not homology:
            continue

        keys = _KeyIndex()
        basis = EchelonBasis()
        for j, m in _slice(T, y, delta - 1):
            image = {}
            for i in range(T.rank):
                if DT[i][j]:
                    shifted = DT[i][j] * T.ring.monomial(_power(T.ring, y, m))
                    _expand(shifted, y, i, keys, image)
            basis.add(image)

        added = 0
        for z in cycles:
            image = {}
            for k, c in z.items():
                j = cols[k]
                for i in range(T.rank):
                    if fm[i][j]:
                        _expand(fm[i][j], y, i, keys, image, scale=c)
            if basis.add(image):
                added += 1
        if added != homology:
            return False
    return True


def _power(ring, name: str, m: int) -> list[int]:
    exponent = [0] * ring.nvars
    exponent[ring.index(name)] = m
    return exponent


def is_iso_H(f: MFMorphism) -> bool:
    """
    True iff the closed even morphism f induces an isomorphism on homology at
    the origin, i.e. iff f is an isomorphism in the homotopy category.

    Sources must have finite rank. Targets may carry one internal variable
    when both sides are graded; the complex at the origin then splits into
    finite-dimensional C-degree slices.

    Raises:
        NotClosed: when delta(f) does not vanish.
    """
    if f.degree != 0:
        raise ValueError("is_iso_H needs an even morphism")
    if f.source.internal:
        raise UnsupportedShape("is_iso_H needs a source of finite rank")
    if not is_closed(f):
        raise NotClosed(f"{f.name} is not closed")
    f = materialize(f)

    if not f.target.internal:
        return bar_homology(cone(f)).total == 0
    if len(f.target.internal) == 1:
        return _is_iso_into_internal(f)
    raise UnsupportedShape(
        f"is_iso_H supports at most one internal variable, got {list(f.target.internal)}"
    )


"""
Morphism spaces up to homotopy.

For graded factorizations the entries of a morphism of fixed C-degree are
homogeneous polynomials of forced weighted degrees, so closed morphisms and
exact morphisms are finite-dimensional linear systems over the coefficient
field. Everything here is plain exact linear algebra on those systems.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from mfcas.algebra.fields import format_rational, rational
from mfcas.algebra.linalg import EchelonBasis, nullspace, solve_sparse
from mfcas.algebra.poly import exponents_up_to
from mfcas.exceptions import InterfaceMismatch, NotHomogeneous
from mfcas.mfcore import MatrixFactorization, MFMorphism, c_degree, materialize
from mfcas.mfcore import matrix as mx
from mfcas.mfcore.factorization import entry_degree
from mfcas.mfcore.operators import common_ring


@dataclass
class MorphismBasis:
    """
    Representatives of a basis of H^parity(M, N) at one C-charge. Every
    representative is closed, and they are independent modulo exact morphisms.
    """

    charge: object
    parity: int
    representatives: list = dc_field(default_factory=list)
    closed_dimension: int = 0

    @property
    def dimension(self) -> int:
        return len(self.representatives)

    @property
    def charges(self) -> list:
        return [self.charge] * self.dimension

    def to_dict(self) -> dict:
        return {
            "charge": format_rational(rational(self.charge)),
            "parity": self.parity,
            "closed_dimension": self.closed_dimension,
            "dimension": self.dimension,
        }


class _KeyIndex(dict):
    def __missing__(self, key):
        value = len(self)
        self[key] = value
        return value


def _allowed(M, N, parity):
    for i, pi in enumerate(N.parities):
        for j, pj in enumerate(M.parities):
            if (pi + pj) % 2 == parity:
                yield i, j


def _graded_unknowns(M, N, ring, w, parity) -> list[tuple]:
    unknowns = []
    for i, j in _allowed(M, N, parity):
        degree = entry_degree(w, M.degrees[j], N.degrees[i])
        for e in ring.monomials_of_degree(degree):
            unknowns.append((i, j, e))
    return unknowns


def _bounded_unknowns(M, N, ring, bound, parity) -> list[tuple]:
    unknowns = []
    for i, j in _allowed(M, N, parity):
        for e in exponents_up_to(ring.nvars, bound):
            unknowns.append((i, j, tuple(e)))
    return unknowns


def _delta_columns(M, N, ring, unknowns, parity) -> list[dict]:
    """
    delta(E_u) = D_N E_u - (-1)^parity E_u D_M for every elementary morphism
    E_u = monomial at (i, j), as {(row, col, exponent): coefficient}.
    """
    DN = mx.to_ring(N.differential(), ring)
    DM = mx.to_ring(M.differential(), ring)
    sign = -1 if parity == 0 else 1
    columns = []
    for i, j, e in unknowns:
        mono = ring.monomial(e)
        col = {}
        for a in range(N.rank):
            if DN[a, i]:
                _accumulate(col, a, j, DN[a, i] * mono, 1)
        for b in range(M.rank):
            if DM[j, b]:
                _accumulate(col, i, b, mono * DM[j, b], sign)
        columns.append(col)
    return columns


def _accumulate(vector: dict, row: int, col: int, p, sign):
    for e, c in p.terms.items():
        key = (row, col, e)
        v = vector.get(key)
        v = sign * c if v is None else v + sign * c
        if v:
            vector[key] = v
        else:
            vector.pop(key, None)


def _transpose(columns: list[dict]) -> tuple[list[dict], _KeyIndex]:
    keys = _KeyIndex()
    rows = {}
    for u, col in enumerate(columns):
        for key, c in col.items():
            rows.setdefault(keys[key], {})[u] = c
    return [rows.get(k, {}) for k in range(len(keys))], keys


def _to_morphism(M, N, ring, unknowns, vector: dict, parity, name) -> MFMorphism:
    out = mx.zeros(ring, N.rank, M.rank)
    for u, c in vector.items():
        i, j, e = unknowns[u]
        out[i, j] = out[i, j] + ring.monomial(e, c)
    return MFMorphism(M, N, out, parity, name)


def hom_graded(
    M: MatrixFactorization, N: MatrixFactorization, w, parity: int = 0
) -> MorphismBasis:
    """
    Basis of the morphisms M -> N of Z2-degree ``parity`` and C-degree ``w``
    up to homotopy.

    Closed morphisms solve delta(f) = 0 on the finite space of homogeneous
    entries; the exact ones are delta(g) for g of the opposite Z2-degree and
    C-degree w - 1.
    """
    if M.grading is None or N.grading is None:
        raise ValueError("hom_graded needs graded factorizations")
    if M.potential.to_ring(common_ring(M.ring, N.ring)) != N.potential.to_ring(
        common_ring(M.ring, N.ring)
    ):
        raise InterfaceMismatch(
            f"{M.name} and {N.name} factorize different potentials"
        )

    w = rational(w)
    parity %= 2
    ring = common_ring(M.ring, N.ring)
    unknowns = _graded_unknowns(M, N, ring, w, parity)
    basis = MorphismBasis(w, parity)
    if not unknowns:
        return basis

    rows, _ = _transpose(_delta_columns(M, N, ring, unknowns, parity))
    closed = nullspace(rows, len(unknowns))
    basis.closed_dimension = len(closed)
    if not closed:
        return basis

    position = {u: k for k, u in enumerate(unknowns)}
    exact = EchelonBasis()
    g_unknowns = _graded_unknowns(M, N, ring, w - 1, 1 - parity)
    for col in _delta_columns(M, N, ring, g_unknowns, 1 - parity):
        exact.add({position[key]: c for key, c in col.items()})

    for k, z in enumerate(closed):
        if exact.add(z):
            basis.representatives.append(
                _to_morphism(M, N, ring, unknowns, z, parity, f"h{k}")
            )
    return basis


def _weight_step(ring):
    weights = [w for _, w in ring.variables if w]
    num = 0
    den = 1
    for w in weights:
        num = math.gcd(num, int(w.numerator))
        den = math.lcm(den, int(w.denominator))
    return rational(num) / den if num else None


def central_charge(ring) -> object:
    """c-hat = sum over all variables of (1 - weight)."""
    return sum((1 - w for _, w in ring.variables), rational(0))


def hom_spectrum(M: MatrixFactorization, N: MatrixFactorization, parity: int = 0):
    """
    The C-charges carrying morphisms M -> N up to homotopy.

    Candidate charges are t_i - s_j + k * step inside the window
    [w_min(M, N), c_hat - w_min(N, M)], where step is the lattice spanned by
    the variable weights.

    Returns:
        Sorted list of (charge, dimension) with dimension > 0.
    """
    ring = common_ring(M.ring, N.ring)
    step = _weight_step(ring)
    pairs = list(_allowed(M, N, parity % 2))
    if not pairs:
        return []
    offsets = {N.degrees[i] - M.degrees[j] for i, j in pairs}
    reverse = {s - t for s in M.degrees for t in N.degrees}
    low = min(offsets)
    high = central_charge(ring) - min(reverse)

    candidates = set()
    for offset in offsets:
        w = offset
        while w <= high:
            if w >= low:
                candidates.add(w)
            if step is None:
                break
            w += step

    spectrum = []
    for w in sorted(candidates):
        dim = hom_graded(M, N, w, parity).dimension
        if dim:
            spectrum.append((w, dim))
    return spectrum


def homotopic(f: MFMorphism, g: MFMorphism, bound: int = None) -> bool:
    """
    Decides whether f - g = delta(h) for some h.

    For graded source and target with f - g homogeneous the entries of h have
    forced degrees. Otherwise h ranges over polynomial entries of total degree
    at most ``bound`` (default: the largest total degree of f - g), so a
    negative answer only holds up to that bound.
    """
    if f.degree != g.degree:
        raise ValueError("homotopic needs morphisms of the same Z2-degree")
    f, g = materialize(f), materialize(g)
    M, N = f.source, f.target
    ring = common_ring(f.ring, g.ring)
    diff = mx.add(
        mx.to_ring(f.matrix, ring), mx.scale(mx.to_ring(g.matrix, ring), -1)
    )
    if mx.is_zero(diff):
        return True
    difference = MFMorphism(M, N, diff, f.degree, "f-g")
    parity = 1 - f.degree

    unknowns = None
    if M.grading is not None and N.grading is not None:
        try:
            w = c_degree(difference)
            unknowns = _graded_unknowns(M, N, ring, w - 1, parity)
        except NotHomogeneous:
            unknowns = None
    if unknowns is None:
        if bound is None:
            bound = max(e.total_degree() for e in diff.flat if e)
        unknowns = _bounded_unknowns(M, N, ring, bound, parity)

    system, keys = _transpose(_delta_columns(M, N, ring, unknowns, parity))
    rhs = {}
    for (i, j), entry in np.ndenumerate(diff):
        for e, c in entry.terms.items():
            rhs[keys[(i, j, e)]] = c
    system += [{}] * (len(keys) - len(system))
    values = [rhs.get(k, 0) for k in range(len(keys))]
    return solve_sparse(system, values, len(unknowns)) is not None

"""
Morphisms of matrix factorizations: composition, tensor products, the
differential of the morphism complex, closedness, degrees, cones and the
structure morphisms of the unit.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from mfcas.algebra import MultiPoly, rational, root_of_unity
from mfcas.exceptions import (
    InterfaceMismatch,
    NotHomogeneous,
    UnsupportedShape,
    ZeroPolynomial,
)
from mfcas.mfcore import matrix as mx
from mfcas.mfcore.factorization import (
    GradingAssignment,
    MatrixFactorization,
    mf_tensor,
    permutation_mf,
    twist,
    unit_mf,
    _root_of_order,
)
from mfcas.mfcore.operators import (
    Operator,
    ScaleAll,
    Subst,
    add_entries,
    apply_entry,
    common_ring,
    compose_entries,
    is_zero_entry,
    scale_entry,
)
from mfcas.algebra.poly import exponents_up_to
from mfcas.utils import fresh_name


class MFMorphism:
    """
    A morphism of Z2-degree ``degree`` from source to target, given by a
    matrix (target.rank x source.rank) in the bases (M0 | M1). Entries are
    polynomials or Operators.

    For degree 0 the matrix is block diagonal (f0: M0 -> N0, f1: M1 -> N1);
    for degree 1 it is block antidiagonal.
    """

    def __init__(
        self,
        source: MatrixFactorization,
        target: MatrixFactorization,
        matrix: np.ndarray,
        degree: int = 0,
        name: str = "f",
    ):
        if matrix.shape != (target.rank, source.rank):
            raise ValueError(
                f"morphism matrix has shape {matrix.shape}, expected "
                f"{(target.rank, source.rank)}"
            )
        self.source = source
        self.target = target
        self.degree = degree % 2
        self.name = name
        self.ring = common_ring(source.ring, target.ring)
        self.matrix = mx.map_entries(
            matrix, lambda e: e.to_ring(self.ring) if isinstance(e, MultiPoly) else e
        )

        for (i, j), entry in np.ndenumerate(self.matrix):
            if is_zero_entry(entry):
                continue
            if (self.target.parities[i] + self.source.parities[j]) % 2 != self.degree:
                raise ValueError(
                    f"entry ({i}, {j}) of {name} breaks Z2-degree {self.degree}"
                )

    # --- structure ---

    @property
    def is_polynomial(self) -> bool:
        return all(isinstance(e, MultiPoly) for e in self.matrix.flat)

    @property
    def f0(self) -> np.ndarray:
        """The block on M0: to N0 in degree 0, to N1 in degree 1."""
        N, M = self.target, self.source
        if self.degree == 0:
            return self.matrix[: N.n0, : M.n0]
        return self.matrix[N.n0 :, : M.n0]  # noqa: E203

    @property
    def f1(self) -> np.ndarray:
        """The block on M1: to N1 in degree 0, to N0 in degree 1."""
        N, M = self.target, self.source
        if self.degree == 0:
            return self.matrix[N.n0 :, M.n0 :]  # noqa: E203
        return self.matrix[: N.n0, M.n0 :]  # noqa: E203

    def apply(self, vector: Sequence[MultiPoly]) -> list:
        """Applies the morphism to a vector of source components."""
        out = []
        for i in range(self.target.rank):
            acc = self.target.ring.zero()
            for j, v in enumerate(vector):
                entry = self.matrix[i, j]
                if is_zero_entry(entry) or not v:
                    continue
                value = apply_entry(entry, v)
                ring = common_ring(acc.ring, value.ring)
                acc = acc.to_ring(ring) + value.to_ring(ring)
            out.append(acc.to_ring(self.target.ring))
        return out

    def scale(self, c) -> "MFMorphism":
        return MFMorphism(
            self.source,
            self.target,
            mx.map_entries(self.matrix, lambda e: scale_entry(e, c)),
            self.degree,
            self.name,
        )

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other: "MFMorphism") -> "MFMorphism":
        if other.degree != self.degree:
            raise ValueError("cannot add morphisms of different Z2-degree")
        out = np.empty(self.matrix.shape, dtype=object)
        for idx, e in np.ndenumerate(self.matrix):
            out[idx] = add_entries(e, other.matrix[idx], self.ring)
        return MFMorphism(self.source, self.target, out, self.degree, self.name)

    def __sub__(self, other):
        return self + (-other)

    def __str__(self):
        rows = []
        for i in range(self.matrix.shape[0]):
            rows.append(
                [
                    str(e) if isinstance(e, MultiPoly) else repr(e)
                    for e in self.matrix[i]
                ]
            )
        return f"{self.name}: {self.source.name} -> {self.target.name}, {rows}"


def identity(M: MatrixFactorization) -> MFMorphism:
    return MFMorphism(M, M, mx.identity(M.ring, M.rank), 0, f"id_{M.name}")


def zero_morphism(M: MatrixFactorization, N: MatrixFactorization, degree: int = 0):
    ring = common_ring(M.ring, N.ring)
    return MFMorphism(M, N, mx.zeros(ring, N.rank, M.rank), degree, "0")


def from_blocks(M, N, f0, f1, degree: int = 0, name: str = "f") -> MFMorphism:
    """Builds a morphism from its two blocks (see MFMorphism.f0/f1)."""
    ring = common_ring(M.ring, N.ring)
    f0 = f0 if isinstance(f0, np.ndarray) else mx.as_matrix(f0, ring)
    f1 = f1 if isinstance(f1, np.ndarray) else mx.as_matrix(f1, ring)
    z = mx.zeros
    if degree % 2 == 0:
        matrix = mx.block(
            [[f0, z(ring, N.n0, M.n1)], [z(ring, N.n1, M.n0), f1]]
        )
    else:
        matrix = mx.block(
            [[z(ring, N.n0, M.n0), f1], [f0, z(ring, N.n1, M.n1)]]
        )
    return MFMorphism(M, N, matrix, degree, name)


def compose(f: MFMorphism, g: MFMorphism) -> MFMorphism:
    """f after g."""
    if g.target.rank != f.source.rank:
        raise InterfaceMismatch(
            f"cannot compose {f.name} after {g.name}: ranks {f.source.rank} and "
            f"{g.target.rank}"
        )
    ring = common_ring(f.ring, g.ring)
    out = mx.zeros(ring, f.target.rank, g.source.rank)
    for i in range(f.target.rank):
        for k in range(g.source.rank):
            acc = ring.zero()
            for j in range(f.source.rank):
                term = compose_entries(f.matrix[i, j], g.matrix[j, k], ring)
                acc = add_entries(acc, term, ring)
            out[i, k] = acc
    return MFMorphism(
        g.source, f.target, out, f.degree + g.degree, f"{f.name}.{g.name}"
    )


def compose_all(*morphisms: MFMorphism) -> MFMorphism:
    """compose_all(f, g, h) = f after g after h."""
    result = morphisms[-1]
    for f in reversed(morphisms[:-1]):
        result = compose(f, result)
    return result


def full_differential_morphism(M: MatrixFactorization) -> MFMorphism:
    return MFMorphism(M, M, M.differential(), 1, f"d_{M.name}")


def delta(f: MFMorphism) -> MFMorphism:
    """delta(f) = d_N f - (-1)^|f| f d_M."""
    dN = full_differential_morphism(f.target)
    dM = full_differential_morphism(f.source)
    left = compose(dN, f)
    right = compose(f, dM)
    if f.degree == 0:
        return left - right
    return left + right


def probe_vectors(M: MatrixFactorization, bound: int):
    """
    Yields (basis index, vector) with one nonzero component, a monomial in the
    internal variables of total degree at most ``bound``.
    """
    idx = [M.ring.index(n) for n in M.internal]
    for j in range(M.rank):
        for e in exponents_up_to(len(idx), bound if idx else 0):
            exponent = [0] * M.ring.nvars
            for i, k in zip(idx, e):
                exponent[i] = k
            vector = [M.ring.zero()] * M.rank
            vector[j] = M.ring.monomial(exponent)
            yield j, vector


def is_closed(f: MFMorphism, bound: int = 4) -> bool:
    """
    Checks delta(f) = 0: exactly for polynomial morphisms, and on
    probe_vectors(source, bound) for operator morphisms.
    """
    d = delta(f)
    if d.is_polynomial:
        return mx.is_zero(d.matrix)
    for _, v in probe_vectors(f.source, bound):
        if any(d.apply(v)):
            return False
    return True


def materialize(f: MFMorphism, name: str = None) -> MFMorphism:
    """
    Replaces operator entries by polynomials, by applying f to the basis
    vectors. The source must have finite rank (no internal variables).
    """
    if f.is_polynomial:
        return f
    if f.source.internal:
        raise UnsupportedShape(
            f"cannot materialize {f.name}: the source has internal variables"
        )
    ring = f.target.ring
    out = mx.zeros(ring, f.target.rank, f.source.rank)
    for j in range(f.source.rank):
        v = [f.source.ring.zero()] * f.source.rank
        v[j] = f.source.ring.one()
        for i, value in enumerate(f.apply(v)):
            out[i, j] = value
    return MFMorphism(f.source, f.target, out, f.degree, name or f.name)


def c_degree(f: MFMorphism, bound: int = 3):
    """
    The C-degree w of a morphism between graded factorizations: every entry
    from j to i is homogeneous of degree w + deg(j) - deg(i).

    Returns:
        w, or None for the zero morphism.

    Raises:
        NotHomogeneous: when the entries do not share one C-degree.
    """
    M, N = f.source, f.target
    if M.grading is None or N.grading is None:
        raise ValueError("c_degree needs graded source and target")
    src, tgt = M.degrees, N.degrees
    found = set()

    def record(degree, j, i):
        w = degree - src[j] + tgt[i]
        found.add(w)
        if len(found) > 1:
            raise NotHomogeneous(
                f"{f.name} mixes C-degrees {sorted(str(v) for v in found)}"
            )

    if f.is_polynomial:
        for (i, j), entry in np.ndenumerate(f.matrix):
            if entry:
                record(entry.weighted_degree(), j, i)
    else:
        for j, v in probe_vectors(M, bound):
            base = v[j].weighted_degree() if v[j].ring.nvars else rational(0)
            for i, value in enumerate(f.apply(v)):
                if not value:
                    continue
                try:
                    record(value.weighted_degree() - base, j, i)
                except ZeroPolynomial:
                    continue
    return found.pop() if found else None


#
# tensor products
#
def _check_no_renaming(A: MatrixFactorization, B: MatrixFactorization):
    clash = (set(B.internal) & set(A.ring.names)) | (set(A.internal) & set(B.right))
    if clash:
        raise InterfaceMismatch(
            f"internal variables {sorted(clash)} clash; rename them before "
            "tensoring morphisms"
        )


def tensor(f: MFMorphism, g: MFMorphism) -> MFMorphism:
    """
    f (x) g with (f (x) g)(a (x) b) = (-1)^(|g||a|) f(a) (x) g(b).
    """
    for A, B in ((f.source, g.source), (f.target, g.target)):
        _check_no_renaming(A, B)
    S = mf_tensor(f.source, g.source)
    T = mf_tensor(f.target, g.target)
    s_pairs = S.tags["tensor"][2]
    t_pairs = T.tags["tensor"][2]
    ring = common_ring(S.ring, T.ring)
    out = mx.zeros(ring, T.rank, S.rank)
    for col, (kp, k) in enumerate(s_pairs):
        sign = -1 if (g.degree and f.source.parities[kp]) else 1
        for row, (lp, l) in enumerate(t_pairs):
            a, b = f.matrix[lp, kp], g.matrix[l, k]
            if is_zero_entry(a) or is_zero_entry(b):
                continue
            entry = compose_entries(a, b, ring)
            out[row, col] = scale_entry(entry, sign) if sign < 0 else entry
    return MFMorphism(S, T, out, f.degree + g.degree, f"{f.name}*{g.name}")


def _pair_index(X: MatrixFactorization) -> dict:
    return {pair: k for k, pair in enumerate(X.tags["tensor"][2])}


def associator(A, B, C) -> MFMorphism:
    """(A (x) B) (x) C -> A (x) (B (x) C), relabelling basis elements."""
    AB = mf_tensor(A, B)
    left = mf_tensor(AB, C)
    BC = mf_tensor(B, C)
    right = mf_tensor(A, BC)
    ab_pairs = AB.tags["tensor"][2]
    bc_index = _pair_index(BC)
    r_index = _pair_index(right)
    ring = common_ring(left.ring, right.ring)
    out = mx.zeros(ring, right.rank, left.rank)
    for col, (i_ab, k) in enumerate(left.tags["tensor"][2]):
        i, j = ab_pairs[i_ab]
        out[r_index[(i, bc_index[(j, k)])], col] = ring.one()
    return MFMorphism(left, right, out, 0, "assoc")


def associator_inverse(A, B, C) -> MFMorphism:
    f = associator(A, B, C)
    return MFMorphism(f.target, f.source, f.matrix.T.copy(), 0, "assoc^-1")


#
# unit structure
#
def _unit_pieces(M: MatrixFactorization, side: str, name: str = None):
    """
    The unit I of the left (or right) potential of M, arranged to tensor
    with a renamed copy of M through fresh internal variables.
    """
    outer = M.left if side == "left" else M.right
    potential = M.W if side == "left" else M.V
    taken = set(M.ring.names) | set(M.field.generator_names())
    fresh = {}
    for n in outer:
        new = fresh_name(name or f"{n}t", taken)
        taken.add(new)
        fresh[n] = new

    I = unit_mf(potential, names=outer)
    if side == "left":
        # I(x, xt) (x) M(xt, ...)
        I = I.rename(dict(zip(I.right, [fresh[n] for n in outer])))
        Mr = M.rename(fresh)
        return I, Mr, fresh
    # M(..., yt) (x) I(yt, y)
    I = I.rename({**{n: fresh[n] for n in outer}, **dict(zip(I.right, outer))})
    Mr = M.rename(fresh)
    return Mr, I, fresh


def unit_morphisms(M: MatrixFactorization, names: tuple = (None, None)):
    """
    The unit isomorphisms lambda: I (x) M -> M and rho: M (x) I -> M. Both
    project onto the theta-free component of I and evaluate the internal
    variables at the outer ones.

    Returns:
        (lambda_M, rho_M)
    """
    I, Ml, fresh_l = _unit_pieces(M, "left", names[0])
    T = mf_tensor(I, Ml)
    L = Subst({v: T.ring.var(k) for k, v in fresh_l.items()})
    lam = mx.zeros(common_ring(T.ring, M.ring), M.rank, T.rank)
    index = _pair_index(T)
    for k in range(M.rank):
        lam[k, index[(0, k)]] = L
    lam = MFMorphism(T, M, lam, 0, f"lambda_{M.name}")

    Mr, Ir, fresh_r = _unit_pieces(M, "right", names[1])
    T = mf_tensor(Mr, Ir)
    R = Subst({v: T.ring.var(k) for k, v in fresh_r.items()})
    rho = mx.zeros(common_ring(T.ring, M.ring), M.rank, T.rank)
    index = _pair_index(T)
    for k in range(M.rank):
        rho[k, index[(k, 0)]] = R
    rho = MFMorphism(T, M, rho, 0, f"rho_{M.name}")
    return lam, rho


#
# cones
#
def cone(f: MFMorphism) -> MatrixFactorization:
    """
    The cone of an even polynomial morphism f: M -> N, with
    C0 = N0 + M1 and C1 = N1 + M0. It is a factorization iff f is closed.
    """
    if f.degree != 0 or not f.is_polynomial:
        raise ValueError("cones are built from even polynomial morphisms")
    M, N = f.source, f.target
    ring = common_ring(M.ring, N.ring)
    z = mx.zeros
    d1 = mx.block(
        [
            [mx.to_ring(N.d1, ring), f.f0],
            [z(ring, M.n1, N.n1), mx.scale(mx.to_ring(M.d0, ring), -1)],
        ]
    )
    d0 = mx.block(
        [
            [mx.to_ring(N.d0, ring), f.f1],
            [z(ring, M.n0, N.n0), mx.scale(mx.to_ring(M.d1, ring), -1)],
        ]
    )
    grading = None
    if M.grading is not None and N.grading is not None:
        grading = GradingAssignment(
            N.grading.even + tuple(v - 1 for v in M.grading.odd),
            N.grading.odd + tuple(v - 1 for v in M.grading.even),
        )
    return MatrixFactorization(
        ring,
        d1,
        d0,
        N.W.to_ring(ring),
        N.V.to_ring(ring),
        N.left,
        N.right,
        tuple(dict.fromkeys(tuple(N.internal) + tuple(M.internal))),
        grading,
        None,
        False,
        f"Cone({f.name})",
        {},
    )


#
# twisted units
#
def scaling_operator(field, d: int, a: int) -> Operator:
    """Sub_a: every variable x -> zeta_d^a x."""
    return ScaleAll(_root_of_order(field, d) ** a)


def twisted_unit(d: int, a: int, variables=("x", "y"), field=None):
    """_aI as the twist of P_{{0}}."""
    I = permutation_mf(d, [0], graded=True, alpha=0, variables=variables, field=field)
    twisted, _ = twist(I, a, 0)
    return twisted


def twist_multiplication(d: int, a: int, b: int, variables=("x", "y", "z"), field=None):
    """
    mu_{a,b}: _aI(x, y) (x) _bI(y, z) -> _{a+b}I(x, z), the theta-free
    projection followed by y -> zeta^a x.
    """
    x, y, z = variables
    A = twisted_unit(d, a, (x, y), field)
    B = twisted_unit(d, b, (y, z), field)
    C = twisted_unit(d, a + b, (x, z), A.field)
    T = mf_tensor(A, B)
    eta = root_of_unity(A.field, A.field.cyclotomic_order // d)
    sub = Subst({y: T.ring.var(x) * eta**a})
    ring = common_ring(T.ring, C.ring)
    out = mx.zeros(ring, C.rank, T.rank)
    index = _pair_index(T)
    for k in range(C.rank):
        out[k, index[(0, k)]] = sub
    return MFMorphism(T, C, out, 0, f"mu_{a % d},{b % d}")

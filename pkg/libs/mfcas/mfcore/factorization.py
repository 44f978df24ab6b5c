"""
Matrix (bi)factorizations of W(left) - V(right): construction, validation,
tensor products, duals, shifts, twists and the unit object.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from functools import lru_cache
from typing import Callable, Mapping, Sequence

import numpy as np

from mfcas.algebra import (
    RATIONALS,
    MultiPoly,
    Rational,
    WeightedRing,
    galois_apply,
    make_cyclotomic,
    rational,
    root_of_unity,
)
from mfcas.algebra.poly import difference_quotient
from mfcas.exceptions import (
    GradingViolation,
    InterfaceMismatch,
    NotHomogeneous,
    RingMismatch,
    SquareMismatch,
    UnsupportedRank,
    UnsupportedShape,
    ZeroPolynomial,
)
from mfcas.mfcore import matrix as mx
from mfcas.utils import fresh_name, powerset


@dataclass(frozen=True)
class GradingAssignment:
    """C-degrees of the basis elements of M0 and M1."""

    even: tuple
    odd: tuple

    def __post_init__(self):
        object.__setattr__(self, "even", tuple(rational(v) for v in self.even))
        object.__setattr__(self, "odd", tuple(rational(v) for v in self.odd))

    @property
    def degrees(self) -> tuple:
        return self.even + self.odd

    def swapped(self) -> "GradingAssignment":
        return GradingAssignment(self.odd, self.even)

    def shifted(self, delta) -> "GradingAssignment":
        delta = rational(delta)
        return GradingAssignment(
            [v + delta for v in self.even], [v + delta for v in self.odd]
        )


def entry_degree(w, source_degree, target_degree) -> Rational:
    """Weighted degree of an entry of a C-degree-w map between basis elements."""
    return rational(w) + source_degree - target_degree


@lru_cache(maxsize=None)
def common_field(f1, f2):
    if f1.has_subfield(f2):
        return f1
    if f2.has_subfield(f1):
        return f2
    raise RingMismatch(f"no common field for {f1!r} and {f2!r}")


@dataclass
class MatrixFactorization:
    """
    A Z2-graded free module over ``ring`` with d1: M1 -> M0 and d0: M0 -> M1
    such that d1*d0 and d0*d1 are (W - V)*id.

    The ring holds all variables: left, then internal, then right ones in the
    order they were created. W is a polynomial in the left variables, V in
    the right ones.
    """

    ring: WeightedRing
    d1: np.ndarray
    d0: np.ndarray
    W: MultiPoly
    V: MultiPoly
    left: tuple = ()
    right: tuple = ()
    internal: tuple = ()
    grading: GradingAssignment = None
    labels: tuple = None
    zero_object: bool = False
    name: str = "M"
    tags: dict = dataclass_field(default_factory=dict)

    # --- shape ---

    @property
    def n0(self) -> int:
        return self.d1.shape[0]

    @property
    def n1(self) -> int:
        return self.d1.shape[1]

    @property
    def rank(self) -> int:
        return self.n0 + self.n1

    @property
    def outer(self) -> tuple:
        return tuple(self.left) + tuple(self.right)

    @property
    def is_graded(self) -> bool:
        return self.grading is not None

    @property
    def field(self):
        return self.ring.field

    @property
    def parities(self) -> tuple:
        return (0,) * self.n0 + (1,) * self.n1

    @property
    def degrees(self) -> tuple:
        return self.grading.degrees if self.grading is not None else None

    @property
    def potential(self) -> MultiPoly:
        return self.W - self.V

    def basis_labels(self) -> tuple:
        if self.labels is not None:
            return self.labels
        return tuple(f"e{i}" for i in range(self.n0)) + tuple(
            f"f{i}" for i in range(self.n1)
        )

    def differential(self) -> np.ndarray:
        """The full odd matrix [[0, d1], [d0, 0]] on M0 + M1."""
        return mx.block(
            [
                [mx.zeros(self.ring, self.n0, self.n0), self.d1],
                [self.d0, mx.zeros(self.ring, self.n1, self.n1)],
            ]
        )

    # --- validation ---

    def check_square(self):
        """
        Raises:
            SquareMismatch: with the block ("d1*d0" or "d0*d1") and entry.
        """
        if self.d0.shape != (self.n1, self.n0):
            raise SquareMismatch(
                f"d0 has shape {self.d0.shape}, expected {(self.n1, self.n0)}",
                block="shape",
            )
        target = self.potential
        for block, product in (
            ("d1*d0", mx.matmul(self.d1, self.d0, self.ring)),
            ("d0*d1", mx.matmul(self.d0, self.d1, self.ring)),
        ):
            bad = mx.scalar_identity_check(product, target)
            if bad is not None:
                raise SquareMismatch(
                    f"{block} differs from (W-V)*id at entry {bad}: "
                    f"got {product[bad]}",
                    block=block,
                    entry=bad,
                )

    def check_grading(self):
        """
        Raises:
            GradingViolation: when an entry of d1 or d0 is not homogeneous of
                the degree forced by the grading (the differential has
                C-degree 1).
        """
        if self.grading is None:
            return
        g = self.grading
        if len(g.even) != self.n0 or len(g.odd) != self.n1:
            raise GradingViolation(
                f"grading lengths {len(g.even)}, {len(g.odd)} do not match "
                f"ranks {self.n0}, {self.n1}",
                block="shape",
            )
        for block, mat, src, tgt in (
            ("d1", self.d1, g.odd, g.even),
            ("d0", self.d0, g.even, g.odd),
        ):
            for (i, j), entry in np.ndenumerate(mat):
                if not entry:
                    continue
                expected = entry_degree(1, src[j], tgt[i])
                try:
                    degree = entry.weighted_degree()
                except NotHomogeneous as e:
                    raise GradingViolation(
                        f"{block}[{i},{j}] = {entry} is not homogeneous",
                        block=block,
                        entry=(i, j),
                    ) from e
                if degree != expected:
                    raise GradingViolation(
                        f"{block}[{i},{j}] = {entry} has degree {degree}, "
                        f"expected {expected}",
                        block=block,
                        entry=(i, j),
                    )

    def validate(self) -> "MatrixFactorization":
        self.check_square()
        self.check_grading()
        return self

    # --- ring changes ---

    def map_entries(self, func: Callable, ring: WeightedRing = None) -> "MatrixFactorization":
        """Applies func to every polynomial (differential and potentials)."""
        return MatrixFactorization(
            ring or self.ring,
            mx.map_entries(self.d1, func),
            mx.map_entries(self.d0, func),
            func(self.W),
            func(self.V),
            self.left,
            self.right,
            self.internal,
            self.grading,
            self.labels,
            self.zero_object,
            self.name,
            dict(self.tags),
        )

    def to_ring(self, ring: WeightedRing) -> "MatrixFactorization":
        return self.map_entries(lambda p: p.to_ring(ring), ring)

    def with_field(self, field) -> "MatrixFactorization":
        return self.to_ring(self.ring.with_field(field))

    def map_coefficients(self, func: Callable) -> "MatrixFactorization":
        return self.map_entries(lambda p: p.map_coefficients(func))

    def rename(self, mapping: Mapping[str, str]) -> "MatrixFactorization":
        ring = WeightedRing(
            [(mapping.get(n, n), w) for n, w in self.ring.variables], self.ring.field
        )
        out = self.map_entries(lambda p: p.rename(mapping, ring), ring)
        out.left = tuple(mapping.get(n, n) for n in self.left)
        out.right = tuple(mapping.get(n, n) for n in self.right)
        out.internal = tuple(mapping.get(n, n) for n in self.internal)
        return out

    def evaluate_zero(self, names: Sequence[str] = None) -> tuple:
        """(d1, d0) with the given variables (default: the outer ones) set to 0."""
        names = self.outer if names is None else names
        return (
            mx.map_entries(self.d1, lambda p: p.evaluate_zero(names)),
            mx.map_entries(self.d0, lambda p: p.evaluate_zero(names)),
        )

    def __str__(self):
        lines = [
            f"{self.name}: rank ({self.n0}, {self.n1}) over {self.ring.field!r}",
            f"  left {list(self.left)}, internal {list(self.internal)}, "
            f"right {list(self.right)}",
            f"  W = {self.W}",
            f"  V = {self.V}",
            f"  d1 = {mx.format_matrix(self.d1)}",
            f"  d0 = {mx.format_matrix(self.d0)}",
        ]
        if self.grading is not None:
            lines.append(
                "  grading even "
                f"{[str(v) for v in self.grading.even]}, odd "
                f"{[str(v) for v in self.grading.odd]}"
            )
        if self.zero_object:
            lines.append("  (zero object)")
        return "\n".join(lines)


def mf_make(
    d1,
    d0,
    W,
    V,
    grading=None,
    ring: WeightedRing = None,
    left: Sequence[str] = None,
    right: Sequence[str] = None,
    internal: Sequence[str] = None,
    labels: Sequence = None,
    name: str = "M",
    zero_object: bool = False,
    tags: dict = None,
) -> MatrixFactorization:
    """
    Builds and validates a matrix factorization.

    Args:
        d1: matrix M1 -> M0 (polynomials, scalars or strings).
        d0: matrix M0 -> M1.
        W: left potential; V: right potential (0 for a plain factorization).
        grading: a GradingAssignment or a pair (even degrees, odd degrees).
        ring: ring of all entries; defaults to the ring of W.
        left, right, internal: variable partition. Left and right default to
            the variables of W and V; internal defaults to the rest.

    Raises:
        SquareMismatch, GradingViolation.
    """
    if ring is None:
        ring = W.ring if isinstance(W, MultiPoly) else V.ring
    W, V = ring(W), ring(V)

    left = tuple(left) if left is not None else tuple(W.variables_used())
    right = tuple(right) if right is not None else tuple(V.variables_used())
    if internal is None:
        internal = tuple(n for n in ring.names if n not in left and n not in right)

    d1 = d1 if isinstance(d1, np.ndarray) else mx.as_matrix(d1, ring)
    d0 = d0 if isinstance(d0, np.ndarray) else mx.as_matrix(d0, ring)
    d1, d0 = mx.to_ring(d1, ring), mx.to_ring(d0, ring)

    if grading is not None and not isinstance(grading, GradingAssignment):
        grading = GradingAssignment(*grading)

    mf = MatrixFactorization(
        ring,
        d1,
        d0,
        W,
        V,
        left,
        right,
        tuple(internal),
        grading,
        tuple(labels) if labels is not None else None,
        zero_object,
        name,
        dict(tags or {}),
    )
    return mf.validate()


#
# Standard objects
#
def _format_set(S) -> str:
    return "{" + ",".join(str(j) for j in S) + "}"


def interval_set(d: int, a: int, lam: int) -> tuple:
    """{a, a+1, ..., a+lam} modulo d, sorted."""
    return tuple(sorted({(a + k) % d for k in range(lam + 1)}))


def permutation_mf(
    d: int,
    S,
    graded: bool = False,
    alpha=None,
    variables: Sequence[str] = ("x", "y"),
    field=None,
) -> MatrixFactorization:
    """
    The permutation-type bifactorization P_S of x^d - y^d over Q(zeta_d):
    d1 = prod_{j in S} (x - zeta^j y), d0 the complementary product.

    Args:
        d: order of the root of unity, d >= 2.
        S: subset of Z_d (integers are read modulo d).
        graded: attach the grading alpha on M0 and alpha + 2|S|/d - 1 on M1.
        alpha: offset; defaults to (1 - |S|)/d, the self-dual choice.
        variables: names of the left and right variable.
        field: a cyclotomic field containing the d-th roots of unity.

    Returns:
        The factorization. P_{} and P_{Z_d} are returned flagged as zero objects.
    """
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    S = tuple(sorted({int(j) % d for j in S}))
    field = field or make_cyclotomic(d)
    eta = _root_of_order(field, d)

    x_name, y_name = variables
    weight = rational(2) / d
    ring = WeightedRing([(x_name, weight), (y_name, weight)], field)
    x, y = ring.gens()

    d1, d0 = ring.one(), ring.one()
    for j in range(d):
        factor = x - y * eta**j
        if j in S:
            d1 = d1 * factor
        else:
            d0 = d0 * factor

    grading = None
    if graded:
        if alpha is None:
            alpha = rational(1 - len(S)) / d
        alpha = rational(alpha)
        grading = GradingAssignment([alpha], [alpha + weight * len(S) - 1])

    return mf_make(
        [[d1]],
        [[d0]],
        x**d,
        y**d,
        grading=grading,
        ring=ring,
        left=(x_name,),
        right=(y_name,),
        internal=(),
        name=f"P_{_format_set(S)}",
        zero_object=len(S) in (0, d),
        tags={"permutation": (d, S)},
    )


def permutation_interval_mf(d: int, a: int, lam: int, graded: bool = False, **kwargs):
    """P_{a:lam} = P_{{a, a+1, ..., a+lam}}."""
    mf = permutation_mf(d, interval_set(d, a, lam), graded=graded, **kwargs)
    mf.name = f"P_{{{a % d}:{lam}}}"
    return mf


def monomial_mf(d: int, m: int, variable: str = "x") -> MatrixFactorization:
    """M_m = (x^m, x^(d-m)) as a graded factorization of x^d."""
    if not 0 <= m <= d:
        raise ValueError(f"m must lie in [0, {d}], got {m}")
    weight = rational(2) / d
    ring = WeightedRing([(variable, weight)])
    x = ring.var(variable)
    return mf_make(
        [[x**m]],
        [[x ** (d - m)]],
        x**d,
        0,
        grading=([0], [weight * m - 1]),
        ring=ring,
        left=(variable,),
        right=(),
        name=f"M_{m}",
        zero_object=m in (0, d),
    )


def _root_of_order(field, d: int):
    order = field.cyclotomic_order
    if order is None or order % d:
        raise RingMismatch(f"{field!r} does not contain the {d}-th roots of unity")
    return root_of_unity(field, order // d)


def unit_mf(W: MultiPoly, names: Sequence[str] = None) -> MatrixFactorization:
    """
    The unit I_W: the Koszul factorization of W(x) - W(x') on the exterior
    algebra of theta_1, ..., theta_n, with differential
    sum_i (x_i - x'_i) theta_i^* + d_[i]W theta_i.

    Args:
        W: the potential.
        names: the variables of W (default: the variables that occur).

    Returns:
        A factorization with left variables ``names`` and right variables the
        primed copies ("xp" for "x"). It is graded when all weights are
        positive and W is homogeneous of degree 2.
    """
    names = tuple(names) if names is not None else tuple(W.variables_used())
    taken = set(W.ring.names) | set(W.ring.field.generator_names())
    primed = []
    for n in names:
        p = fresh_name(f"{n}p", taken)
        taken.add(p)
        primed.append(p)

    weights = [W.ring.weight(n) for n in names]
    ring = WeightedRing(
        list(zip(names, weights)) + list(zip(primed, weights)), W.ring.field
    )
    W_left = W.to_ring(ring)
    xs = [ring.var(n) for n in names]
    xps = [ring.var(n) for n in primed]

    # telescoping difference quotients
    partials = []
    current = W_left
    for i, (n, p) in enumerate(zip(names, primed)):
        nxt = current.subs({n: xps[i]}, ring)
        partials.append((current - nxt).exact_div(xs[i] - xps[i]))
        current = nxt
    W_right = current

    n = len(names)
    subsets = list(powerset(range(n)))
    even = [s for s in subsets if len(s) % 2 == 0]
    odd = [s for s in subsets if len(s) % 2 == 1]
    basis = even + odd
    pos = {s: k for k, s in enumerate(basis)}

    D = mx.zeros(ring, len(basis), len(basis))
    for S in basis:
        for i in range(n):
            sign = -1 if sum(1 for s in S if s < i) % 2 else 1
            if i in S:
                target = tuple(s for s in S if s != i)
                D[pos[target], pos[S]] += (xs[i] - xps[i]) * sign
            else:
                target = tuple(sorted(S + (i,)))
                D[pos[target], pos[S]] += partials[i] * sign

    n0 = len(even)
    grading = None
    if all(w > 0 for w in weights):
        try:
            if W_left.weighted_degree() == 2:
                degree = {s: sum((weights[i] - 1 for i in s), Rational(0)) for s in basis}
                grading = GradingAssignment(
                    [degree[s] for s in even], [degree[s] for s in odd]
                )
        except (NotHomogeneous, ZeroPolynomial):
            grading = None

    labels = tuple(tuple(names[i] for i in s) for s in basis)
    return mf_make(
        D[:n0, n0:],
        D[n0:, :n0],
        W_left,
        W_right,
        grading=grading,
        ring=ring,
        left=names,
        right=tuple(primed),
        internal=(),
        labels=labels,
        name="I",
        tags={"unit": names},
    )


#
# Tensor products
#
def _tensor_module(Dp, pp, D, p, ring):
    """
    Differential of the graded tensor product of two modules with full odd
    matrices Dp (parities pp) and D (parities p), in the basis
    (B'0B0, B'1B1 | B'1B0, B'0B1) with pairs in row-major order. The second
    factor picks up the Koszul sign (-1)^|b'|.

    Returns:
        (pairs, n0, full differential)
    """
    np_, n = len(pp), len(p)
    ev_p = [k for k in range(np_) if pp[k] == 0]
    od_p = [k for k in range(np_) if pp[k] == 1]
    ev = [k for k in range(n) if p[k] == 0]
    od = [k for k in range(n) if p[k] == 1]
    pairs = (
        [(a, b) for a in ev_p for b in ev]
        + [(a, b) for a in od_p for b in od]
        + [(a, b) for a in od_p for b in ev]
        + [(a, b) for a in ev_p for b in od]
    )
    n0 = len(ev_p) * len(ev) + len(od_p) * len(od)
    pos = {pair: k for k, pair in enumerate(pairs)}

    Dp_cols = [[(l, Dp[l, k].to_ring(ring)) for l in range(np_) if Dp[l, k]] for k in range(np_)]
    D_cols = [[(l, D[l, k].to_ring(ring)) for l in range(n) if D[l, k]] for k in range(n)]

    out = mx.zeros(ring, len(pairs), len(pairs))
    for (kp, k), col in pos.items():
        for lp, entry in Dp_cols[kp]:
            out[pos[(lp, k)], col] += entry
        sign = -1 if pp[kp] else 1
        for l, entry in D_cols[k]:
            out[pos[(kp, l)], col] += entry * sign
    return pairs, n0, out


def _tensor_grading(A: MatrixFactorization, B: MatrixFactorization, pairs):
    if A.grading is None or B.grading is None:
        return None
    da, db = A.grading.degrees, B.grading.degrees
    n0 = sum(1 for a, b in pairs if (A.parities[a] + B.parities[b]) % 2 == 0)
    degrees = [da[a] + db[b] for a, b in pairs]
    return GradingAssignment(degrees[:n0], degrees[n0:])


def _tensor_labels(A: MatrixFactorization, B: MatrixFactorization, pairs):
    la, lb = A.basis_labels(), B.basis_labels()
    return tuple((la[a], lb[b]) for a, b in pairs)


def mf_tensor(Bp: MatrixFactorization, B: MatrixFactorization) -> MatrixFactorization:
    """
    The tensor product B' (x) B over the shared variables: the right
    variables of B' must be the left variables of B, and V' = W. The shared
    variables become internal variables of the result, which factorizes
    W' - V.

    Internal variables of B that clash with names of B' are renamed.

    Raises:
        InterfaceMismatch: when the interfaces differ or outer variables clash.
    """
    if tuple(Bp.right) != tuple(B.left):
        raise InterfaceMismatch(
            f"right variables {list(Bp.right)} of {Bp.name} differ from left "
            f"variables {list(B.left)} of {B.name}"
        )

    taken = set(Bp.ring.names) | set(B.ring.names)
    taken |= set(Bp.field.generator_names()) | set(B.field.generator_names())
    clash = {n for n in B.internal if n in Bp.ring.names}
    if clash:
        mapping = {}
        for n in sorted(clash):
            new = fresh_name(n, taken)
            taken.add(new)
            mapping[n] = new
        B = B.rename(mapping)
    clash = {n for n in Bp.internal if n in B.right}
    if clash:
        mapping = {}
        for n in sorted(clash):
            new = fresh_name(n, taken)
            taken.add(new)
            mapping[n] = new
        Bp = Bp.rename(mapping)
    if set(Bp.left) & (set(B.right) | set(B.internal)):
        raise InterfaceMismatch(
            f"outer variables {sorted(set(Bp.left) & set(B.ring.names))} occur in "
            f"both {Bp.name} and {B.name}"
        )

    field = common_field(Bp.field, B.field)
    names = list(Bp.left) + list(Bp.internal) + list(Bp.right) + list(B.internal)
    names += list(B.right)
    weight = {n: w for n, w in B.ring.variables}
    weight.update({n: w for n, w in Bp.ring.variables})
    ring = WeightedRing([(n, weight[n]) for n in names], field)

    if Bp.V.to_ring(ring) != B.W.to_ring(ring):
        raise InterfaceMismatch(
            f"right potential {Bp.V} of {Bp.name} differs from left potential "
            f"{B.W} of {B.name}"
        )

    pairs, n0, D = _tensor_module(
        Bp.differential(), Bp.parities, B.differential(), B.parities, ring
    )
    internal = tuple(Bp.internal) + tuple(Bp.right) + tuple(B.internal)
    return MatrixFactorization(
        ring,
        D[:n0, n0:],
        D[n0:, :n0],
        Bp.W.to_ring(ring),
        B.V.to_ring(ring),
        tuple(Bp.left),
        tuple(B.right),
        internal,
        _tensor_grading(Bp, B, pairs),
        _tensor_labels(Bp, B, pairs),
        Bp.zero_object or B.zero_object,
        f"{Bp.name}*{B.name}",
        {"tensor": (Bp, B, tuple(pairs))},
    )


def tensor_pairs(Bp: MatrixFactorization, B: MatrixFactorization) -> list:
    """The basis pairs (index in B', index in B) of B' (x) B, in basis order."""
    pp, p = Bp.parities, B.parities
    ev_p = [k for k in range(Bp.rank) if pp[k] == 0]
    od_p = [k for k in range(Bp.rank) if pp[k] == 1]
    ev = [k for k in range(B.rank) if p[k] == 0]
    od = [k for k in range(B.rank) if p[k] == 1]
    return (
        [(a, b) for a in ev_p for b in ev]
        + [(a, b) for a in od_p for b in od]
        + [(a, b) for a in od_p for b in ev]
        + [(a, b) for a in ev_p for b in od]
    )


def external_tensor(A: MatrixFactorization, B: MatrixFactorization) -> MatrixFactorization:
    """
    Tensor product over the ground field: the variable sets must be
    disjoint, and the result factorizes (W_A + W_B) - (V_A + V_B).
    """
    shared = set(A.ring.names) & set(B.ring.names)
    if shared:
        raise InterfaceMismatch(f"variables {sorted(shared)} occur in both factors")
    field = common_field(A.field, B.field)
    ring = WeightedRing(list(A.ring.variables) + list(B.ring.variables), field)
    pairs, n0, D = _tensor_module(
        A.differential(), A.parities, B.differential(), B.parities, ring
    )
    return mf_make(
        D[:n0, n0:],
        D[n0:, :n0],
        A.W.to_ring(ring) + B.W.to_ring(ring),
        A.V.to_ring(ring) + B.V.to_ring(ring),
        grading=_tensor_grading(A, B, pairs),
        ring=ring,
        left=tuple(A.left) + tuple(B.left),
        right=tuple(A.right) + tuple(B.right),
        internal=tuple(A.internal) + tuple(B.internal),
        labels=_tensor_labels(A, B, pairs),
        name=f"{A.name}#{B.name}",
        zero_object=A.zero_object or B.zero_object,
    )


def direct_sum(M: MatrixFactorization, N: MatrixFactorization) -> MatrixFactorization:
    """M + N with basis (M0, N0 | M1, N1); both must share ring and potentials."""
    if M.ring != N.ring:
        N = N.to_ring(M.ring)
    if M.W != N.W or M.V != N.V:
        raise InterfaceMismatch(f"{M.name} and {N.name} factorize different potentials")
    ring = M.ring
    d1 = mx.block(
        [
            [M.d1, mx.zeros(ring, M.n0, N.n1)],
            [mx.zeros(ring, N.n0, M.n1), N.d1],
        ]
    )
    d0 = mx.block(
        [
            [M.d0, mx.zeros(ring, M.n1, N.n0)],
            [mx.zeros(ring, N.n1, M.n0), N.d0],
        ]
    )
    grading = None
    if M.grading is not None and N.grading is not None:
        grading = GradingAssignment(
            M.grading.even + N.grading.even, M.grading.odd + N.grading.odd
        )
    lm, ln = M.basis_labels(), N.basis_labels()
    labels = (
        tuple(("0", v) for v in lm[: M.n0])
        + tuple(("1", v) for v in ln[: N.n0])
        + tuple(("0", v) for v in lm[M.n0 :])  # noqa: E203
        + tuple(("1", v) for v in ln[N.n0 :])  # noqa: E203
    )
    return MatrixFactorization(
        ring,
        d1,
        d0,
        M.W,
        M.V,
        M.left,
        M.right,
        M.internal,
        grading,
        labels,
        M.zero_object and N.zero_object,
        f"{M.name}+{N.name}",
        {"sum": (M, N)},
    )


#
# Duals, shifts and twists
#
def mf_dual(M: MatrixFactorization) -> MatrixFactorization:
    """
    The dual of a rank-one bifactorization with one left variable x and one
    right variable y: d1+ = -d1(y, x), d0+ = d0(y, x). It factorizes
    V(x) - W(y). In the graded case M+_0 has degree
    -alpha + |x| - deg(d1) and M+_1 has degree -alpha + |x| - 1.

    Raises:
        UnsupportedRank: for rank > 1.
        UnsupportedShape: for other variable layouts.
    """
    if M.n0 != 1 or M.n1 != 1:
        raise UnsupportedRank(f"explicit duals need rank one, {M.name} has ({M.n0}, {M.n1})")
    if len(M.left) != 1 or len(M.right) != 1 or M.internal:
        raise UnsupportedShape("explicit duals need one left and one right variable")

    (x,), (y,) = M.left, M.right
    wx, wy = M.ring.weight(x), M.ring.weight(y)
    ring = WeightedRing([(x, wy), (y, wx)], M.field)

    def swap(p):
        return p.rename({x: y, y: x}, ring)

    d1 = -swap(M.d1[0, 0])
    d0 = swap(M.d0[0, 0])

    grading = None
    if M.grading is not None:
        alpha = M.grading.even[0]
        deg_d1 = M.d1[0, 0].weighted_degree()
        grading = GradingAssignment([-alpha + wy - deg_d1], [-alpha + wy - 1])

    tags = {}
    if "permutation" in M.tags:
        d, S = M.tags["permutation"]
        tags["dual_of"] = (d, S)
    return mf_make(
        [[d1]],
        [[d0]],
        swap(M.V),
        swap(M.W),
        grading=grading,
        ring=ring,
        left=(x,),
        right=(y,),
        internal=(),
        name=f"{M.name}+",
        zero_object=M.zero_object,
        tags=tags,
    )


def transpose_dual(X: MatrixFactorization) -> MatrixFactorization:
    """
    The finite-rank dual of any rank: (X^v)_0 = X_1^*, (X^v)_1 = X_0^*,
    d1 = -d1^T, d0 = d0^T. Left and right roles are exchanged, so the
    result factorizes V - W, and dual basis elements have negated degrees.
    """
    if X.internal:
        raise UnsupportedShape("transpose duals need finite rank (no internal variables)")
    d1 = mx.scale(X.d1.T.copy(), -1)
    d0 = X.d0.T.copy()
    grading = None
    if X.grading is not None:
        grading = GradingAssignment(
            [-v for v in X.grading.odd], [-v for v in X.grading.even]
        )
    labels = X.basis_labels()
    labels = tuple(f"{v}*" for v in labels[X.n0 :]) + tuple(  # noqa: E203
        f"{v}*" for v in labels[: X.n0]
    )
    return mf_make(
        d1,
        d0,
        X.V,
        X.W,
        grading=grading,
        ring=X.ring,
        left=X.right,
        right=X.left,
        internal=(),
        labels=labels,
        name=f"{X.name}^v",
        zero_object=X.zero_object,
    )


def shift(M: MatrixFactorization) -> MatrixFactorization:
    """M[1]: the blocks exchanged and both negated."""
    grading = M.grading.swapped() if M.grading is not None else None
    labels = M.basis_labels()
    return MatrixFactorization(
        M.ring,
        mx.scale(M.d0, -1),
        mx.scale(M.d1, -1),
        M.W,
        M.V,
        M.left,
        M.right,
        M.internal,
        grading,
        labels[M.n0 :] + labels[: M.n0],  # noqa: E203
        M.zero_object,
        f"{M.name}[1]",
        {},
    )


def twist(M: MatrixFactorization, a: int, b: int):
    """
    The twisted bifactorization _aM_b, with d(x, y) replaced by
    d(zeta^a x, zeta^-b y), for a factorization of x^d - y^d.

    Returns:
        (_aM_b, s) where s is the isomorphism P_{S-a-b} -> _a(P_S)_b when M is
        a permutation factorization P_S (even block 1, odd block
        zeta^(-a|S|)), and None otherwise.

    Raises:
        UnsupportedShape: unless M has one left and one right variable.
    """
    if len(M.left) != 1 or len(M.right) != 1 or M.internal:
        raise UnsupportedShape("twists need one left and one right variable")
    (x,), (y,) = M.left, M.right
    d = M.W.degree_in(x)
    eta = _root_of_order(M.field, d)
    factors = {x: eta**a, y: eta ** (-b)}

    twisted = M.map_entries(lambda p: p.scale_variables(factors))
    twisted.W = M.W.scale_variables(factors)
    twisted.V = M.V.scale_variables(factors)
    twisted.name = f"_{a % d}({M.name})_{b % d}"
    twisted.tags = {"twist": (M, a % d, b % d)}

    if "permutation" not in M.tags:
        return twisted, None

    from mfcas.mfcore.morphism import MFMorphism

    _, S = M.tags["permutation"]
    source = permutation_mf(
        d,
        [j - a - b for j in S],
        graded=M.grading is not None,
        alpha=M.grading.even[0] if M.grading is not None else None,
        variables=(x, y),
        field=M.field,
    )
    ring = M.ring
    F = mx.zeros(ring, 2, 2)
    F[0, 0] = ring.one()
    F[1, 1] = ring.constant(eta ** (-a * len(S)))
    return twisted, MFMorphism(source, twisted, F, degree=0, name=f"s_{a},{b}")


def equivariant_structure(M: MatrixFactorization, a: int):
    """
    tau_{S;a} = zeta^(((d+1)/2) a (|S|-1)) s_{a,-a}: P_S -> _a(P_S)_{-a},
    the Z_d-equivariant structure of a permutation factorization, d odd.
    """
    if "permutation" not in M.tags:
        raise UnsupportedShape("equivariant structures are defined for P_S only")
    d, S = M.tags["permutation"]
    if d % 2 == 0:
        raise UnsupportedShape(f"the equivariant structure needs odd d, got {d}")
    _, s = twist(M, a, -a)
    eta = _root_of_order(M.field, d)
    tau = s.scale(eta ** (((d + 1) // 2) * a * (len(S) - 1)))
    tau.source = M
    tau.name = f"tau_{a}"
    return tau


def galois_mf(M: MatrixFactorization, nu: int) -> MatrixFactorization:
    """Applies zeta -> zeta^nu to every coefficient."""
    out = M.map_coefficients(lambda c: galois_apply(nu, c))
    out.name = f"sigma_{nu}({M.name})"
    return out


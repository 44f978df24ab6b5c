"""
Evaluation and coevaluation maps of rank-one bifactorizations of
x^d - y^d, with one internal variable in M+ (x) M and M (x) M+.

For M(x, y) the dual is M+(x, y) with d1+ = -d1(y, x) and d0+ = d0(y, x).
The maps are

    coev: I(x, z) -> M(x, y) (x) M+(y, z)
    ev:   M+(x, y) (x) M(y, z) -> I(x, z)

where ev is built from the functional

    G(f) = Res_y[(x - z - y) d0(y, z) f / (y (y^d - z^d))],

a Laurent coefficient once (y^d - z^d)^-1 is expanded in powers of z/y.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from mfcas.algebra import MultiPoly
from mfcas.algebra.poly import difference_quotient
from mfcas.exceptions import NotDivisible, UnsupportedRank, UnsupportedShape
from mfcas.log import get_logger
from mfcas.mfcore import (
    MatrixFactorization,
    MFMorphism,
    compose,
    from_blocks,
    identity,
    mf_dual,
    mf_tensor,
    permutation_mf,
    tensor,
    unit_mf,
)
from mfcas.mfcore import matrix as mx
from mfcas.mfcore.factorization import _root_of_order
from mfcas.mfcore.operators import Functional, common_ring

logger = get_logger(__name__)

NAMES = ("x", "y", "z")


@dataclass
class DualityData:
    """
    Duality morphisms of a rank-one bifactorization M. ``t``, ``u`` and
    ``n`` are only set for permutation factorizations P_S:
    t: P_{-S} -> (P_S)+, u = ev (t (x) id) and n = (id (x) t^-1) coev.
    """

    M: MatrixFactorization
    ev: MFMorphism
    coev: MFMorphism
    t: MFMorphism = None
    u: MFMorphism = None
    n: MFMorphism = None


def _exponent(M: MatrixFactorization) -> int:
    """d such that M factorizes a^d - b^d."""
    if M.n0 != 1 or M.n1 != 1:
        raise UnsupportedRank(f"duality maps need rank one, {M.name} has ({M.n0}, {M.n1})")
    if len(M.left) != 1 or len(M.right) != 1 or M.internal:
        raise UnsupportedShape("duality maps need one left and one right variable")
    (a,), (b,) = M.left, M.right
    d = M.W.degree_in(a)
    if M.W != M.ring.var(a) ** d or M.V != M.ring.var(b) ** d:
        raise UnsupportedShape(
            f"duality maps are implemented for x^d - y^d, {M.name} factorizes {M.potential}"
        )
    return d


def on(M: MatrixFactorization, left: str, right: str) -> MatrixFactorization:
    """A copy of the one-variable bifactorization M on the variables (left, right)."""
    (a,), (b,) = M.left, M.right
    return M.rename({a: left, b: right})


def dual_on(M: MatrixFactorization, left: str, right: str) -> MatrixFactorization:
    """M+ on the variables (left, right)."""
    return on(mf_dual(M), left, right)


def unit_on(M: MatrixFactorization, left: str, right: str, side: str = "left"):
    """The unit of the left (or right) potential of M on (left, right)."""
    (a,), (b,) = M.left, M.right
    potential = M.W if side == "left" else M.V
    outer = a if side == "left" else b
    I = unit_mf(potential, names=(outer,))
    return I.rename({outer: left, I.right[0]: right})


def gm_eval(M: MatrixFactorization, f: MultiPoly, names: Sequence[str] = NAMES) -> MultiPoly:
    """
    G_M(f) for f in K[x, y, z] (any further variables are parameters): the
    coefficient of y^-1 in (x - z - y) d0(y, z) f / y^(d+1) sum_m (z/y)^(dm),
    that is the sum over m >= 0 of the y^(d(m+1)) coefficients times z^(dm).
    """
    return _residue_functional(M, names)(f)


def _residue_functional(M: MatrixFactorization, names: Sequence[str]):
    d = _exponent(M)
    x, y, z = names
    d0 = on(M, y, z).d0[0, 0]
    base = common_ring(d0.ring, on(M, x, z).ring)

    def G(f):
        ring = common_ring(f.ring, base)
        X, Y, Z = ring.var(x), ring.var(y), ring.var(z)
        integrand = (X - Z - Y) * d0.to_ring(ring) * f.to_ring(ring)
        value = ring.zero()
        for (k,), part in integrand.coefficient_in([y]).items():
            if k >= d and k % d == 0:
                value = value + part * Z ** (k - d)
        return value

    return G


def evaluation(M: MatrixFactorization, names: Sequence[str] = NAMES, sign: int = 1) -> MFMorphism:
    """
    ev_M: M+(x, y) (x) M(y, z) -> I(x, z), with even block (A 0) on
    (M+0 M0, M+1 M1) and odd block (B C) on (M+1 M0, M+0 M1):

        A(f) = -G(f), B(f) = G(d1(y, x) f) / (x - z), C(f) = -f|_{y=0}.

    ``sign`` multiplies A; sign = -1 gives a deliberately broken map.
    """
    x, y, z = names
    source = mf_tensor(dual_on(M, x, y), on(M, y, z))
    target = unit_on(M, x, z, side="right")
    d1_yx = on(M, y, x).d1[0, 0]
    G = _residue_functional(M, names)

    def A(f):
        return G(f) * (-sign)

    def B(f):
        ring = common_ring(f.ring, d1_yx.ring)
        g = G(d1_yx.to_ring(ring) * f.to_ring(ring))
        try:
            return g.exact_div(g.ring.var(x) - g.ring.var(z))
        except NotDivisible as e:
            raise NotDivisible(f"G(d1({y},{x}) f) is not divisible by {x} - {z}") from e

    def C(f):
        return -f.evaluate_zero([y])

    ring = common_ring(source.ring, target.ring)
    matrix = mx.zeros(ring, target.rank, source.rank)
    # source basis (M+0 M0, M+1 M1 | M+1 M0, M+0 M1)
    matrix[0, 0] = Functional(A, "A")
    matrix[1, 2] = Functional(B, "B")
    matrix[1, 3] = Functional(C, "C")
    return MFMorphism(source, target, matrix, 0, f"ev_{M.name}")


def coevaluation(M: MatrixFactorization, names: Sequence[str] = NAMES) -> MFMorphism:
    """
    coev_M: I(x, z) -> M(x, y) (x) M+(y, z), sending I0 to the difference
    quotients ((d1(x,y) - d1(z,y))/(x-z), (d0(x,y) - d0(z,y))/(x-z)) and
    I1 to (1, 1).
    """
    _exponent(M)
    x, y, z = names
    source = unit_on(M, x, z, side="left")
    target = mf_tensor(on(M, x, y), dual_on(M, y, z))
    ring = common_ring(source.ring, target.ring)
    d1 = on(M, x, y).d1[0, 0].to_ring(ring)
    d0 = on(M, x, y).d0[0, 0].to_ring(ring)
    even = [[difference_quotient(d1, x, z)], [difference_quotient(d0, x, z)]]
    odd = [[ring.one()], [ring.one()]]
    return from_blocks(source, target, even, odd, 0, f"coev_{M.name}")


def _complement_product(d: int, S, eta):
    """prod over j not in S of (-eta^j)."""
    value = eta**0
    for j in range(d):
        if j not in S:
            value = value * (-(eta**j))
    return value


def dual_identification(P: MatrixFactorization, names: Sequence[str] = ("x", "y")):
    """
    t: P_{-S} -> (P_S)+ with t0 = 1 and t1 = prod_{j not in S} (-eta^j), for a
    permutation factorization P_S.

    Returns:
        (t, t^-1)
    """
    if "permutation" not in P.tags:
        raise UnsupportedShape(f"{P.name} is not a permutation factorization")
    d, S = P.tags["permutation"]
    x, y = names
    eta = _root_of_order(P.field, d)
    target = dual_on(P, x, y)
    alpha = target.grading.even[0] if target.grading is not None else None
    source = permutation_mf(
        d,
        [-j for j in S],
        graded=P.grading is not None,
        alpha=alpha,
        variables=(x, y),
        field=P.field,
    )
    c = _complement_product(d, S, eta)
    ring = common_ring(source.ring, target.ring)
    t = from_blocks(source, target, [[ring.one()]], [[ring.constant(c)]], 0, "t")
    t_inv = from_blocks(target, source, [[ring.one()]], [[ring.constant(1 / c)]], 0, "t^-1")
    return t, t_inv


def ev_coev(M: MatrixFactorization, names: Sequence[str] = NAMES) -> DualityData:
    """
    ev and coev of a rank-one bifactorization of x^d - y^d; for permutation
    factorizations also t, u and n.

    Raises:
        UnsupportedRank, UnsupportedShape: for other inputs.
    """
    ev = evaluation(M, names)
    coev = coevaluation(M, names)
    data = DualityData(M, ev, coev)
    if "permutation" not in M.tags:
        return data

    x, y, z = names
    t, _ = dual_identification(M, (x, y))
    _, t_inv = dual_identification(M, (y, z))
    data.t = t
    data.u = compose(ev, tensor(t, identity(on(M, y, z))))
    data.u.name = "u"
    data.n = compose(tensor(identity(on(M, x, y)), t_inv), coev)
    data.n.name = "n"
    logger.debug(f"duality data of {M.name} on {list(names)}")
    return data

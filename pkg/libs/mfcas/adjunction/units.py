"""
Inverses of the unit isomorphisms for bifactorizations with one left and
one right variable, built from difference quotients of the differential.
"""
from __future__ import annotations

from mfcas.algebra.poly import difference_quotient
from mfcas.exceptions import UnsupportedShape
from mfcas.mfcore import MatrixFactorization, MFMorphism, unit_morphisms
from mfcas.mfcore import matrix as mx
from mfcas.mfcore.morphism import _pair_index
from mfcas.mfcore.operators import common_ring


def _quotients(block, name: str, other: str, ring):
    return mx.map_entries(
        mx.to_ring(block, ring), lambda p: difference_quotient(p, name, other, ring)
    )


def unit_inverses(X: MatrixFactorization):
    """
    lambda^-1: X(x, w) -> I(x, xt) (x) X(xt, w) and
    rho^-1: X(x, w) -> X(x, wt) (x) I(wt, w), with

        lambda^-1 = [[id], [Dd0]] on X0 and [[Dd1], [id]] on X1,
        Dd = (d(x, w) - d(xt, w)) / (x - xt),
        rho^-1 = [[id], [A]] on X0 and [[id], [B]] on X1,
        A = (d0(x, wt) - d0(x, w)) / (wt - w), B = -(d1(x, wt) - d1(x, w)) / (wt - w),

    in the bases (I0 X0, I1 X1 | I1 X0, I0 X1) and (X0 I0, X1 I1 | X1 I0, X0 I1).
    lambda and rho only evaluate the theta-free component, so lambda lambda^-1
    and rho rho^-1 are identities.

    Returns:
        (lambda^-1, rho^-1), with targets the sources of unit_morphisms(X).

    Raises:
        UnsupportedShape: unless X has one left and one right variable.
    """
    if len(X.left) != 1 or len(X.right) != 1 or X.internal:
        raise UnsupportedShape("unit inverses need one left and one right variable")
    (x,), (w,) = X.left, X.right
    lam, rho = unit_morphisms(X)
    n0, rank = X.n0, X.rank

    # I(x, xt) (x) X(xt, w)
    T = lam.source
    Xl = T.tags["tensor"][1]
    (xt,) = Xl.left
    ring = common_ring(T.ring, X.ring)
    index = _pair_index(T)
    dd1 = _quotients(X.d1, x, xt, ring)
    dd0 = _quotients(X.d0, x, xt, ring)
    out = mx.zeros(ring, T.rank, rank)
    for k in range(n0):
        out[index[(0, k)], k] = ring.one()
        for l in range(n0, rank):
            out[index[(1, l)], k] = dd0[l - n0, k]
    for k in range(n0, rank):
        out[index[(0, k)], k] = ring.one()
        for j in range(n0):
            out[index[(1, j)], k] = dd1[j, k - n0]
    lam_inv = MFMorphism(X, T, out, 0, f"lambda^-1_{X.name}")

    # X(x, wt) (x) I(wt, w)
    T = rho.source
    Xr = T.tags["tensor"][0]
    (wt,) = Xr.right
    ring = common_ring(T.ring, X.ring)
    index = _pair_index(T)
    A = _quotients(Xr.d0, wt, w, ring)
    B = mx.scale(_quotients(Xr.d1, wt, w, ring), -1)
    out = mx.zeros(ring, T.rank, rank)
    for k in range(n0):
        out[index[(k, 0)], k] = ring.one()
        for l in range(n0, rank):
            out[index[(l, 1)], k] = A[l - n0, k]
    for k in range(n0, rank):
        out[index[(k, 0)], k] = ring.one()
        for j in range(n0):
            out[index[(j, 1)], k] = B[j, k - n0]
    rho_inv = MFMorphism(X, T, out, 0, f"rho^-1_{X.name}")
    return lam_inv, rho_inv

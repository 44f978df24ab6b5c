"""
Left and right quantum dimensions of finite-rank factorizations as residues
of a supertrace of derivatives of the differential.
"""
from __future__ import annotations

from dataclasses import dataclass

from scipy.special import comb

from mfcas.algebra import FieldElement, rational
from mfcas.exceptions import UnsupportedShape
from mfcas.jacobi import residue
from mfcas.mfcore import MatrixFactorization
from mfcas.mfcore import matrix as mx


@dataclass(frozen=True)
class QuantumDimensions:
    left: object
    right: object

    def to_dict(self) -> dict:
        return {"left": str(self.left), "right": str(self.right)}


def supertrace(matrix, n0: int):
    """tr of the even block minus tr of the odd block."""
    ring = matrix[0, 0].ring
    value = ring.zero()
    for i in range(matrix.shape[0]):
        value = value + matrix[i, i] if i < n0 else value - matrix[i, i]
    return value


def _derivative(D, name: str):
    return mx.map_entries(D, lambda p: p.diff(name))


def _inverse(scale):
    if isinstance(scale, FieldElement):
        return scale.inverse()
    return rational(1) / rational(scale)


def _side_residue(f, potential, names):
    if not names:
        return f.constant_term() if f.is_constant() else f
    return residue(f, potential, names)


def qdim(X: MatrixFactorization, scale=None) -> QuantumDimensions:
    """
    Quantum dimensions of X, a factorization of W(left) - V(right):

        qdim_l = (-1)^C(m+1, 2) Res_left[str(d_r1 D ... d_rm D d_l1 D ... d_ln D) / dW]
        qdim_r = (-1)^C(n+1, 2) Res_right[same supertrace / dV]

    with m right and n left variables.

    Args:
        X: a finite-rank factorization.
        scale: s when X is stored in the rescaled coordinate z = s u; the
            values are then returned in the u-frame, s * qdim_l and
            qdim_r / s.

    Raises:
        UnsupportedShape: for factorizations with internal variables.
    """
    if X.internal:
        raise UnsupportedShape(f"qdim needs finite rank, {X.name} has internal variables")

    left, right = tuple(X.left), tuple(X.right)
    m, n = len(right), len(left)

    D = X.differential()
    product = mx.identity(X.ring, X.rank)
    for name in right + left:
        product = mx.matmul(product, _derivative(D, name), X.ring)
    trace = supertrace(product, X.n0)

    sign_l = -1 if comb(m + 1, 2, exact=True) % 2 else 1
    sign_r = -1 if comb(n + 1, 2, exact=True) % 2 else 1
    value_l = _side_residue(trace, X.W, left) * sign_l
    value_r = _side_residue(trace, X.V, right) * sign_r

    if scale is not None:
        value_l = value_l * scale
        value_r = value_r * _inverse(scale)
    return QuantumDimensions(value_l, value_r)

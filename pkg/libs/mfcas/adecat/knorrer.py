"""
External sums with p^2 + q^2: if X is a witness for W ~ V then X # K is one
for W + p^2 + q^2 ~ V, where K = (p + i q, p - i q) is the rank-one Koszul
factorization over Q(zeta4).
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from mfcas.adecat.witnesses import OrbifoldWitness, specialize_parameter
from mfcas.adjunction import QuantumDimensions, qdim
from mfcas.algebra import (
    RATIONALS,
    MultiPoly,
    WeightedRing,
    field_hom,
    make_cyclotomic,
    rational,
    root_of_unity,
)
from mfcas.exceptions import InterfaceMismatch, UnsupportedShape
from mfcas.log import get_logger
from mfcas.mfcore import MatrixFactorization, external_tensor, mf_make

logger = get_logger(__name__)


@dataclass
class KnorrerReport:
    name: str
    factor: QuantumDimensions = None
    witness: QuantumDimensions = None
    total: QuantumDimensions = None
    sign: int = None
    messages: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.sign is not None
            and bool(self.total.left)
            and bool(self.total.right)
        )

    def to_dict(self) -> dict:
        def pair(q):
            return None if q is None else [str(q.left), str(q.right)]

        return {
            "name": self.name,
            "factor": pair(self.factor),
            "witness": pair(self.witness),
            "total": pair(self.total),
            "sign": self.sign,
            "messages": list(self.messages),
            "passed": self.passed,
        }


def imaginary_unit(field):
    """A square root of -1 in a cyclotomic field of order divisible by 4 or a tower over Q(zeta4)."""
    order = getattr(field, "cyclotomic_order", None)
    if order and order % 4 == 0:
        return root_of_unity(field, order // 4)
    return field.convert(root_of_unity(make_cyclotomic(4), 1))


def koszul_factor(names=("p", "q"), field=None) -> MatrixFactorization:
    """(p + i q, p - i q) as a graded factorization of p^2 + q^2."""
    field = field or make_cyclotomic(4)
    i = imaginary_unit(field)
    ring = WeightedRing([(n, rational(1)) for n in names], field)
    p, q = ring.gens()
    return mf_make(
        [[p + q * i]],
        [[p - q * i]],
        p**2 + q**2,
        ring.zero(),
        grading=([0], [0]),
        ring=ring,
        left=tuple(names),
        right=(),
        internal=(),
        name="K",
    )


def _square_sum_names(U: MultiPoly) -> tuple:
    names = tuple(U.variables_used())
    if len(names) != 2:
        raise UnsupportedShape(f"{U} is not a sum of two squares of fresh variables")
    expected = {}
    for n in names:
        e = [0] * U.ring.nvars
        e[U.ring.index(n)] = 2
        expected[tuple(e)] = 1
    if set(U.terms) != set(expected) or any(c != 1 for c in U.terms.values()):
        raise UnsupportedShape(f"{U} is not of the form p^2 + q^2")
    return names


def _with_i(w: OrbifoldWitness) -> MatrixFactorization:
    """The witness over a cyclotomic field containing i."""
    if w.field is RATIONALS:
        return w.X.with_field(make_cyclotomic(4))
    n = math.lcm(w.cft_order, 4)
    K = make_cyclotomic(n)
    t = field_hom(w.cft_value, K, root_of_unity(K, n // w.cft_order))
    return specialize_parameter(w.X, K, t)


def _common_sign(found: QuantumDimensions, product: QuantumDimensions):
    for sign in (1, -1):
        if found.left == sign * product.left and found.right == sign * product.right:
            return sign
    return None


def _parse_sum(text: str) -> MultiPoly:
    names = sorted(set(re.findall(r"[A-Za-z_]\w*", text)))
    return WeightedRing([(n, rational(1)) for n in names]).parse(text)


def knorrer_sum(w: OrbifoldWitness | MatrixFactorization, U=None) -> KnorrerReport:
    """
    Tensors a witness with the Koszul factorization of U = p^2 + q^2 and
    checks that the quantum dimensions of the sum are those of the witness
    times those of the factor, up to one common sign. E witnesses are taken
    at their fixed parameter value.

    Raises:
        UnsupportedShape: when U is neither 0 nor p^2 + q^2.
        InterfaceMismatch: when p or q is a variable of the witness.
    """
    X = _with_i(w) if isinstance(w, OrbifoldWitness) else w
    if X.field is RATIONALS:
        X = X.with_field(make_cyclotomic(4))
    report = KnorrerReport(X.name)
    report.witness = qdim(X)

    if isinstance(U, str):
        U = _parse_sum(U)
    if U is None or not U:
        report.total = report.witness
        report.sign = 1
        return report

    names = _square_sum_names(U)
    clash = set(names) & set(X.ring.names)
    if clash:
        raise InterfaceMismatch(f"variables {sorted(clash)} already occur in {X.name}")

    K = koszul_factor(names, X.field)
    total = external_tensor(X, K)
    report.name = total.name
    report.factor = qdim(K)
    report.total = qdim(total)
    product = QuantumDimensions(
        report.witness.left * report.factor.left,
        report.witness.right * report.factor.right,
    )
    report.sign = _common_sign(report.total, product)
    if report.sign is None:
        report.messages.append(
            f"qdims ({report.total.left}, {report.total.right}) are not "
            f"+-({product.left}, {product.right})"
        )
    logger.info(f"{report.name}: {'passed' if report.passed else 'failed'}")
    return report

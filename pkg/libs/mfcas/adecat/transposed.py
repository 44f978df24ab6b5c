"""
Orbifold equivalences involving the transpose W^T = x^d y + y^2 of the D
potential, over Q(i, a) with a^d = -2i.

    X_A:  W = x^d y + y^2,   V = u^2d + v^2  (the A_(2d-1) potential)
    X_D:  W = u^d + v^2 u,   V = x^d y + y^2
"""
from __future__ import annotations

from mfcas.adecat.witnesses import WitnessReport, _check_factorization
from mfcas.adjunction import QuantumDimensions, qdim
from mfcas.algebra import (
    NumberField,
    WeightedRing,
    adjugate,
    make_cyclotomic,
    rational,
    root_of_unity,
)
from mfcas.exceptions import MfcasError
from mfcas.jacobi import central_charge
from mfcas.log import get_logger
from mfcas.mfcore import MatrixFactorization, mf_make

logger = get_logger(__name__)


def transpose_field(d: int) -> NumberField:
    """Q(zeta4)(a) with a^d = -2i. The modulus need not be irreducible."""
    return NumberField.from_string("a", f"a^{d} + 2*zeta4", base=make_cyclotomic(4))


def a_witness(d: int) -> tuple:
    """
    d1 = [[x - a u, -(y - i u^d - v)], [y - i u^d + v, y (x^d - (a u)^d) / (x - a u)]]

    Returns:
        (X, printed quantum dimensions (-a, -1/a)).
    """
    K = transpose_field(d)
    a = K.gen
    i = K.convert(root_of_unity(make_cyclotomic(4), 1))
    ring = WeightedRing(
        [("x", rational(1) / d), ("y", 1), ("u", rational(1) / d), ("v", 1)], K
    )
    x, y, u, v = ring.gens()
    d1 = [
        [x - u * a, -(y - u**d * i - v)],
        [y - u**d * i + v, y * (x**d - u**d * a**d).exact_div(x - u * a)],
    ]
    shift = rational(1) / d - 1
    X = mf_make(
        d1,
        adjugate(d1),
        x**d * y + y**2,
        u ** (2 * d) + v**2,
        grading=([0, shift], [shift, 0]),
        ring=ring,
        left=("x", "y"),
        right=("u", "v"),
        internal=(),
        name=f"X_A{2 * d - 1}^T",
    )
    return X, QuantumDimensions(-a, -a.inverse())


def d_witness_transposed(d: int) -> tuple:
    """
    d1 = [[(u^d - (x^2/a^2)^d) / (u - x^2/a^2) + v^2,  -(y + x^d/2 - x v/a)],
          [-(y + x^d/2 + x v/a),                       u - x^2/a^2]]

    Returns:
        (X, printed quantum dimensions (-2/a, -a)).
    """
    K = transpose_field(d)
    a = K.gen
    b = a.inverse()
    ring = WeightedRing(
        [
            ("u", rational(2) / d),
            ("v", 1 - rational(1) / d),
            ("x", rational(1) / d),
            ("y", 1),
        ],
        K,
    )
    u, v, x, y = ring.gens()
    half = rational("1/2")
    corner = u - x**2 * b**2
    d1 = [
        [(u**d - x ** (2 * d) * b ** (2 * d)).exact_div(corner) + v**2, -(y + x**d * half - x * v * b)],
        [-(y + x**d * half + x * v * b), corner],
    ]
    shift = 1 - rational(2) / d
    X = mf_make(
        d1,
        adjugate(d1),
        u**d + v**2 * u,
        x**d * y + y**2,
        grading=([0, shift], [shift, 0]),
        ring=ring,
        left=("u", "v"),
        right=("x", "y"),
        internal=(),
        name=f"X_D{d + 1}^T",
    )
    return X, QuantumDimensions(-2 * b, -a)


def _common_sign(found: QuantumDimensions, printed: QuantumDimensions):
    if found.left == printed.left and found.right == printed.right:
        return 1
    if found.left == -printed.left and found.right == -printed.right:
        return -1
    return None


def _verify(X: MatrixFactorization, printed: QuantumDimensions, name: str) -> WitnessReport:
    report = WitnessReport(name)
    try:
        report.necessary = central_charge(X.W) == central_charge(X.V)
        _check_factorization(X, report)
        found = qdim(X)
    except MfcasError as e:
        report.messages.append(f"{type(e).__name__}: {e}")
        return report

    sign = _common_sign(found, printed)
    report.qdims = sign is not None
    report.nonvanishing = bool(found.left) and bool(found.right)
    report.values = {
        "qdim_l": str(found.left),
        "qdim_r": str(found.right),
        "sign": sign,
    }
    if sign is None:
        report.messages.append(
            f"qdims ({found.left}, {found.right}) differ from "
            f"+-({printed.left}, {printed.right})"
        )
    return report


def dtranspose_witnesses(d: int) -> list:
    """
    Validates both factorizations for x^d y + y^2 and compares their
    quantum dimensions with (-a, -1/a) and (-2/a, -a). The comparison allows
    one common sign, which is that of the shift X[1]; it is recorded under
    ``values["sign"]``.
    """
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    reports = []
    for build, label in ((a_witness, f"A{2 * d - 1}~D{d + 1}^T"), (d_witness_transposed, f"D{d + 1}~D{d + 1}^T")):
        X, printed = build(d)
        report = _verify(X, printed, label)
        logger.info(f"{label}: {'passed' if report.passed else 'failed'}")
        reports.append(report)
    return reports

"""
Explicit embeddings for the fusion of graded permutation factorizations.

For A = P_{a:1}(x, y) and B = P_{b:mu}(y, z) the tensor product A (x) B
splits as P_{a+b+1:mu-1} + P_{a+b:mu+1}. The two embeddings g- and g+ are
written down in closed form here; their remaining components are exact
quotients by p1 = (x - eta^a y)(x - eta^(a+1) y).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from mfcas.exceptions import NotDivisible, NotHomogeneous
from mfcas.log import get_logger
from mfcas.mfcore import (
    c_degree,
    direct_sum,
    from_blocks,
    is_closed,
    mf_tensor,
    permutation_interval_mf,
)
from mfcas.mfcore.factorization import _root_of_order
from mfcas.homotopy.homology import is_iso_H

logger = get_logger(__name__)


@dataclass
class FusionReport:
    d: int
    a: int
    b: int
    mu: int
    closed: bool = False
    degree_zero: bool = False
    iso: bool = False
    errors: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.closed and self.degree_zero and self.iso and not self.errors

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "a": self.a,
            "b": self.b,
            "mu": self.mu,
            "closed": self.closed,
            "degree_zero": self.degree_zero,
            "iso": self.iso,
            "errors": list(self.errors),
            "passed": self.passed,
        }


def fusion_decomposition(d: int, a: int, lam: int, b: int, mu: int) -> list[tuple]:
    """
    The summands (m, nu) of P_{a:lam} (x) P_{b:mu} = sum P_{m:nu}, with nu
    running from |lam - mu| to min(lam + mu, 2d - 4 - lam - mu) in steps of
    two and m = a + b + (lam + mu - nu) / 2 modulo d.
    """
    for v in (lam, mu):
        if not 0 <= v <= d - 2:
            raise ValueError(f"labels must lie in [0, {d - 2}], got {v}")
    top = min(lam + mu, 2 * d - 4 - lam - mu)
    return [
        ((a + b + (lam + mu - nu) // 2) % d, nu)
        for nu in range(abs(lam - mu), top + 1, 2)
    ]


def _quotient(numerator, p1, what: str):
    try:
        return numerator.exact_div(p1)
    except NotDivisible as e:
        raise NotDivisible(f"{what}: numerator is not divisible by p1") from e


def fusion_witness(d: int, a: int, b: int, mu: int):
    """
    Builds g-: P_{a+b+1:mu-1}(x, z) -> A (x) B and g+: P_{a+b:mu+1}(x, z) ->
    A (x) B and checks that they are closed, of C-degree zero, and jointly an
    isomorphism on homology.

    Returns:
        (g_minus, g_plus, FusionReport)

    Raises:
        NotDivisible: when one of the defining quotients is not a polynomial.
    """
    if d < 3 or not 1 <= mu <= d - 2:
        raise ValueError(f"need d >= 3 and 1 <= mu <= d - 2, got d={d}, mu={mu}")

    A = permutation_interval_mf(d, a, 1, graded=True, variables=("x", "y"))
    B = permutation_interval_mf(
        d, b, mu, graded=True, variables=("y", "z"), field=A.field
    )
    T = mf_tensor(A, B)
    Qm = permutation_interval_mf(
        d, a + b + 1, mu - 1, graded=True, variables=("x", "z"), field=A.field
    )
    Qp = permutation_interval_mf(
        d, a + b, mu + 1, graded=True, variables=("x", "z"), field=A.field
    )

    ring = T.ring
    eta = _root_of_order(A.field, d)
    x, y, z = ring.var("x"), ring.var("y"), ring.var("z")
    one = ring.one()

    p1, p1_bar = ring(A.d1[0, 0]), ring(A.d0[0, 0])
    pmu, pmu_bar = ring(B.d1[0, 0]), ring(B.d0[0, 0])
    qm, qm_bar = ring(Qm.d1[0, 0]), ring(Qm.d0[0, 0])
    qp, qp_bar = ring(Qp.d1[0, 0]), ring(Qp.d0[0, 0])

    inv = eta**-1
    gm00 = (
        x * (-(inv ** (a + 1)) * (1 - inv**mu) / (1 - inv))
        + y * ((1 - inv ** (mu + 1)) / (1 - inv))
        - z * eta**b
    ) * inv ** (a * mu)
    gm01 = one
    gm10 = _quotient(qm * gm00 - pmu, p1, "g-10")
    gm11 = _quotient(qm_bar - pmu_bar * gm00, p1, "g-11")

    gp00 = one
    gp01 = (
        x * ((1 - eta ** (mu + 2)) / (1 - eta))
        - y * (eta ** (a + 1) * (1 - eta ** (mu + 1)) / (1 - eta))
        - z * eta ** (a + b + mu + 1)
    ) * eta ** (a * (mu + 1))
    gp10 = _quotient(qp - pmu * gp01, p1, "g+10")
    gp11 = _quotient(qp_bar * gp01 - pmu_bar, p1, "g+11")

    # T has basis (A0B0, A1B1 | A1B0, A0B1)
    g_minus = from_blocks(Qm, T, [[gm00], [gm11]], [[gm10], [gm01]], 0, "g-")
    g_plus = from_blocks(Qp, T, [[gp00], [gp11]], [[gp10], [gp01]], 0, "g+")

    report = FusionReport(d, a % d, b % d, mu)
    report.closed = is_closed(g_minus) and is_closed(g_plus)
    try:
        report.degree_zero = all(c_degree(g) in (0, None) for g in (g_minus, g_plus))
    except NotHomogeneous as e:
        report.errors.append(str(e))
    if report.closed:
        Q = direct_sum(Qm, Qp)
        combined = from_blocks(
            Q,
            T,
            [[gm00, gp00], [gm11, gp11]],
            [[gm10, gp10], [gm01, gp01]],
            0,
            "g",
        )
        report.iso = is_iso_H(combined)
    else:
        report.errors.append("embeddings are not closed")
    logger.debug(f"fusion witness d={d} a={a} b={b} mu={mu}: {report.to_dict()}")
    return g_minus, g_plus, report

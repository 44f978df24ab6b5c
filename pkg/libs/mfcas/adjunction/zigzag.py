"""
Verification of the duality data: the two zig-zag identities, the pairing
u o n = kappa for T = P_{(d-1)/2:1}, and Z_d-equivariance of u and n.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from mfcas.algebra import field_hom, make_cyclotomic, root_of_unity
from mfcas.exceptions import MfcasError, NotHomogeneous
from mfcas.homotopy import homotopic
from mfcas.log import get_logger
from mfcas.mfcore import (
    MatrixFactorization,
    MFMorphism,
    associator,
    associator_inverse,
    c_degree,
    compose,
    compose_all,
    equivariant_structure,
    identity,
    is_closed,
    materialize,
    permutation_interval_mf,
    permutation_mf,
    probe_vectors,
    scaling_operator,
    tensor,
    unit_morphisms,
)
from mfcas.mfcore.operators import add_polys
from mfcas.adjunction.evaluation import (
    coevaluation,
    dual_on,
    ev_coev,
    evaluation,
    on,
)
from mfcas.adjunction.units import unit_inverses

logger = get_logger(__name__)


@dataclass
class ZigzagReport:
    name: str
    first: bool = False
    second: bool = False
    errors: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.first and self.second and not self.errors

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "first": self.first,
            "second": self.second,
            "errors": list(self.errors),
            "passed": self.passed,
        }


def first_snake(M: MatrixFactorization, sign: int = 1) -> MFMorphism:
    """rho (id (x) ev) assoc (coev (x) id) lambda^-1: M -> M, materialized."""
    (a,), (b,) = M.left, M.right
    _, rho = unit_morphisms(M)
    lam_inv, _ = unit_inverses(M)
    (at,) = lam_inv.target.tags["tensor"][1].left
    (bt,) = rho.source.tags["tensor"][0].right

    coev = coevaluation(M, (a, bt, at))
    ev = evaluation(M, (bt, at, b), sign)
    return materialize(
        compose_all(
            rho,
            tensor(identity(on(M, a, bt)), ev),
            associator(on(M, a, bt), dual_on(M, bt, at), on(M, at, b)),
            tensor(coev, identity(on(M, at, b))),
            lam_inv,
        ),
        f"snake1_{M.name}",
    )


def second_snake(M: MatrixFactorization, sign: int = 1) -> MFMorphism:
    """lambda (ev (x) id) assoc^-1 (id (x) coev) rho^-1 on M+, materialized."""
    (a,), (b,) = M.left, M.right
    D = dual_on(M, a, b)
    lam, _ = unit_morphisms(D)
    _, rho_inv = unit_inverses(D)
    (at,) = lam.source.tags["tensor"][1].left
    (bt,) = rho_inv.target.tags["tensor"][0].right

    coev = coevaluation(M, (bt, at, b))
    ev = evaluation(M, (a, bt, at), sign)
    return materialize(
        compose_all(
            lam,
            tensor(ev, identity(dual_on(M, at, b))),
            associator_inverse(dual_on(M, a, bt), on(M, bt, at), dual_on(M, at, b)),
            tensor(identity(dual_on(M, a, bt)), coev),
            rho_inv,
        ),
        f"snake2_{M.name}+",
    )


def check_zigzag(M: MatrixFactorization, negative_control: bool = False) -> ZigzagReport:
    """
    Checks that both snake composites of ev_M and coev_M are homotopic to the
    identities of M and M+. With ``negative_control`` the A block of ev is
    negated and the report is expected to fail.
    """
    sign = -1 if negative_control else 1
    report = ZigzagReport(M.name + (" (flipped ev)" if negative_control else ""))
    try:
        snake = first_snake(M, sign)
        report.first = homotopic(snake, identity(snake.source))
        snake = second_snake(M, sign)
        report.second = homotopic(snake, identity(snake.source))
    except MfcasError as e:
        report.errors.append(f"{type(e).__name__}: {e}")
    logger.debug(f"zig-zag {report.to_dict()}")
    return report


#
# equivariance
#
def equivariant_scalars(P: MatrixFactorization, a: int) -> list:
    """The diagonal of tau_{S;a} for a permutation factorization P_S."""
    tau = equivariant_structure(P, a)
    return [tau.matrix[i, i].constant_term() for i in range(P.rank)]


def tensor_scalars(X: MatrixFactorization, left: list, right: list) -> list:
    """tau (x) tau on a tensor product, one scalar per basis pair."""
    return [left[p] * right[q] for p, q in X.tags["tensor"][2]]


def _differ(p, q) -> bool:
    return bool(add_polys(p, -q))


def is_equivariant(f: MFMorphism, tau_source, tau_target, d: int, a: int, bound: int = 3) -> bool:
    """
    tau_N f = _a(f)_{-a} tau_M, with _a(f)_{-a} = Sub_a f Sub_a^-1 and Sub_a
    scaling every variable by zeta_d^a, checked on probe vectors up to
    ``bound``.
    """
    field = f.ring.field
    sub = scaling_operator(field, d, a)
    sub_inv = scaling_operator(field, d, -a)
    for j, v in probe_vectors(f.source, bound):
        lhs = [p * c for p, c in zip(f.apply(v), tau_target)]
        moved = [sub_inv(p * c) for p, c in zip(v, tau_source)]
        rhs = [sub(p) for p in f.apply(moved)]
        if any(_differ(p, q) for p, q in zip(lhs, rhs)):
            logger.debug(f"{f.name} is not equivariant for a={a} on basis element {j}")
            return False
    return True


@dataclass
class UnPairReport:
    d: int
    kappa: object = None
    kappa_expected: bool = False
    closed: bool = False
    degree_zero: bool = False
    equivariant: dict = dc_field(default_factory=dict)
    errors: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.kappa_expected
            and self.closed
            and self.degree_zero
            and all(self.equivariant.values())
            and not self.errors
        )

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "kappa": str(self.kappa),
            "kappa_expected": self.kappa_expected,
            "closed": self.closed,
            "degree_zero": self.degree_zero,
            "equivariant": {str(a): v for a, v in self.equivariant.items()},
            "errors": list(self.errors),
            "passed": self.passed,
        }


def un_pair(d: int):
    """
    The self-duality pair of T = P_{(d-1)/2:1}, d odd: u = ev_T (t (x) id) and
    n = (id (x) t^-1) coev_T, with u_0 n_0 = kappa = -(zeta_2d^(d-1) + zeta_2d^(d+1)).

    Returns:
        (u, n, kappa in Q(zeta_2d), UnPairReport)
    """
    if d < 3 or d % 2 == 0:
        raise ValueError(f"u and n are defined for odd d >= 3, got {d}")
    T = permutation_interval_mf(d, (d - 1) // 2, 1, graded=True)
    data = ev_coev(T)
    u, n = data.u, data.n
    report = UnPairReport(d)

    entry = materialize(compose(u, n)).f0[0, 0]
    if not entry.is_constant():
        report.errors.append(f"u_0 n_0 is not a scalar: {entry}")
    big = make_cyclotomic(2 * d)
    kappa = field_hom(entry.constant_term(), big, root_of_unity(big, 2))
    report.kappa = kappa
    report.kappa_expected = kappa == -(root_of_unity(big, d - 1) + root_of_unity(big, d + 1))

    report.closed = is_closed(u) and is_closed(n)
    try:
        report.degree_zero = all(c_degree(g) in (0, None) for g in (u, n))
    except NotHomogeneous as e:
        report.errors.append(str(e))

    I = permutation_mf(d, [0], field=T.field)
    for a in range(d):
        tau_T = equivariant_scalars(T, a)
        tau_I = equivariant_scalars(I, a)
        report.equivariant[a] = is_equivariant(
            u, tensor_scalars(u.source, tau_T, tau_T), tau_I, d, a
        ) and is_equivariant(n, tau_I, tensor_scalars(n.target, tau_T, tau_T), d, a)
    logger.info(f"u/n pair for d={d}: kappa = {kappa}, passed={report.passed}")
    return u, n, kappa, report

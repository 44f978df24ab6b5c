"""
Wenzl-Jones projectors and their verification.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from mfcas.exceptions import UndefinedProjector
from mfcas.log import get_logger
from mfcas.templieb.diagrams import (
    TLMorphism,
    generator,
    identity,
    markov_trace,
    tl_compose,
    tl_tensor,
)
from mfcas.templieb.quantum import context, quantum_int

logger = get_logger(__name__)


def wenzl_sequence(n: int, at: int = None) -> list:
    """
    [p_1, ..., p_n] by p_1 = id and

        p_(k+1) = p_k (x) id - ([k] / [k+1]) (p_k (x) id) e_k (p_k (x) id).

    Raises:
        UndefinedProjector: when [k+1] vanishes at q = zeta_2d.
    """
    if n < 1:
        raise ValueError(f"projectors are indexed from 1, got {n}")
    ctx = context(at)
    one = identity(1, ctx)
    out = [identity(1, ctx)]
    for k in range(1, n):
        denominator = quantum_int(k + 1, at).value
        if not denominator:
            raise UndefinedProjector(
                f"p_{k + 1} needs 1/[{k + 1}], which vanishes at q = zeta{2 * at}",
                index=k + 1,
            )
        p = tl_tensor(out[-1], one)
        middle = tl_compose(tl_compose(p, generator(k + 1, k, ctx)), p)
        ratio = quantum_int(k, at).value / denominator
        out.append(p - middle.scale(ratio))
    return out


def wenzl(n: int, at: int = None) -> TLMorphism:
    """The Wenzl-Jones projector p_n in TL_n, generic or at q = zeta_2d."""
    return wenzl_sequence(n, at)[-1]


@dataclass
class WenzlReport:
    n: int
    idempotent: bool = False
    annihilated: bool = False
    nonzero: bool = False
    trace: bool = False
    messages: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.idempotent and self.annihilated and self.nonzero and self.trace

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "idempotent": self.idempotent,
            "annihilated": self.annihilated,
            "nonzero": self.nonzero,
            "trace": self.trace,
            "messages": list(self.messages),
            "passed": self.passed,
        }


def wenzl_verify(n: int, at: int = None) -> WenzlReport:
    """
    Checks p_n p_n = p_n, p_n e_i = e_i p_n = 0, p_n != 0 and
    trace(p_n) = [n+1].
    """
    report = WenzlReport(n)
    try:
        p = wenzl(n, at)
    except UndefinedProjector as e:
        report.messages.append(str(e))
        return report

    report.nonzero = bool(p)
    report.idempotent = tl_compose(p, p) == p
    report.annihilated = True
    for i in range(1, n):
        e = generator(n, i, p.ctx)
        if tl_compose(p, e) or tl_compose(e, p):
            report.annihilated = False
            report.messages.append(f"p_{n} is not annihilated by e_{i}")
    expected = quantum_int(n + 1, at).value
    value = markov_trace(p)
    report.trace = value == expected
    if not report.trace:
        report.messages.append(f"trace(p_{n}) = {value}, expected {expected}")
    logger.debug(f"p_{n} over {p.ctx.name}: {report.to_dict()}")
    return report


@dataclass
class RelationsReport:
    n: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"n": self.n, "failures": list(self.failures), "passed": self.passed}


def check_relations(n: int, at: int = None) -> RelationsReport:
    """
    e_i e_i = kappa e_i, e_i e_(i+-1) e_i = e_i and e_i e_j = e_j e_i for
    |i - j| > 1, over all generators of TL_n.
    """
    ctx = context(at)
    report = RelationsReport(n)
    gens = {i: generator(n, i, ctx) for i in range(1, n)}
    for i, e in gens.items():
        if tl_compose(e, e) != e.scale(ctx.kappa):
            report.failures.append(f"e{i}e{i} != kappa e{i}")
        for j, f in gens.items():
            if abs(i - j) == 1 and tl_compose(tl_compose(e, f), e) != e:
                report.failures.append(f"e{i}e{j}e{i} != e{i}")
            if abs(i - j) > 1 and tl_compose(e, f) != tl_compose(f, e):
                report.failures.append(f"e{i}e{j} != e{j}e{i}")
    return report

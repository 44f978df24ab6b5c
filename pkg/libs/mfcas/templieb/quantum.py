"""
Coefficient fields for Temperley-Lieb calculus and quantum integers.

The generic parameter field is sympy's rational function field Q(q). At
q = zeta_2d the coefficients live in the cyclotomic field Q(zeta_2d).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from sympy.polys.domains import QQ
from sympy.polys.fields import field as fraction_field

from mfcas.algebra import make_cyclotomic, root_of_unity
from mfcas.exceptions import NotInvertible


@dataclass(frozen=True)
class TLContext:
    """
    Where the coefficients of Temperley-Lieb morphisms live: the value of q,
    its field and the loop value kappa = q + q^-1. ``d`` is set for the
    specialization q = zeta_2d.
    """

    name: str
    q: object
    one: object
    zero: object
    d: int = None

    @property
    def kappa(self):
        return self.q + self.q ** (-1)

    def convert(self, value):
        return self.one * value

    def __repr__(self):
        return f"TLContext({self.name})"


@lru_cache(maxsize=None)
def generic_context() -> TLContext:
    """Q(q) with q transcendental."""
    K, q = fraction_field("q", QQ)
    return TLContext("Q(q)", q, K(1), K(0))


@lru_cache(maxsize=None)
def root_of_unity_context(d: int) -> TLContext:
    """Q(zeta_2d) with q = zeta_2d."""
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    K = make_cyclotomic(2 * d)
    return TLContext(f"Q(zeta{2 * d})", root_of_unity(K, 1), K.one, K.zero, d)


def context(at: int = None) -> TLContext:
    return generic_context() if at is None else root_of_unity_context(at)


@dataclass(frozen=True)
class QuantumInteger:
    l: int
    value: object

    def __str__(self):
        return f"[{self.l}] = {self.value}"


def quantum_int(l: int, at: int = None) -> QuantumInteger:
    """
    [l] = (q^l - q^-l) / (q - q^-1) = q^(l-1) + q^(l-3) + ... + q^(1-l).

    Args:
        l: a non-negative integer.
        at: evaluate at q = zeta_2d instead of the generic q.
    """
    if l < 0:
        raise ValueError(f"quantum integers are defined for l >= 0, got {l}")
    ctx = context(at)
    value = ctx.zero
    for j in range(l):
        value = value + ctx.q ** (l - 1 - 2 * j)
    return QuantumInteger(l, value)


def specialize_scalar(value, d: int):
    """
    Evaluates an element of Q(q) at q = zeta_2d.

    Raises:
        NotInvertible: when the denominator vanishes at zeta_2d.
    """
    ctx = root_of_unity_context(d)

    def evaluate(poly):
        acc = ctx.zero
        for (k,), c in poly.terms():
            acc = acc + ctx.q**k * c
        return acc

    numerator, denominator = evaluate(value.numer), evaluate(value.denom)
    if not denominator:
        raise NotInvertible(f"the denominator of {value} vanishes at q = zeta{2 * d}")
    return numerator / denominator

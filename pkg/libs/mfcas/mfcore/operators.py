"""
Linear operators on polynomials used as morphism entries.

An entry of a morphism is either a MultiPoly (multiplication by it) or an
Operator. Operators are ring-agnostic: they take a polynomial in whatever ring
it lives in and return a polynomial in a ring containing both that ring and
the operator's own data. Morphisms move results into their target ring at the
end.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Callable, Mapping

from mfcas.algebra import FieldElement, MultiPoly, WeightedRing
from mfcas.exceptions import RingMismatch


@lru_cache(maxsize=None)
def common_ring(r1: WeightedRing, r2: WeightedRing) -> WeightedRing:
    """
    The smallest ring containing the variables of both rings, over the larger
    of the two fields. Weights of shared variables are taken from r1.
    """
    if r1 == r2:
        return r1
    if r1.field.has_subfield(r2.field):
        field = r1.field
    elif r2.field.has_subfield(r1.field):
        field = r2.field
    else:
        raise RingMismatch(f"no common field for {r1.field!r} and {r2.field!r}")
    variables = list(r1.variables)
    variables += [(n, w) for n, w in r2.variables if n not in r1]
    return WeightedRing(variables, field)


def lift(p: MultiPoly, ring: WeightedRing) -> MultiPoly:
    """Embeds p into common_ring(p.ring, ring)."""
    return p.to_ring(common_ring(p.ring, ring))


def multiply(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    ring = common_ring(p.ring, q.ring)
    return p.to_ring(ring) * q.to_ring(ring)


def scalar_multiply(p: MultiPoly, c) -> MultiPoly:
    if isinstance(c, FieldElement) and not p.ring.field.has_subfield(c.field):
        p = p.to_ring(p.ring.with_field(c.field))
    return p * c


class Operator:
    """A linear map on polynomials."""

    name = "op"

    def apply(self, p: MultiPoly) -> MultiPoly:
        raise NotImplementedError

    def __call__(self, p: MultiPoly) -> MultiPoly:
        if not p:
            return p
        return self.apply(p)

    def __repr__(self):
        return f"{type(self).__name__}({self.name})"


class Mul(Operator):
    """Multiplication by a polynomial or a scalar."""

    def __init__(self, factor):
        self.factor = factor
        self.name = str(factor)

    def apply(self, p):
        if isinstance(self.factor, MultiPoly):
            return multiply(p, self.factor)
        return scalar_multiply(p, self.factor)


class Subst(Operator):
    """Substitutes variables by polynomials, e.g. {"y": x} for p(x, y) -> p(x, x)."""

    def __init__(self, mapping: Mapping):
        self.mapping = dict(mapping)
        self.name = ", ".join(f"{k}->{v}" for k, v in self.mapping.items())

    def apply(self, p):
        ring = p.ring
        for v in self.mapping.values():
            if isinstance(v, MultiPoly):
                ring = common_ring(ring, v.ring)
        mapping = {k: v for k, v in self.mapping.items() if k in p.ring}
        return p.subs(mapping, ring)


class ScaleAll(Operator):
    """p(x_1, ..., x_n) -> p(c x_1, ..., c x_n) over all variables of p."""

    def __init__(self, factor):
        self.factor = factor
        self.name = f"*{factor}"

    def apply(self, p):
        if isinstance(self.factor, FieldElement) and not p.ring.field.has_subfield(
            self.factor.field
        ):
            p = p.to_ring(p.ring.with_field(self.factor.field))
        return p.scale_variables({n: self.factor for n in p.variables_used()})


class Functional(Operator):
    """Wraps an arbitrary linear callable."""

    def __init__(self, func: Callable[[MultiPoly], MultiPoly], name: str = "F"):
        self.func = func
        self.name = name

    def apply(self, p):
        return self.func(p)


class Compose(Operator):
    """outer after inner."""

    def __init__(self, outer: Operator, inner: Operator):
        self.outer = outer
        self.inner = inner
        self.name = f"{outer.name}.{inner.name}"

    def apply(self, p):
        return self.outer(self.inner(p))


class OpSum(Operator):
    def __init__(self, terms):
        self.terms = list(terms)
        self.name = " + ".join(t.name for t in self.terms)

    def apply(self, p):
        result = None
        for t in self.terms:
            value = t(p)
            result = value if result is None else add_polys(result, value)
        return result if result is not None else p.ring.zero()


def add_polys(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    ring = common_ring(p.ring, q.ring)
    return p.to_ring(ring) + q.to_ring(ring)


#
# entry arithmetic
#
def as_operator(entry) -> Operator:
    return entry if isinstance(entry, Operator) else Mul(entry)


def is_zero_entry(entry) -> bool:
    return isinstance(entry, MultiPoly) and not entry


def compose_entries(outer, inner, ring: WeightedRing):
    """The entry of outer after inner; zero entries stay MultiPoly zeros."""
    if is_zero_entry(outer) or is_zero_entry(inner):
        return ring.zero()
    if isinstance(outer, MultiPoly) and isinstance(inner, MultiPoly):
        return multiply(outer, inner).to_ring(ring)
    return Compose(as_operator(outer), as_operator(inner))


def add_entries(a, b, ring: WeightedRing):
    if is_zero_entry(a):
        return b
    if is_zero_entry(b):
        return a
    if isinstance(a, MultiPoly) and isinstance(b, MultiPoly):
        return add_polys(a, b).to_ring(ring)
    terms = []
    for e in (a, b):
        if isinstance(e, OpSum):
            terms.extend(e.terms)
        else:
            terms.append(as_operator(e))
    return OpSum(terms)


def scale_entry(entry, c):
    if isinstance(entry, MultiPoly):
        return scalar_multiply(entry, c)
    if c == 1:
        return entry
    return Compose(Mul(c), entry)


def apply_entry(entry, p: MultiPoly) -> MultiPoly:
    if isinstance(entry, MultiPoly):
        return multiply(entry, p)
    return entry(p)

"""
Temperley-Lieb morphisms as linear combinations of planar pairings.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import comb

from mfcas.exceptions import ArityMismatch, NotPlanar
from mfcas.templieb import kernels
from mfcas.templieb.quantum import TLContext, context, specialize_scalar


@dataclass(frozen=True)
class PlanarPairing:
    """
    A non-crossing perfect matching of n bottom and m top points; see
    ``kernels`` for the numbering of the points.
    """

    n: int
    m: int
    partner: tuple

    def __post_init__(self):
        if not kernels.is_planar(self.array(), self.n, self.m):
            raise NotPlanar(f"{self.partner} is not a planar pairing of {self.n} + {self.m} points")

    def array(self) -> np.ndarray:
        return np.array(self.partner, dtype=np.int64)

    @property
    def cups(self) -> list:
        """Pairs of joined points, each listed once."""
        return [(p, q) for p, q in enumerate(self.partner) if p < q]

    def __str__(self):
        return f"{self.n}->{self.m} {self.cups}"


def identity_pairing(n: int) -> PlanarPairing:
    return PlanarPairing(n, n, tuple(list(range(n, 2 * n)) + list(range(n))))


def generator_pairing(n: int, i: int) -> PlanarPairing:
    """The cup-cap diagram e_i joining strands i and i+1 (1-based)."""
    if not 1 <= i < n:
        raise ValueError(f"e_{i} does not exist in TL_{n}")
    partner = list(range(n, 2 * n)) + list(range(n))
    a, b = i - 1, i
    partner[a], partner[b] = b, a
    partner[n + a], partner[n + b] = n + b, n + a
    return PlanarPairing(n, n, tuple(partner))


class TLMorphism:
    """
    A linear combination of planar pairings n -> m with coefficients in a
    TLContext; zero coefficients are never stored.
    """

    def __init__(self, n: int, m: int, terms: dict, ctx: TLContext = None):
        self.n = n
        self.m = m
        self.ctx = ctx or context()
        self.terms = {}
        for pairing, c in terms.items():
            if (pairing.n, pairing.m) != (n, m):
                raise ArityMismatch(
                    f"diagram {pairing} does not belong to TL({n}, {m})"
                )
            if c != 0:
                self.terms[pairing] = c

    @classmethod
    def from_pairing(cls, pairing: PlanarPairing, ctx: TLContext = None, coefficient=None):
        ctx = ctx or context()
        c = ctx.one if coefficient is None else ctx.convert(coefficient)
        return cls(pairing.n, pairing.m, {pairing: c}, ctx)

    def _check_context(self, other: "TLMorphism"):
        if self.ctx != other.ctx:
            raise ArityMismatch(f"coefficients in {self.ctx} and {other.ctx} do not mix")

    def __add__(self, other: "TLMorphism") -> "TLMorphism":
        self._check_context(other)
        if (self.n, self.m) != (other.n, other.m):
            raise ArityMismatch(
                f"cannot add TL({self.n}, {self.m}) and TL({other.n}, {other.m})"
            )
        terms = dict(self.terms)
        for pairing, c in other.terms.items():
            terms[pairing] = terms[pairing] + c if pairing in terms else c
        return TLMorphism(self.n, self.m, terms, self.ctx)

    def scale(self, c) -> "TLMorphism":
        c = self.ctx.convert(c)
        return TLMorphism(
            self.n, self.m, {p: v * c for p, v in self.terms.items()}, self.ctx
        )

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, TLMorphism):
            return NotImplemented
        return (self.n, self.m) == (other.n, other.m) and not (self - other).terms

    def __hash__(self):
        return hash((self.n, self.m, frozenset(self.terms)))

    def __bool__(self):
        return bool(self.terms)

    def __matmul__(self, other: "TLMorphism") -> "TLMorphism":
        """self o other."""
        return tl_compose(other, self)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c}) {p}" for p, c in sorted(self.terms.items(), key=_order))

    def __repr__(self):
        return f"TLMorphism({self.n} -> {self.m}, {len(self.terms)} diagrams, {self.ctx.name})"


def _order(item):
    return item[0].partner


def identity(n: int, ctx: TLContext = None) -> TLMorphism:
    return TLMorphism.from_pairing(identity_pairing(n), ctx)


def generator(n: int, i: int, ctx: TLContext = None) -> TLMorphism:
    """e_i in TL_n, 1 <= i <= n-1."""
    return TLMorphism.from_pairing(generator_pairing(n, i), ctx)


def compose_diagrams(lower: PlanarPairing, upper: PlanarPairing):
    """
    upper o lower.

    Returns:
        The stacked pairing and the number of closed loops.
    """
    if lower.m != upper.n:
        raise ArityMismatch(
            f"cannot stack a {upper.n}->{upper.m} diagram on a {lower.n}->{lower.m} diagram"
        )
    out, loops = kernels.compose_pairings(
        lower.array(), lower.n, lower.m, upper.array(), upper.m
    )
    return PlanarPairing(lower.n, upper.m, tuple(int(v) for v in out)), int(loops)


def tl_compose(f: TLMorphism, g: TLMorphism) -> TLMorphism:
    """
    g o f for f: n -> m and g: m -> k; every closed loop becomes a factor
    kappa.

    Raises:
        ArityMismatch: when f.m != g.n.
    """
    if f.m != g.n:
        raise ArityMismatch(f"cannot compose TL({f.n}, {f.m}) with TL({g.n}, {g.m})")
    f._check_context(g)
    ctx = f.ctx
    kappa = ctx.kappa
    terms = {}
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            pairing, loops = compose_diagrams(a, b)
            value = ca * cb * kappa**loops
            terms[pairing] = terms[pairing] + value if pairing in terms else value
    return TLMorphism(f.n, g.m, terms, ctx)


def tl_tensor(f: TLMorphism, g: TLMorphism) -> TLMorphism:
    """f placed to the left of g."""
    f._check_context(g)
    terms = {}
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            out = kernels.tensor_pairings(a.array(), a.n, a.m, b.array(), b.n, b.m)
            pairing = PlanarPairing(a.n + b.n, a.m + b.m, tuple(int(v) for v in out))
            terms[pairing] = terms[pairing] + ca * cb if pairing in terms else ca * cb
    return TLMorphism(f.n + g.n, f.m + g.m, terms, f.ctx)


def markov_trace(f: TLMorphism):
    """
    Closes every diagram of an endomorphism on the right and sums
    coefficient * kappa^(number of loops).
    """
    if f.n != f.m:
        raise ArityMismatch(f"the trace needs an endomorphism, got TL({f.n}, {f.m})")
    kappa = f.ctx.kappa
    value = f.ctx.zero
    for pairing, c in f.terms.items():
        value = value + c * kappa ** int(kernels.closure_loops(pairing.array(), f.n))
    return value


def specialize(f: TLMorphism, d: int) -> TLMorphism:
    """Maps a generic morphism over Q(q) to q = zeta_2d."""
    if f.ctx.d is not None:
        raise ValueError(f"{f!r} is already specialized")
    ctx = context(d)
    return TLMorphism(
        f.n, f.m, {p: specialize_scalar(c, d) for p, c in f.terms.items()}, ctx
    )


#
# enumeration
#
@lru_cache(maxsize=None)
def _matchings(size: int) -> tuple:
    """Non-crossing perfect matchings of positions 0..size-1 as pair tuples."""
    if size == 0:
        return ((),)
    out = []
    for k in range(1, size, 2):
        for inner in _matchings(k - 1):
            for outer in _matchings(size - k - 1):
                pairs = ((0, k),)
                pairs += tuple((a + 1, b + 1) for a, b in inner)
                pairs += tuple((a + k + 1, b + k + 1) for a, b in outer)
                out.append(pairs)
    return tuple(out)


def enumerate_pairings(n: int, m: int) -> list:
    """All planar pairings n -> m, sorted by partner tuple."""
    size = n + m
    if size % 2:
        return []
    point = [p if p < n else n + m - 1 - (p - n) for p in range(size)]
    out = []
    for pairs in _matchings(size):
        partner = [0] * size
        for a, b in pairs:
            partner[point[a]], partner[point[b]] = point[b], point[a]
        out.append(PlanarPairing(n, m, tuple(partner)))
    return sorted(out, key=lambda p: p.partner)


def catalan(n: int) -> int:
    return comb(2 * n, n, exact=True) // (n + 1)


def diagram_words(n: int) -> dict:
    """
    A reduced word in the generators for every diagram of TL_n: the first
    word found by breadth-first search over e_i1 ... e_ik with generators
    added in increasing order. The empty word is the identity.
    """
    start = identity_pairing(n)
    words = {start: ()}
    frontier = [start]
    gens = [generator_pairing(n, i) for i in range(1, n)]
    while frontier:
        following = []
        for pairing in frontier:
            for i, e in enumerate(gens, start=1):
                product, loops = compose_diagrams(e, pairing)
                if loops or product in words:
                    continue
                words[product] = words[pairing] + (i,)
                following.append(product)
        frontier = following
    return words


def format_word(word) -> str:
    return "".join(f"e{i}" for i in word) if word else "1"


def in_words(f: TLMorphism) -> list:
    """
    (word, coefficient) pairs of an endomorphism, shortest words first and
    lexicographic within one length.
    """
    if f.n != f.m:
        raise ArityMismatch("only endomorphisms are written in the generators")
    words = diagram_words(f.n)
    out = [(words[p], c) for p, c in f.terms.items()]
    return sorted(out, key=lambda item: (len(item[0]), item[0]))

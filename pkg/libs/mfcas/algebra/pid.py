"""
Univariate polynomials over an exact field and the Smith normal form of
matrices over that principal ideal domain.
"""
from __future__ import annotations

from typing import Sequence

from mfcas.algebra.fields import RATIONALS
from mfcas.algebra.poly import MultiPoly, WeightedRing


class UniPoly:
    """Dense univariate polynomial, coefficients from the constant term up."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Sequence, field=RATIONALS):
        coeffs = [field.convert(c) for c in coeffs]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coeffs = tuple(coeffs)
        self.field = field

    @classmethod
    def from_multipoly(cls, p: MultiPoly, name: str) -> "UniPoly":
        i = p.ring.index(name)
        coeffs = [p.ring.field.zero] * (p.degree_in(name) + 1)
        for e, c in p.terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError(f"{p} is not a polynomial in {name} alone")
            coeffs[e[i]] = c
        return cls(coeffs, p.ring.field)

    def to_multipoly(self, ring: WeightedRing, name: str) -> MultiPoly:
        i = ring.index(name)
        terms = {}
        for k, c in enumerate(self.coeffs):
            if c:
                e = [0] * ring.nvars
                e[i] = k
                terms[tuple(e)] = c
        return MultiPoly(ring, terms)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def is_unit(self) -> bool:
        return self.degree == 0

    def lead(self):
        return self.coeffs[-1]

    def monic(self) -> "UniPoly":
        if not self:
            return self
        inv = 1 / self.lead()
        return UniPoly([c * inv for c in self.coeffs], self.field)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [self.field.zero] * (n - len(self.coeffs))
        b = list(other.coeffs) + [self.field.zero] * (n - len(other.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)], self.field)

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.field)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs], self.field)
        if not self or not other:
            return UniPoly([], self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return UniPoly(out, self.field)

    __rmul__ = __mul__

    def __divmod__(self, other: "UniPoly"):
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        q = [self.field.zero] * max(len(rem) - other.degree, 1)
        inv = 1 / other.lead()
        while len(rem) - 1 >= other.degree and any(rem):
            shift = len(rem) - 1 - other.degree
            c = rem[-1] * inv
            q[shift] = c
            for j, b in enumerate(other.coeffs):
                rem[shift + j] = rem[shift + j] - c * b
            rem.pop()
            while rem and not rem[-1]:
                rem.pop()
        return UniPoly(q, self.field), UniPoly(rem, self.field)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if not other:
            return not self.coeffs
        return self.coeffs == (other,)

    def __hash__(self):
        return hash(self.coeffs)

    def to_string(self, name: str = "y") -> str:
        ring = WeightedRing([name], self.field)
        return str(self.to_multipoly(ring, name))

    def __repr__(self):
        return f"UniPoly({self.to_string()})"


def smith_normal_form(matrix: Sequence[Sequence[UniPoly]]) -> list[UniPoly]:
    """
    Invariant factors of a matrix over K[y].

    Returns:
        The nonzero diagonal entries of the Smith normal form, monic and in
        divisibility order (each divides the next).
    """
    a = [list(row) for row in matrix]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    diagonal = []

    t = 0
    while t < min(nrows, ncols):
        # pivot: nonzero entry of smallest degree in the lower-right block
        pivot = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] and (pivot is None or a[i][j].degree < a[pivot[0]][pivot[1]].degree):
                    pivot = (i, j)
        if pivot is None:
            break

        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]

        done = False
        while not done:
            done = True
            p = a[t][t]
            for i in range(t + 1, nrows):
                if a[i][t]:
                    q, r = divmod(a[i][t], p)
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if r:
                        done = False
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q, r = divmod(a[t][j], p)
                    for row in a:
                        row[j] = row[j] - q * row[t]
                    if r:
                        done = False

            if not done:
                # move the smallest remainder into the pivot position
                best = (t, t)
                for i in range(t, nrows):
                    if a[i][t] and a[i][t].degree < a[best[0]][best[1]].degree:
                        best = (i, t)
                for j in range(t, ncols):
                    if a[t][j] and a[t][j].degree < a[best[0]][best[1]].degree:
                        best = (t, j)
                i, j = best
                a[t], a[i] = a[i], a[t]
                for row in a:
                    row[t], row[j] = row[j], row[t]
                continue

            # divisibility of the remaining block by the pivot
            for i in range(t + 1, nrows):
                if any(a[i][j] % p for j in range(t + 1, ncols) if a[i][j]):
                    a[t] = [x + y for x, y in zip(a[t], a[i])]
                    done = False
                    break

        diagonal.append(a[t][t].monic())
        t += 1

    return diagonal


def invariant_factors(matrix: Sequence[Sequence[UniPoly]]) -> tuple[int, list[UniPoly]]:
    """Rank and the non-unit invariant factors of a matrix over K[y]."""
    diagonal = smith_normal_form(matrix)
    return len(diagonal), [d for d in diagonal if not d.is_unit()]

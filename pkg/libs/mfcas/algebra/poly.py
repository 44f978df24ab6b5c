"""
Sparse multivariate polynomials over exact fields, with rational variable
weights.

Terms are stored as {exponent tuple: coefficient}. The canonical order is
graded lexicographic in the declared variable order, highest term first.
"""
from __future__ import annotations

import itertools
from typing import Callable, Iterable, Mapping, Sequence

import sympy

from mfcas.algebra.fields import (
    RATIONALS,
    FieldElement,
    Rational,
    _parse_sympy,
    format_coefficient,
    format_rational,
    rational,
)
from mfcas.algebra.linalg import nullspace, solve_sparse
from mfcas.exceptions import (
    NotDivisible,
    NotHomogeneous,
    ParseError,
    RingMismatch,
    UnknownVariable,
    ZeroPolynomial,
)


def grlex_key(exponent: tuple) -> tuple:
    return (sum(exponent), exponent)


class WeightedRing:
    """
    Polynomial ring field[x_1, ..., x_n] with a rational weight per variable.

    Args:
        variables: sequence of (name, weight) pairs, or plain names (weight 0).
        field: coefficient field (RATIONALS or a NumberField).
    """

    def __init__(self, variables: Sequence, field=RATIONALS):
        names, weights = [], []
        for v in variables:
            if isinstance(v, str):
                name, weight = v, 0
            else:
                name, weight = v
            names.append(name)
            weights.append(rational(weight))

        if len(set(names)) != len(names):
            raise ValueError(f"variable names must be distinct: {names}")
        clash = set(names) & set(field.generator_names())
        if clash:
            raise ValueError(f"variables {sorted(clash)} clash with field generators")

        self.names = tuple(names)
        self.weights = tuple(weights)
        self.field = field
        self.nvars = len(names)
        self._index = {n: i for i, n in enumerate(names)}

    @property
    def variables(self) -> tuple:
        return tuple(zip(self.names, self.weights))

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(f"unknown variable {name!r} in {self}") from None

    def weight(self, name: str) -> Rational:
        return self.weights[self.index(name)]

    def __contains__(self, name):
        return name in self._index

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return self.constant(1)

    def constant(self, value) -> "MultiPoly":
        value = self.field.convert(value)
        if not value:
            return self.zero()
        return MultiPoly(self, {(0,) * self.nvars: value})

    def monomial(self, exponent: Sequence[int], coefficient=1) -> "MultiPoly":
        coefficient = self.field.convert(coefficient)
        if not coefficient:
            return self.zero()
        return MultiPoly(self, {tuple(exponent): coefficient})

    def var(self, name: str) -> "MultiPoly":
        exponent = [0] * self.nvars
        exponent[self.index(name)] = 1
        return self.monomial(exponent)

    def gens(self) -> tuple:
        return tuple(self.var(n) for n in self.names)

    def __call__(self, value) -> "MultiPoly":
        """Coerces constants, polynomials of subrings and text into this ring."""
        if isinstance(value, MultiPoly):
            return value.to_ring(self)
        if isinstance(value, str):
            return self.parse(value)
        return self.constant(value)

    def with_field(self, field) -> "WeightedRing":
        return WeightedRing(self.variables, field)

    def with_weights(self, weights: Mapping) -> "WeightedRing":
        return WeightedRing(
            [(n, weights.get(n, w)) for n, w in self.variables], self.field
        )

    def extend(self, variables: Sequence, field=None) -> "WeightedRing":
        """Returns a ring with extra variables appended."""
        return WeightedRing(list(self.variables) + list(variables), field or self.field)

    def sub_ring(self, names: Sequence[str]) -> "WeightedRing":
        return WeightedRing([(n, self.weight(n)) for n in names], self.field)

    def exponent_degree(self, exponent: Sequence[int]) -> Rational:
        return sum((w * e for w, e in zip(self.weights, exponent) if e), Rational(0))

    def monomials_of_degree(self, degree, names: Sequence[str] = None) -> list[tuple]:
        """
        All exponent vectors supported on ``names`` (default all variables) of
        the given weighted degree, in canonical order. Every variable involved
        must have positive weight.
        """
        degree = rational(degree)
        names = self.names if names is None else tuple(names)
        idx = [self.index(n) for n in names]
        weights = [self.weights[i] for i in idx]
        if any(w <= 0 for w in weights):
            raise ValueError("monomial enumeration needs positive weights")

        results = []

        def rec(k, remaining, partial):
            if k == len(idx):
                if remaining == 0:
                    exponent = [0] * self.nvars
                    for i, e in zip(idx, partial):
                        exponent[i] = e
                    results.append(tuple(exponent))
                return
            w = weights[k]
            e = 0
            while e * w <= remaining:
                rec(k + 1, remaining - e * w, partial + [e])
                e += 1

        if degree >= 0:
            rec(0, degree, [])
        results.sort(key=grlex_key, reverse=True)
        return results

    def parse(self, text: str) -> "MultiPoly":
        """
        Parses polynomial text such as "x^3 - 3/2*x*y + (zeta12^2 + 1)*y".
        Field generators are written by their symbols.
        """
        names = list(self.names) + self.field.generator_names()
        expr = _parse_sympy(text, names)
        return self.from_sympy(expr)

    def from_sympy(self, expr) -> "MultiPoly":
        gens = self.field.generator_values()
        gen_symbols = {sympy.Symbol(k): v for k, v in gens.items()}
        var_symbols = {sympy.Symbol(n): i for i, n in enumerate(self.names)}

        terms = {}
        for term in sympy.Add.make_args(sympy.expand(expr)):
            coeff, factors = term.as_coeff_mul()
            try:
                value = self.field.convert(RATIONALS.from_sympy(coeff))
            except ParseError as e:
                raise ParseError(f"unsupported coefficient {coeff} in {expr}") from e

            exponent = [0] * self.nvars
            for factor in factors:
                base, exp = factor.as_base_exp()
                if not exp.is_Integer:
                    raise ParseError(f"non-integer power in {factor}")
                exp = int(exp)
                if base in var_symbols:
                    if exp < 0:
                        raise ParseError(f"negative power of a variable in {term}")
                    exponent[var_symbols[base]] += exp
                elif base in gen_symbols:
                    value = value * gen_symbols[base] ** exp
                else:
                    raise ParseError(f"unexpected factor {factor} in {term}")

            key = tuple(exponent)
            total = terms.get(key)
            total = value if total is None else total + value
            if total:
                terms[key] = total
            else:
                terms.pop(key, None)

        return MultiPoly(self, terms)

    def __eq__(self, other):
        return (
            isinstance(other, WeightedRing)
            and self.names == other.names
            and self.weights == other.weights
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.names, self.weights, self.field))

    def __repr__(self):
        vs = ", ".join(f"{n}:{format_rational(w)}" for n, w in self.variables)
        return f"WeightedRing([{vs}], {self.field!r})"


class MultiPoly:
    """
    Immutable sparse polynomial. Zero coefficients are never stored.
    """

    __slots__ = ("ring", "terms", "_sorted")

    def __init__(self, ring: WeightedRing, terms: Mapping):
        self.ring = ring
        self.terms = terms
        self._sorted = None

    # --- construction helpers ---

    def _new(self, terms) -> "MultiPoly":
        return MultiPoly(self.ring, terms)

    def _check_ring(self, other: "MultiPoly"):
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring!r} and {other.ring!r} differ")

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            self._check_ring(other)
            return other
        if isinstance(other, (int, Rational, FieldElement)):
            return self.ring.constant(other)
        return NotImplemented

    # --- canonical form ---

    def sorted_terms(self) -> list[tuple]:
        """(exponent, coefficient) pairs, highest grlex term first."""
        if self._sorted is None:
            self._sorted = sorted(
                self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True
            )
        return self._sorted

    def leading_term(self) -> tuple:
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no leading term")
        return max(self.terms.items(), key=lambda t: grlex_key(t[0]))

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (
            len(self.terms) == 1 and (0,) * self.ring.nvars in self.terms
        )

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def coefficient(self, exponent: Sequence[int]):
        return self.terms.get(tuple(exponent), self.ring.field.zero)

    # --- arithmetic ---

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            v = terms.get(e)
            v = c if v is None else v + c
            if v:
                terms[e] = v
            else:
                terms.pop(e, None)
        return self._new(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, scalar) -> "MultiPoly":
        scalar = self.ring.field.convert(scalar)
        if not scalar:
            return self.ring.zero()
        return self._new({e: c * scalar for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Rational, FieldElement)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other

        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = terms.get(e)
                v = c1 * c2 if v is None else v + c1 * c2
                terms[e] = v
        return self._new({e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def exact_div(self, divisor: "MultiPoly") -> "MultiPoly":
        """
        Returns r with divisor * r == self.

        Raises:
            NotDivisible: when no polynomial quotient exists.
        """
        divisor = self._coerce(divisor)
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")

        lead_e, lead_c = divisor.leading_term()
        lead_inv = 1 / lead_c
        remainder = dict(self.terms)
        quotient = {}
        while remainder:
            e, c = max(remainder.items(), key=lambda t: grlex_key(t[0]))
            q_e = tuple(a - b for a, b in zip(e, lead_e))
            if any(x < 0 for x in q_e):
                raise NotDivisible(f"{self} is not divisible by {divisor}")
            q_c = c * lead_inv
            quotient[q_e] = q_c
            for de, dc in divisor.terms.items():
                t = tuple(a + b for a, b in zip(de, q_e))
                v = remainder.get(t)
                v = -q_c * dc if v is None else v - q_c * dc
                if v:
                    remainder[t] = v
                else:
                    remainder.pop(t, None)
        return self._new(quotient)

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            return self.exact_div(other)
        other = self.ring.field.convert(other)
        return self.scale(1 / other)

    # --- comparison ---

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Rational, FieldElement)):
            if not other:
                return not self.terms
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # --- calculus and degrees ---

    def diff(self, name: str) -> "MultiPoly":
        i = self.ring.index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                new_e = e[:i] + (e[i] - 1,) + e[i + 1 :]  # noqa: E203
                terms[new_e] = c * e[i]
        return self._new(terms)

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def term_degrees(self) -> set:
        return {self.ring.exponent_degree(e) for e in self.terms}

    def weighted_degree(self) -> Rational:
        """
        Common weighted degree of all terms.

        Raises:
            ZeroPolynomial: for p = 0.
            NotHomogeneous: when two terms have different degrees.
        """
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no degree")
        items = self.sorted_terms()
        e0 = items[0][0]
        d0 = self.ring.exponent_degree(e0)
        for e, c in items[1:]:
            if self.ring.exponent_degree(e) != d0:
                t1 = str(self._new({e0: items[0][1]}))
                t2 = str(self._new({e: c}))
                raise NotHomogeneous(
                    f"terms {t1} and {t2} have different weighted degrees",
                    terms=(t1, t2),
                )
        return d0

    def is_homogeneous(self) -> bool:
        return len(self.term_degrees()) <= 1

    def homogeneous_part(self, degree) -> "MultiPoly":
        degree = rational(degree)
        return self._new(
            {e: c for e, c in self.terms.items() if self.ring.exponent_degree(e) == degree}
        )

    # --- substitutions and ring changes ---

    def subs(self, mapping: Mapping, ring: WeightedRing = None) -> "MultiPoly":
        """
        Substitutes variables by polynomials or constants.

        Args:
            mapping: {variable name: MultiPoly or scalar}; unlisted variables
                are kept (and must exist in the target ring).
            ring: target ring; defaults to the ring of the images or self.ring.
        """
        if ring is None:
            rings = {v.ring for v in mapping.values() if isinstance(v, MultiPoly)}
            ring = rings.pop() if len(rings) == 1 else self.ring

        images = []
        for name in self.ring.names:
            if name in mapping:
                v = mapping[name]
                images.append(v.to_ring(ring) if isinstance(v, MultiPoly) else ring(v))
            else:
                images.append(ring.var(name))

        powers = [{0: ring.one()} for _ in images]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * images[i]
            return cache[k]

        result = ring.zero()
        for e, c in self.terms.items():
            term = ring.constant(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def scale_variables(self, factors: Mapping) -> "MultiPoly":
        """Substitutes x -> factor*x for the listed variables."""
        idx = [(self.ring.index(n), self.ring.field.convert(f)) for n, f in factors.items()]
        terms = {}
        for e, c in self.terms.items():
            for i, f in idx:
                if e[i]:
                    c = c * f ** e[i]
            if c:
                terms[e] = c
        return self._new(terms)

    def rename(self, mapping: Mapping[str, str], ring: WeightedRing = None) -> "MultiPoly":
        """Renames variables; the target ring defaults to the renamed ring."""
        if ring is None:
            ring = WeightedRing(
                [(mapping.get(n, n), w) for n, w in self.ring.variables], self.ring.field
            )
        perm = [ring.index(mapping.get(n, n)) for n in self.ring.names]
        terms = {}
        for e, c in self.terms.items():
            new_e = [0] * ring.nvars
            for i, k in enumerate(e):
                new_e[perm[i]] += k
            terms[tuple(new_e)] = ring.field.convert(c)
        return MultiPoly(ring, terms)

    def to_ring(self, ring: WeightedRing) -> "MultiPoly":
        """
        Embeds the polynomial into a ring that contains all variables that occur
        and whose field contains the coefficients.
        """
        if ring == self.ring:
            return self
        used = {n for n, i in self.ring._index.items() if any(e[i] for e in self.terms)}
        missing = used - set(ring.names)
        if missing:
            raise UnknownVariable(f"variables {sorted(missing)} are not in {ring!r}")
        positions = [ring._index.get(n) for n in self.ring.names]
        terms = {}
        for e, c in self.terms.items():
            new_e = [0] * ring.nvars
            for i, k in enumerate(e):
                if k:
                    new_e[positions[i]] = k
            terms[tuple(new_e)] = ring.field.convert(c)
        return MultiPoly(ring, terms)

    def evaluate_zero(self, names: Iterable[str]) -> "MultiPoly":
        """Sets the listed variables to zero."""
        idx = [self.ring.index(n) for n in names]
        return self._new(
            {e: c for e, c in self.terms.items() if not any(e[i] for i in idx)}
        )

    def coefficient_in(self, names: Sequence[str]) -> dict:
        """
        Splits the polynomial by the exponents of ``names``: returns
        {exponent tuple over names: polynomial in the remaining variables}.
        """
        idx = [self.ring.index(n) for n in names]
        parts = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in idx)
            rest = list(e)
            for i in idx:
                rest[i] = 0
            parts.setdefault(key, {})[tuple(rest)] = c
        return {k: self._new(v) for k, v in parts.items()}

    def variables_used(self) -> list[str]:
        return [
            n for i, n in enumerate(self.ring.names) if any(e[i] for e in self.terms)
        ]

    def map_coefficients(self, func: Callable, ring: WeightedRing = None) -> "MultiPoly":
        ring = ring or self.ring
        terms = {}
        for e, c in self.terms.items():
            v = ring.field.convert(func(c))
            if v:
                terms[e] = v
        return MultiPoly(ring, terms)

    # --- printing ---

    def _monomial_text(self, exponent) -> str:
        factors = []
        for name, k in zip(self.ring.names, exponent):
            if k == 1:
                factors.append(name)
            elif k:
                factors.append(f"{name}^{k}")
        return "*".join(factors)

    def __str__(self):
        if not self.terms:
            return "0"

        pieces = []
        for e, c in self.sorted_terms():
            text, atomic = format_coefficient(c)
            negative = atomic and text.startswith("-")
            if negative:
                text = text[1:]
            mono = self._monomial_text(e)

            if not mono:
                term = text if atomic else f"({text})"
            elif text == "1":
                term = mono
            elif atomic:
                term = f"{text}*{mono}"
            else:
                term = f"({text})*{mono}"

            if not pieces:
                pieces.append(f"-{term}" if negative else term)
            else:
                pieces.append(f" - {term}" if negative else f" + {term}")
        return "".join(pieces)

    def __repr__(self):
        return f"MultiPoly({self})"

    def __reduce__(self):
        return (MultiPoly, (self.ring, dict(self.terms)))


def poly_mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Exact product of two polynomials of the same ring."""
    p._check_ring(q)
    return p * q


def poly_exact_div(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Exact quotient p/q; raises NotDivisible when q does not divide p."""
    p._check_ring(q)
    return p.exact_div(q)


def partial_derivative(p: MultiPoly, name: str) -> MultiPoly:
    return p.diff(name)


def weighted_degree(p: MultiPoly) -> Rational:
    return p.weighted_degree()


def difference_quotient(p: MultiPoly, name: str, other: str, value_ring=None) -> MultiPoly:
    """
    Returns (p - p|_{name -> other}) / (name - other), a polynomial since
    name - other divides the numerator.
    """
    ring = value_ring or p.ring
    p = p.to_ring(ring)
    shifted = p.subs({name: ring.var(other)}, ring)
    return (p - shifted).exact_div(ring.var(name) - ring.var(other))


def infer_weights(potential: MultiPoly, degree=2) -> dict:
    """
    Solves sum_i e_i w_i = degree over all monomials of the potential.

    Returns:
        {variable name: weight} for the variables that occur.

    Raises:
        NotHomogeneous: when no solution or no unique solution exists.
    """
    names = potential.variables_used()
    idx = [potential.ring.index(n) for n in names]
    rows = [{k: Rational(e[i]) for k, i in enumerate(idx) if e[i]} for e in potential.terms]
    rhs = [rational(degree)] * len(rows)

    solution = solve_sparse(rows, rhs, len(names))
    if solution is None:
        raise NotHomogeneous(f"{potential} is not quasi-homogeneous")
    if nullspace(rows, len(names)):
        raise NotHomogeneous(f"the weights of {potential} are not unique")
    return {n: solution.get(k, Rational(0)) for k, n in enumerate(names)}


def exponents_up_to(nvars: int, max_total: int) -> Iterable[tuple]:
    """All exponent vectors of total degree at most max_total."""
    for exponent in itertools.product(range(max_total + 1), repeat=nvars):
        if sum(exponent) <= max_total:
            yield exponent


def determinant(matrix: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Determinant by cofactor expansion along the first row (small matrices)."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    if n == 1:
        return matrix[0][0]
    if n == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]

    total = None
    for j in range(n):
        if not matrix[0][j]:
            continue
        minor = [row[:j] + row[j + 1 :] for row in matrix[1:]]  # noqa: E203
        term = matrix[0][j] * determinant(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else matrix[0][0].ring.zero()


def adjugate(matrix: Sequence[Sequence[MultiPoly]]) -> list[list[MultiPoly]]:
    """Classical adjoint: adj(A) A = A adj(A) = det(A) id."""
    n = len(matrix)
    if n == 1:
        return [[matrix[0][0].ring.one()]]
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                row[:j] + row[j + 1 :]  # noqa: E203
                for k, row in enumerate(matrix)
                if k != i
            ]
            c = determinant(minor)
            adj[j][i] = -c if (i + j) % 2 else c
    return adj

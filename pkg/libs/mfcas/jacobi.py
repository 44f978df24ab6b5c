"""
Groebner bases, Jacobi rings, Milnor numbers, Grothendieck residues and
central charges of quasi-homogeneous potentials.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from mfcas.algebra.fields import Rational, rational
from mfcas.algebra.linalg import solve_sparse
from mfcas.algebra.poly import (
    MultiPoly,
    determinant,
    grlex_key,
    infer_weights,
)
from mfcas.exceptions import (
    DegenerateHessian,
    DegenerateSocle,
    InfiniteDimensional,
    NotHomogeneous,
    ZeroPolynomial,
)


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis in graded-lex order, with monic generators."""

    generators: tuple
    order: str = "grlex"
    leading: tuple = field(default=(), compare=False)

    @property
    def ring(self):
        return self.generators[0].ring

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _reduce_terms(terms: dict, basis: Sequence[tuple]) -> dict:
    """
    Full reduction of a term dictionary by (leading exponent, leading
    coefficient inverse, polynomial) triples.
    """
    remainder = dict(terms)
    result = {}
    while remainder:
        e, c = max(remainder.items(), key=lambda t: grlex_key(t[0]))
        for lead_e, lead_inv, g in basis:
            if _divides(lead_e, e):
                shift = tuple(a - b for a, b in zip(e, lead_e))
                factor = c * lead_inv
                for ge, gc in g.terms.items():
                    t = tuple(a + b for a, b in zip(ge, shift))
                    v = remainder.get(t)
                    v = -factor * gc if v is None else v - factor * gc
                    if v:
                        remainder[t] = v
                    else:
                        remainder.pop(t, None)
                break
        else:
            result[e] = c
            del remainder[e]
    return result


def _triples(polys: Sequence[MultiPoly]) -> list[tuple]:
    out = []
    for g in polys:
        e, c = g.leading_term()
        out.append((e, 1 / c, g))
    return out


def groebner(gens: Sequence[MultiPoly]) -> GroebnerBasis:
    """
    Reduced Groebner basis of the ideal generated by gens (Buchberger's
    algorithm with the product and chain criteria). Pairs are selected by
    sugar, the degree the S-polynomial would have had in the homogenized
    computation, with ties broken by the degree of the lcm.

    Args:
        gens: nonempty list of polynomials over one ring.

    Returns:
        A GroebnerBasis with monic generators sorted by leading term.
    """
    gens = [g for g in gens if g]
    if not gens:
        raise ZeroPolynomial("the zero ideal has no Groebner basis")
    ring = gens[0].ring
    for g in gens:
        gens[0]._check_ring(g)

    basis = []
    sugar = []
    for g in gens:
        terms = _reduce_terms(g.terms, _triples(basis))
        if terms:
            basis.append(_monic(MultiPoly(ring, terms)))
            sugar.append(g.total_degree())

    def pair_key(pair):
        i, j = pair
        ei = basis[i].leading_term()[0]
        ej = basis[j].leading_term()[0]
        lcm = _lcm(ei, ej)
        return (_pair_sugar(sugar[i], ei, sugar[j], ej, lcm), grlex_key(lcm))

    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    while pairs:
        pairs.sort(key=pair_key)
        i, j = pairs.pop(0)
        ei = basis[i].leading_term()[0]
        ej = basis[j].leading_term()[0]
        lcm = _lcm(ei, ej)

        # product criterion
        if all(a == 0 or b == 0 for a, b in zip(ei, ej)):
            continue
        # chain criterion
        if any(
            k != i
            and k != j
            and _divides(basis[k].leading_term()[0], lcm)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(basis))
        ):
            continue

        s_poly = _shifted(basis[i], lcm) - _shifted(basis[j], lcm)
        terms = _reduce_terms(s_poly.terms, _triples(basis))
        if terms:
            basis.append(_monic(MultiPoly(ring, terms)))
            sugar.append(_pair_sugar(sugar[i], ei, sugar[j], ej, lcm))
            n = len(basis) - 1
            pairs.extend((k, n) for k in range(n))

    return GroebnerBasis(*_reduced_basis(basis))


def _pair_sugar(si: int, ei: tuple, sj: int, ej: tuple, lcm: tuple) -> int:
    d = sum(lcm)
    return max(si + d - sum(ei), sj + d - sum(ej))


def _shifted(g: MultiPoly, lcm: tuple) -> MultiPoly:
    e, c = g.leading_term()
    shift = tuple(a - b for a, b in zip(lcm, e))
    inv = 1 / c
    return MultiPoly(
        g.ring,
        {tuple(a + b for a, b in zip(ge, shift)): gc * inv for ge, gc in g.terms.items()},
    )


def _monic(p: MultiPoly) -> MultiPoly:
    return p.scale(1 / p.leading_term()[1])


def _reduced_basis(basis: list[MultiPoly]) -> tuple:
    # drop generators whose leading term is divisible by another one
    minimal = []
    for k, g in enumerate(basis):
        e = g.leading_term()[0]
        redundant = any(
            _divides(h.leading_term()[0], e)
            and (h.leading_term()[0] != e or j < k)
            for j, h in enumerate(basis)
            if j != k
        )
        if not redundant:
            minimal.append(g)

    reduced = []
    for k, g in enumerate(minimal):
        others = _triples([h for j, h in enumerate(minimal) if j != k])
        lead_e, lead_c = g.leading_term()
        tail = {e: c for e, c in g.terms.items() if e != lead_e}
        tail = _reduce_terms(tail, others)
        tail[lead_e] = lead_c
        reduced.append(_monic(MultiPoly(g.ring, tail)))

    reduced.sort(key=lambda g: grlex_key(g.leading_term()[0]))
    leading = tuple(g.leading_term()[0] for g in reduced)
    return tuple(reduced), "grlex", leading


def normal_form(p: MultiPoly, gb: GroebnerBasis) -> MultiPoly:
    """Remainder of p under multivariate division by gb; zero iff p is in the ideal."""
    p._check_ring(gb.generators[0])
    return MultiPoly(p.ring, _reduce_terms(p.terms, _triples(gb.generators)))


@dataclass(frozen=True)
class JacobiRingData:
    """
    Monomial basis of S/Jac(W) with its Milnor number. The weights and the
    socle only exist for quasi-homogeneous W and are computed on first use.
    """

    potential: MultiPoly
    variables: tuple
    groebner_basis: GroebnerBasis
    basis: tuple
    mu: int

    @cached_property
    def weights(self) -> dict:
        """Raises NotHomogeneous when W is not quasi-homogeneous."""
        return potential_weights(self.potential, self.variables)

    @cached_property
    def degrees(self) -> dict:
        ring = self.potential.ring
        idx = [ring.index(n) for n in self.variables]
        return {
            e: sum((self.weights[n] * e[i] for i, n in zip(idx, self.variables)), Rational(0))
            for e in self.basis
        }

    @property
    def socle_degree(self) -> Rational:
        return max(self.degrees.values())

    @cached_property
    def socle(self) -> tuple:
        """
        The basis monomial of top weighted degree.

        Raises:
            NotHomogeneous: when W is not quasi-homogeneous.
            DegenerateSocle: when the top degree is not one-dimensional.
        """
        if not self.basis:
            raise DegenerateSocle(f"the Jacobi ring of {self.potential} is zero")
        top = self.socle_degree
        socle = [e for e, d in self.degrees.items() if d == top]
        if len(socle) != 1:
            raise DegenerateSocle(
                f"the top degree of the Jacobi ring of {self.potential} is not one-dimensional"
            )
        return socle[0]


def potential_weights(W: MultiPoly, names: Sequence[str] = None) -> dict:
    """
    Weights making W quasi-homogeneous of degree 2: the ring weights when they
    already do, otherwise the unique solution of the degree equations.
    """
    names = list(names or W.variables_used())
    ring_weights = {n: W.ring.weight(n) for n in names}
    degrees = {
        sum((ring_weights[n] * e[W.ring.index(n)] for n in names), Rational(0))
        for e in W.terms
    }
    if degrees == {Rational(2)} and all(w > 0 for w in ring_weights.values()):
        return ring_weights

    parts = W.coefficient_in([n for n in W.ring.names if n not in names])
    inferred = {}
    for part in parts.values():
        inferred.update(infer_weights(part))
    return {n: inferred.get(n, Rational(0)) for n in names}


def jacobi_ring(W: MultiPoly, names: Sequence[str] = None) -> JacobiRingData:
    """
    Jacobi ring of W with respect to ``names`` (default: the variables of W).
    The basis and mu do not need W to be quasi-homogeneous; see
    JacobiRingData for the socle.

    Raises:
        InfiniteDimensional: when some variable has no pure power among the
            leading terms of the Jacobian ideal.
    """
    if W.is_constant():
        raise InfiniteDimensional("a constant has no Jacobi ring")

    names = tuple(names or W.variables_used())
    ring = W.ring
    gb = groebner([W.diff(n) for n in names])

    idx = [ring.index(n) for n in names]
    others = [i for i in range(ring.nvars) if i not in idx]
    leading = [e for e in gb.leading if not any(e[i] for i in others)]

    bounds = {}
    for i, n in zip(idx, names):
        powers = [e[i] for e in leading if all(e[j] == 0 for j in idx if j != i)]
        if not powers:
            raise InfiniteDimensional(
                f"the Jacobi ring of {W} is infinite-dimensional in the direction of {n}",
                free_variable=n,
            )
        bounds[i] = min(powers)

    def standard(e):
        return not any(_divides(lead, e) for lead in leading)

    basis = []

    def rec(k, partial):
        if k == len(idx):
            e = [0] * ring.nvars
            for i, v in zip(idx, partial):
                e[i] = v
            e = tuple(e)
            if standard(e):
                basis.append(e)
            return
        for v in range(bounds[idx[k]]):
            rec(k + 1, partial + [v])

    rec(0, [])
    basis.sort(key=grlex_key)

    return JacobiRingData(
        potential=W,
        variables=names,
        groebner_basis=gb,
        basis=tuple(basis),
        mu=len(basis),
    )


def milnor_number(W: MultiPoly) -> int:
    return jacobi_ring(W).mu


def hessian(W: MultiPoly, names: Sequence[str] = None) -> MultiPoly:
    names = tuple(names or W.variables_used())
    first = [W.diff(n) for n in names]
    return determinant([[f.diff(m) for m in names] for f in first])


def _socle_coefficient(p: MultiPoly, data: JacobiRingData) -> MultiPoly:
    nf = normal_form(p, data.groebner_basis)
    idx = [nf.ring.index(n) for n in data.variables]
    key = tuple(data.socle[i] for i in idx)
    return nf.coefficient_in(data.variables).get(key, nf.ring.zero())


class ResidueFunctional:
    """
    Grothendieck residue f -> Res[f dx / dW] over the variables of W, computed
    by Hessian normalization: Res[Hess W] = mu.

    Variables of the ring that are not in ``names`` are parameters; the value
    of the functional is then a polynomial in them.
    """

    def __init__(self, W: MultiPoly, names: Sequence[str] = None, data: JacobiRingData = None):
        self.data = data or jacobi_ring(W, names)
        self.potential = W
        hess = _socle_coefficient(hessian(W, self.data.variables), self.data)
        if not hess.is_constant() or not hess:
            raise DegenerateHessian(f"the Hessian of {W} has no socle component")
        self.normalization = rational(self.data.mu) / hess.constant_term()

    def __call__(self, f: MultiPoly) -> MultiPoly:
        return _socle_coefficient(f, self.data) * self.normalization

    def reduce(self, f: MultiPoly) -> MultiPoly:
        """Normal form modulo the Jacobian ideal (the residue only depends on it)."""
        return normal_form(f, self.data.groebner_basis)


def residue(f: MultiPoly, W: MultiPoly, names: Sequence[str] = None):
    """
    Grothendieck residue of f against the partial derivatives of W.

    Returns:
        A field element when f involves only the variables of W, otherwise a
        polynomial in the remaining variables.
    """
    value = ResidueFunctional(W, names)(f.to_ring(W.ring) if f.ring != W.ring else f)
    if value.is_constant():
        return value.constant_term()
    return value


def transformation_law_residue(f: MultiPoly, W: MultiPoly, names: Sequence[str] = None, max_power: int = 64):
    """
    Residue by the transformation law: finds y_i^{a_i} = sum_j A_ij dW/dy_j
    by degree-bounded linear algebra, then extracts the coefficient of
    prod y_i^{a_i - 1} in f * det(A).
    """
    names = tuple(names or W.variables_used())
    ring = W.ring
    weights = potential_weights(W, names)
    wring = ring.with_weights(weights)
    partials = [W.diff(n).to_ring(wring) for n in names]
    A = []
    exponents = []
    for i, name in enumerate(names):
        row = None
        for a in range(1, max_power + 1):
            row = _express_power(wring, name, a, partials, names)
            if row is not None:
                exponents.append(a)
                break
        if row is None:
            raise InfiniteDimensional(f"no power of {name} lies in the Jacobian ideal", free_variable=name)
        A.append([entry.to_ring(ring) for entry in row])

    product = f.to_ring(ring) * determinant(A)
    key = tuple(a - 1 for a in exponents)
    value = product.coefficient_in(names).get(key, ring.zero())
    if value.is_constant():
        return value.constant_term()
    return value


def _express_power(ring, name: str, a: int, partials: Sequence[MultiPoly], names) -> list | None:
    target = ring.var(name) ** a
    degree = ring.weight(name) * a
    unknowns = []
    for j, p in enumerate(partials):
        if not p:
            continue
        need = degree - p.weighted_degree()
        if need < 0:
            continue
        for e in ring.monomials_of_degree(need, names):
            unknowns.append((j, e))

    column_of = {}
    rows_by_monomial = {}
    for k, (j, e) in enumerate(unknowns):
        for pe, pc in partials[j].terms.items():
            m = tuple(x + y for x, y in zip(pe, e))
            rows_by_monomial.setdefault(m, {})[k] = pc
        column_of[k] = (j, e)

    monomials = sorted(set(rows_by_monomial) | set(target.terms), key=grlex_key)
    rows = [rows_by_monomial.get(m, {}) for m in monomials]
    rhs = [target.coefficient(m) for m in monomials]
    solution = solve_sparse(rows, rhs, len(unknowns))
    if solution is None:
        return None

    row = [ring.zero() for _ in partials]
    for k, c in solution.items():
        j, e = column_of[k]
        row[j] = row[j] + ring.monomial(e, c)
    return row


def central_charge(W: MultiPoly) -> Rational:
    """
    c_W = sum_i (1 - w_i) for W quasi-homogeneous of degree 2.

    Raises:
        NotHomogeneous: when no degree-2 weights exist.
    """
    weights = potential_weights(W)
    return sum((1 - w for w in weights.values()), Rational(0))

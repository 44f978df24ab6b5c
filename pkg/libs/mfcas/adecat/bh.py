"""
Berglund-Huebsch transposition of polynomials with as many monomials as
variables,

    W = sum_i a_i prod_j x_j^E_ij,   W^T = sum_i a_i prod_j x_j^E_ji,

and the decomposition of invertible polynomials into Fermat, chain and loop
summands together with the closed-form weights of their variables.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from mfcas.algebra import RATIONALS, MultiPoly, Rational, WeightedRing, rational
from mfcas.algebra.linalg import rank, solve_sparse
from mfcas.exceptions import (
    InfiniteDimensional,
    NotInvertible,
    NotSquareSystem,
)
from mfcas.jacobi import jacobi_ring

FERMAT, CHAIN, LOOP = "fermat", "chain", "loop"


@dataclass(frozen=True)
class BHPolynomial:
    """
    Coefficients a_i and the exponent matrix E, row i holding the exponents
    of monomial i. Monomials are ordered so that monomial i carries the
    largest power of variable i whenever such an ordering exists.
    """

    names: tuple
    coefficients: tuple
    exponents: tuple
    field: object = RATIONALS

    def __post_init__(self):
        n = len(self.names)
        if len(self.coefficients) != len(self.exponents) or len(self.exponents) != n:
            raise NotSquareSystem(
                f"{len(self.exponents)} monomials in {n} variables"
            )
        if any(len(row) != n for row in self.exponents):
            raise NotSquareSystem("every row of the exponent matrix needs one entry per variable")

    @classmethod
    def from_poly(cls, W: MultiPoly, names: Sequence[str] = None) -> "BHPolynomial":
        """
        Reads the exponent matrix off W.

        Raises:
            NotSquareSystem: when the numbers of monomials and variables differ.
        """
        names = tuple(names or W.variables_used())
        terms = W.sorted_terms()
        if len(terms) != len(names):
            raise NotSquareSystem(f"{W} has {len(terms)} monomials in {len(names)} variables")

        idx = [W.ring.index(n) for n in names]
        rows = [[e[i] for i in idx] for e, _ in terms]
        monomial_of, variable_of = linear_sum_assignment(-np.array(rows, dtype=float))
        order = [0] * len(names)
        for m, j in zip(monomial_of, variable_of):
            order[j] = m
        return cls(
            names,
            tuple(terms[m][1] for m in order),
            tuple(tuple(rows[m]) for m in order),
            W.ring.field,
        )

    @property
    def nvars(self) -> int:
        return len(self.names)

    def matrix(self) -> np.ndarray:
        return np.array(self.exponents, dtype=int)

    def transpose(self) -> "BHPolynomial":
        return BHPolynomial(
            self.names,
            self.coefficients,
            tuple(tuple(int(v) for v in col) for col in self.matrix().T),
            self.field,
        )

    def is_nondegenerate(self) -> bool:
        """E invertible over Q."""
        return rank([[rational(v) for v in row] for row in self.exponents]) == self.nvars

    def solve_weights(self) -> dict:
        """
        Weights with E w = (2, ..., 2).

        Raises:
            NotInvertible: when E is singular.
        """
        if not self.is_nondegenerate():
            raise NotInvertible(f"the exponent matrix of {self} is singular")
        rows = [{j: rational(v) for j, v in enumerate(row) if v} for row in self.exponents]
        solution = solve_sparse(rows, [rational(2)] * self.nvars, self.nvars)
        return {n: solution.get(j, Rational(0)) for j, n in enumerate(self.names)}

    def to_poly(self, weights: dict = None) -> MultiPoly:
        """W as a polynomial; the ring weights default to ``solve_weights``."""
        weights = weights if weights is not None else self.solve_weights()
        ring = WeightedRing([(n, weights.get(n, 0)) for n in self.names], self.field)
        out = ring.zero()
        for c, row in zip(self.coefficients, self.exponents):
            out = out + ring.monomial(row, c)
        return out

    def __str__(self):
        return str(self.to_poly(weights={}))


def bh_transpose(W: BHPolynomial | MultiPoly) -> BHPolynomial:
    """W^T: the exponent matrix transposed, the coefficients kept."""
    if isinstance(W, MultiPoly):
        W = BHPolynomial.from_poly(W)
    return W.transpose()


#
# classification
#
@dataclass(frozen=True)
class BHSummand:
    kind: str
    variables: tuple
    exponents: tuple

    def __str__(self):
        a = ",".join(str(v) for v in self.exponents)
        return f"{self.kind}({','.join(self.variables)}; {a})"


@dataclass
class BHClassification:
    """The Thom-Sebastiani summands of W, or the reason W is not invertible."""

    polynomial: BHPolynomial
    summands: list = field(default_factory=list)
    invertible: bool = False
    reason: str = None

    def kinds(self) -> list:
        return sorted(s.kind for s in self.summands)

    def to_dict(self) -> dict:
        return {
            "summands": [str(s) for s in self.summands],
            "invertible": self.invertible,
            "reason": self.reason,
        }


def _pointers(E) -> tuple:
    """
    For each variable j the variable its monomial points to (the one other
    variable with exponent 1), or None for a pure power.
    """
    n = len(E)
    pointer = [None] * n
    for j, row in enumerate(E):
        if row[j] < 2:
            raise NotInvertible(f"monomial {j} has exponent {row[j]} in its own variable")
        others = [k for k in range(n) if k != j and row[k]]
        if len(others) > 1 or (others and row[others[0]] != 1):
            raise NotInvertible(f"monomial {j} is not of the form x_j^a x_k")
        pointer[j] = others[0] if others else None
    incoming = [0] * n
    for k in pointer:
        if k is not None:
            incoming[k] += 1
    if any(c > 1 for c in incoming):
        raise NotInvertible("two monomials point to the same variable")
    return pointer, incoming


def _decompose(W: BHPolynomial) -> list:
    E = W.exponents
    pointer, incoming = _pointers(E)
    seen, summands = set(), []

    def summand(kind, path):
        seen.update(path)
        return BHSummand(
            kind, tuple(W.names[j] for j in path), tuple(E[j][j] for j in path)
        )

    for j in range(W.nvars):
        if j in seen or incoming[j]:
            continue
        path = [j]
        while pointer[path[-1]] is not None:
            path.append(pointer[path[-1]])
        summands.append(summand(FERMAT if len(path) == 1 else CHAIN, path))

    for j in range(W.nvars):
        if j in seen:
            continue
        path = [j]
        while pointer[path[-1]] != j:
            path.append(pointer[path[-1]])
        summands.append(summand(LOOP, path))
    return summands


def bh_classify(W: BHPolynomial | MultiPoly, check_jacobi: bool = False) -> BHClassification:
    """
    Splits an invertible polynomial into Fermat x^a, chain
    x_1^a_1 x_2 + ... + x_m^a_m and loop x_1^a_1 x_2 + ... + x_m^a_m x_1
    summands.

    With ``check_jacobi`` the Jacobi rings of W and W^T must also be finite
    dimensional. Failures are reported in the result, never raised.
    """
    if isinstance(W, MultiPoly):
        W = BHPolynomial.from_poly(W)
    result = BHClassification(W)
    if not W.is_nondegenerate():
        result.reason = "the exponent matrix is singular"
        return result
    try:
        result.summands = _decompose(W)
        if check_jacobi:
            for P in (W, W.transpose()):
                jacobi_ring(P.to_poly())
    except NotInvertible as e:
        result.reason = str(e)
        result.summands = []
        return result
    except InfiniteDimensional as e:
        result.reason = f"{type(e).__name__}: {e}"
        return result
    result.invertible = True
    return result


#
# weights and central charges
#
def _prod(values) -> Rational:
    out = Rational(1)
    for v in values:
        out *= v
    return out


def closed_form_weights(summand: BHSummand, transposed: bool = False) -> dict:
    """
    Weights of the variables of one summand.

        Fermat: 2/a_k
        chain:  2 sum_{i=k..m} (-1)^(i-k) prod_{l=k..i} 1/a_l
                (for W^T the sums run over i = 1..k instead)
        loop:   2 sum_{r=0..m-1} (-1)^r prod_{l=k..k+r} 1/a_l
                / (1 - (-1)^m prod_l 1/a_l)
                (indices mod m, running backwards for W^T)
    """
    a = [rational(v) for v in summand.exponents]
    m = len(a)
    weights = []
    for k in range(m):
        if summand.kind == FERMAT:
            w = 2 / a[k]
        elif summand.kind == CHAIN:
            span = range(k, m) if not transposed else range(k, -1, -1)
            w, acc = Rational(0), Rational(1)
            for sign, i in enumerate(span):
                acc /= a[i]
                w += (-1) ** sign * acc
            w *= 2
        else:
            step = -1 if transposed else 1
            w, acc = Rational(0), Rational(1)
            for r in range(m):
                acc /= a[(k + step * r) % m]
                w += (-1) ** r * acc
            w = 2 * w / (1 - (-1) ** m / _prod(a))
        weights.append(w)
    return dict(zip(summand.variables, weights))


@dataclass
class BHDegrees:
    weights: dict
    transpose_weights: dict
    charge: Rational
    transpose_charge: Rational
    closed_form: bool = True

    @property
    def equal_charges(self) -> bool:
        return self.charge == self.transpose_charge

    @property
    def passed(self) -> bool:
        return self.closed_form and self.equal_charges

    def to_dict(self) -> dict:
        return {
            "weights": {n: str(w) for n, w in self.weights.items()},
            "transpose_weights": {n: str(w) for n, w in self.transpose_weights.items()},
            "charge": str(self.charge),
            "transpose_charge": str(self.transpose_charge),
            "closed_form": self.closed_form,
            "passed": self.passed,
        }


def _charge(weights: dict) -> Rational:
    return sum((1 - w for w in weights.values()), Rational(0))


def bh_degrees_and_charge(W: BHPolynomial | MultiPoly) -> BHDegrees:
    """
    Weights of W and W^T from the closed forms, cross-checked against the
    linear systems E w = 2 and E^T w = 2, and both central charges.

    Raises:
        NotInvertible: when E is singular or W has no invertible decomposition.
    """
    if isinstance(W, MultiPoly):
        W = BHPolynomial.from_poly(W)
    classification = bh_classify(W)
    if not classification.invertible:
        raise NotInvertible(classification.reason)

    T = W.transpose()
    weights, transpose_weights = {}, {}
    for s in classification.summands:
        weights.update(closed_form_weights(s))
        transpose_weights.update(closed_form_weights(s, transposed=True))
    closed_form = weights == W.solve_weights() and transpose_weights == T.solve_weights()
    return BHDegrees(
        weights,
        transpose_weights,
        _charge(weights),
        _charge(transpose_weights),
        closed_form,
    )


#
# random invertible polynomials
#
def _summand_rows(kind: str, a: Sequence[int], offset: int, n: int) -> list:
    m = len(a)
    rows = []
    for k in range(m):
        row = [0] * n
        row[offset + k] = int(a[k])
        if kind == CHAIN and k < m - 1:
            row[offset + k + 1] = 1
        elif kind == LOOP:
            row[offset + (k + 1) % m] += 1
        rows.append(row)
    return rows


def random_invertible(rng: np.random.Generator, max_vars: int = 4, max_exponent: int = 5) -> BHPolynomial:
    """A Thom-Sebastiani sum of random Fermat, chain and loop summands."""
    n = int(rng.integers(1, max_vars + 1))
    sizes = []
    left = n
    while left:
        size = int(rng.integers(1, left + 1))
        sizes.append(size)
        left -= size

    rows, offset = [], 0
    for size in sizes:
        kind = FERMAT if size == 1 else (CHAIN, LOOP)[int(rng.integers(0, 2))]
        a = rng.integers(2, max_exponent + 1, size=size)
        rows += _summand_rows(kind, a, offset, n)
        offset += size
    names = tuple(f"x{i + 1}" for i in range(n))
    return BHPolynomial(names, (Rational(1),) * n, tuple(tuple(r) for r in rows))


def random_sample(count: int, seed: int, max_vars: int = 4) -> list:
    rng = np.random.default_rng(seed)
    return [random_invertible(rng, max_vars) for _ in range(count)]

"""
Tests the jacobi module.
"""
import itertools

import numpy as np
import pytest

from mfcas.algebra import WeightedRing, rational
from mfcas.algebra.linalg import EchelonBasis
from mfcas.exceptions import DegenerateSocle, InfiniteDimensional, NotHomogeneous
from mfcas.jacobi import (
    ResidueFunctional,
    central_charge,
    groebner,
    hessian,
    jacobi_ring,
    milnor_number,
    normal_form,
    residue,
    transformation_law_residue,
)
from mfcas.jacobi import _pair_sugar


CATALOG_POTENTIALS = {
    "A5": ("x^6 + y^2", [("x", "1/3"), ("y", 1)]),
    "D5": ("x^4 + x*y^2", [("x", "1/2"), ("y", "3/4")]),
    "E6": ("x^3 + y^4", [("x", "2/3"), ("y", "1/2")]),
    "E7": ("x^3 + x*y^3", [("x", "2/3"), ("y", "4/9")]),
    "E8": ("x^3 + y^5", [("x", "2/3"), ("y", "2/5")]),
}


def _potential(name):
    text, weights = CATALOG_POTENTIALS[name]
    return WeightedRing(weights).parse(text)


def test_groebner_monomial_ideal():
    ring = WeightedRing(["x", "y"])
    x, y = ring.gens()
    gb = groebner([x**2, y**3])
    assert set(gb.generators) == {x**2, y**3}


def test_groebner_linear_reduction():
    ring = WeightedRing(["x", "y"])
    x, y = ring.gens()
    gb = groebner([x - y, y])
    assert gb.generators == (y, x)


def test_groebner_of_jacobian_ideal():
    W = _potential("E6")
    x, y = W.ring.gens()
    gb = groebner([W.diff("x"), W.diff("y")])
    assert set(gb.generators) == {x**2, y**3}


def test_groebner_inhomogeneous_ideal():
    ring = WeightedRing(["x", "y"])
    x, y = ring.gens()
    gb = groebner([x**2 - y, x * y - 1])
    assert set(gb.generators) == {x**2 - y, x * y - 1, y**2 - x}


def test_pair_sugar():
    # x^2 - y and x*y - 1 meet at x^2*y
    assert _pair_sugar(2, (2, 0), 2, (1, 1), (2, 1)) == 3
    # sugar above the leading degree carries over
    assert _pair_sugar(4, (1, 0), 2, (0, 1), (1, 1)) == 5


def test_normal_form_examples():
    ring = WeightedRing(["x", "y"])
    x, y = ring.gens()
    gb = groebner([x**2, y**3])
    assert normal_form(x**2 * y, gb) == 0
    assert normal_form(x + y, gb) == x + y

    gb = groebner([x**2 - y, y**2])
    assert normal_form(x**3, gb) == x * y
    assert normal_form(x**4, gb) == 0


def _in_ideal_by_linear_algebra(p, gens, bound):
    """Is p in the ideal, using multiples of the generators up to a degree bound."""
    ring = p.ring
    index = {}
    basis = EchelonBasis()

    def vector(q):
        out = {}
        for e, c in q.terms.items():
            out[index.setdefault(e, len(index))] = c
        return out

    for g in gens:
        for e in itertools.product(range(bound + 1), repeat=ring.nvars):
            if sum(e) + g.total_degree() <= bound:
                basis.add(vector(g * ring.monomial(e)))
    return basis.contains(vector(p))


def test_normal_form_agrees_with_linear_algebra():
    ring = WeightedRing(["x", "y", "z"])
    rng = np.random.default_rng(0)
    x, y, z = ring.gens()
    # homogeneous generators, so degree-bounded multiples decide membership
    gens = [x**2 - y * z, y**2 - x * z, z**3]
    gb = groebner(gens)
    for _ in range(20):
        exponent = tuple(int(v) for v in rng.integers(0, 3, 3))
        p = ring.monomial(exponent) * (x - y) + ring.monomial(exponent[::-1])
        in_ideal = normal_form(p, gb) == 0
        assert in_ideal == _in_ideal_by_linear_algebra(p, gens, p.total_degree())
        # multiples of generators always reduce to zero
        assert normal_form(p * gens[0], gb) == 0


def test_jacobi_ring_one_variable():
    ring = WeightedRing([("x", "2/5")])
    data = jacobi_ring(ring.parse("x^5"))
    assert data.mu == 4
    assert data.basis == ((0,), (1,), (2,), (3,))
    assert data.socle == (3,)


def test_jacobi_ring_fermat_sum():
    data = jacobi_ring(_potential("E6"))
    assert data.mu == 6
    assert data.socle == (1, 2)


def test_jacobi_ring_not_quasi_homogeneous():
    ring = WeightedRing(["x"])
    W = ring.parse("x^3 + x^2")
    data = jacobi_ring(W)
    assert data.mu == 2
    assert data.basis == ((0,), (1,))
    assert milnor_number(W) == 2

    # the grading, and so the socle, needs weights
    with pytest.raises(NotHomogeneous):
        data.socle


def test_jacobi_ring_of_smooth_point():
    data = jacobi_ring(WeightedRing(["x"]).parse("x"))
    assert data.mu == 0
    with pytest.raises(DegenerateSocle):
        data.socle


def test_jacobi_ring_infinite_dimensional():
    ring = WeightedRing(["x", "y", "z"])
    with pytest.raises(InfiniteDimensional) as e:
        jacobi_ring(ring.parse("x^2 + y^2*x + z^2*x"))
    assert e.value.free_variable in ("y", "z")


@pytest.mark.parametrize(
    "name,mu", [("A5", 5), ("D5", 5), ("E6", 6), ("E7", 7), ("E8", 8)]
)
def test_milnor_numbers(name, mu):
    assert milnor_number(_potential(name)) == mu


def test_residue_examples():
    W = _potential("E6")
    x, y = W.ring.gens()
    assert residue(x * y**2, W) == rational("1/12")
    assert residue(hessian(W), W) == 6
    assert residue(W.ring.one(), W) == 0


@pytest.mark.parametrize("name", sorted(CATALOG_POTENTIALS))
def test_residue_hessian_equals_milnor_number(name):
    W = _potential(name)
    assert residue(hessian(W), W) == milnor_number(W)


@pytest.mark.parametrize("name", sorted(CATALOG_POTENTIALS))
def test_residue_algorithms_agree(name):
    W = _potential(name)
    data = jacobi_ring(W)
    functional = ResidueFunctional(W, data=data)
    for e in data.basis:
        m = W.ring.monomial(e)
        assert functional(m) == transformation_law_residue(m, W)
    hess = hessian(W)
    assert transformation_law_residue(hess, W) == data.mu


def test_residue_is_linear_and_degree_selective():
    W = _potential("E7")
    data = jacobi_ring(W)
    x, y = W.ring.gens()
    f = x * y**3 + 2 * x**2 * y
    g = y**4 + x * y
    assert residue(f + 3 * g, W) == residue(f, W) + 3 * residue(g, W)
    for e in data.basis:
        if e != data.socle:
            assert residue(W.ring.monomial(e), W) == 0


def test_residue_with_parameters():
    ring = WeightedRing(["x", "u"])
    x, u = ring.gens()
    W = x**3
    value = residue((u**2 + 1) * x, W, names=["x"])
    assert value == rational("1/3") * (u**2 + 1)


def test_central_charge():
    assert central_charge(_potential("E6")) == rational("5/6")
    assert central_charge(WeightedRing(["x", "y"]).parse("x^12 + y^2")) == rational("5/6")
    assert central_charge(WeightedRing(["x"]).parse("x^2")) == 0
    assert central_charge(WeightedRing(["x", "y"]).parse("x^3 + x*y^3")) == rational("8/9")


def test_central_charge_knorrer_invariance():
    W = WeightedRing(["x", "y", "u", "v"]).parse("x^3 + y^5")
    W_plus = W + W.ring.parse("u^2 + v^2")
    assert central_charge(W_plus) == central_charge(W)


def test_central_charge_not_homogeneous():
    with pytest.raises(NotHomogeneous):
        central_charge(WeightedRing(["x"]).parse("x^2 + x^3"))


def test_normal_form_of_ideal_element():
    ring = WeightedRing(["x", "y", "z"])
    x, y, z = ring.gens()
    gens = [x**2 - y * z, y**2 - x * z, z**3]
    p = x * gens[0] + z * gens[1] - y**2 * gens[2]
    assert normal_form(p, groebner(gens)) == 0
    assert _in_ideal_by_linear_algebra(p, gens, p.total_degree())

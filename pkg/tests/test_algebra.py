"""
Tests the algebra package.
"""
import numpy as np
import pytest

from mfcas.algebra import (
    RATIONALS,
    NumberField,
    WeightedRing,
    field_hom,
    galois_apply,
    infer_weights,
    make_cyclotomic,
    partial_derivative,
    poly_exact_div,
    poly_mul,
    rational,
)
from mfcas.algebra.fields import cyclotomic_coefficients
from mfcas.algebra.linalg import EchelonBasis, nullspace, rank, solve
from mfcas.algebra.pid import UniPoly, invariant_factors, smith_normal_form
from mfcas.exceptions import (
    NotCoprime,
    NotDivisible,
    NotHomogeneous,
    NotInvertible,
    ParseError,
    RingMismatch,
    UnknownVariable,
    ZeroPolynomial,
)


def _random_poly(ring, rng, n_terms=4, max_exp=3):
    p = ring.zero()
    for _ in range(n_terms):
        exponent = tuple(int(v) for v in rng.integers(0, max_exp + 1, ring.nvars))
        coeff = rational(f"{int(rng.integers(-5, 6))}/{int(rng.integers(1, 4))}")
        p = p + ring.monomial(exponent, coeff)
    return p


def test_make_cyclotomic_small_orders():
    assert make_cyclotomic(1).modulus == (-1, 1)
    assert make_cyclotomic(4).modulus == (1, 0, 1)
    assert make_cyclotomic(12).modulus == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("n", range(1, 31))
def test_make_cyclotomic_generator_is_a_root(n):
    field = make_cyclotomic(n)
    zeta = field.gen
    value = sum((c * zeta**k for k, c in enumerate(field.modulus)), field.zero)
    assert value == 0
    assert zeta**n == 1


def test_cyclotomic_coefficients_match_sympy():
    import sympy

    x = sympy.Symbol("x")
    for n in (5, 9, 15, 18, 30):
        expected = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()
        assert list(reversed([int(c) for c in expected])) == list(cyclotomic_coefficients(n))


def test_field_element_arithmetic():
    k = make_cyclotomic(4, "i")
    i = k.gen
    assert i * i == -1
    assert (1 + i) * (1 - i) == 2
    assert (1 + i) / (1 + i) == 1
    assert i**-1 == -i
    assert 3 * i - i == 2 * i
    assert rational("1/2") + i == k.parse("i + 1/2")


def test_field_element_inverse_of_zero():
    k = make_cyclotomic(3)
    with pytest.raises(NotInvertible):
        k.zero.inverse()


def test_reducible_modulus_units_and_zero_divisors():
    # Q[a]/(a^2 - 1) is not a field, units are still invertible
    algebra = NumberField("a", [-1, 0, 1])
    a = algebra.gen
    assert (2 + a) * (2 + a).inverse() == 1
    with pytest.raises(NotInvertible):
        (1 + a).inverse()


def test_tower_field_coercion():
    k = make_cyclotomic(4, "i")
    tower = NumberField("a", [2 * k.gen, 0, 0, 1], base=k)  # a^3 = -2i
    a = tower.gen
    assert a**3 == -2 * k.gen
    assert (a * k.gen) / k.gen == a
    assert hash(tower.convert(rational("3/2"))) == hash(rational("3/2"))
    assert tower.parse("a^3") == -2 * k.gen


def test_field_elements_of_unrelated_fields_do_not_mix():
    k3 = make_cyclotomic(3)
    k5 = make_cyclotomic(5)
    with pytest.raises(RingMismatch):
        k3.gen + k5.gen


def test_field_element_printing():
    k = make_cyclotomic(12)
    z = k.gen
    assert str(z**2 + 1) == "zeta12^2 + 1"
    assert str(-z) == "-zeta12"
    assert str(rational("1/3") * z**3 - 2) == "1/3*zeta12^3 - 2"


def test_number_field_from_string():
    k = NumberField.from_string("t", "3*t^2 - 1")
    t = k.gen
    assert t * t == rational("1/3")


def test_galois_apply_identity_and_definition():
    k = make_cyclotomic(12)
    z = k.gen
    assert galois_apply(1, z**3 + 2 * z) == z**3 + 2 * z
    assert galois_apply(5, z) == z**5


def test_galois_apply_on_cft_parameter():
    k = make_cyclotomic(12)
    z = k.gen
    t_cft = -(z + z**-1) / 3
    assert t_cft * t_cft == rational("1/3")
    assert galois_apply(5, t_cft) == -(z**5 + z**-5) / 3
    assert galois_apply(5, t_cft) == -t_cft


def test_galois_apply_not_coprime():
    k = make_cyclotomic(12)
    with pytest.raises(NotCoprime):
        galois_apply(4, k.gen)


def test_galois_apply_is_an_automorphism():
    k = make_cyclotomic(15)
    rng = np.random.default_rng(0)
    for _ in range(10):
        a = k.convert(0)
        b = k.convert(0)
        for j in range(k.degree):
            a = a + int(rng.integers(-3, 4)) * k.gen**j
            b = b + int(rng.integers(-3, 4)) * k.gen**j
        for nu in (2, 7):
            assert galois_apply(nu, a * b) == galois_apply(nu, a) * galois_apply(nu, b)
            assert galois_apply(nu, a + b) == galois_apply(nu, a) + galois_apply(nu, b)
        assert galois_apply(2, galois_apply(7, a)) == galois_apply(14, a)


def test_field_hom_into_larger_cyclotomic():
    k5 = make_cyclotomic(5)
    k10 = make_cyclotomic(10)
    image = field_hom(k5.gen, k10, k10.gen**2)
    assert image**5 == 1
    assert image != 1


def test_poly_mul_trivial():
    ring = WeightedRing(["x", "y"])
    x, y = ring.gens()
    assert poly_mul(x - y, x + y) == x**2 - y**2
    assert poly_mul(ring.zero(), x + y) == 0


def test_poly_mul_over_cyclotomic():
    k = make_cyclotomic(3)
    ring = WeightedRing(["x", "y"], k)
    x, y = ring.gens()
    z = k.gen
    assert (x - y) * (x - z * y) * (x - z**2 * y) == x**3 - y**3


def test_field_element_times_poly_uses_poly_operators():
    k = make_cyclotomic(3)
    ring = WeightedRing(["x"], k)
    x = ring.var("x")
    z = k.gen
    assert z.__mul__(x) is NotImplemented
    assert z.__add__(x) is NotImplemented
    assert z * x == x * z
    assert z + x == x + z
    assert (z - x) == -(x - z)


def test_poly_mul_ring_mismatch():
    p = WeightedRing(["x"]).var("x")
    q = WeightedRing(["y"]).var("y")
    with pytest.raises(RingMismatch):
        poly_mul(p, q)


def test_poly_exact_div():
    ring = WeightedRing(["x", "y"])
    x, y = ring.gens()
    assert poly_exact_div(x**3 - y**3, x - y) == x**2 + x * y + y**2
    assert poly_exact_div(x**3 - y**3, ring.one()) == x**3 - y**3
    with pytest.raises(NotDivisible):
        poly_exact_div(x**2, y)


def test_poly_ring_axioms_on_random_polynomials():
    ring = WeightedRing(["x", "y", "z"])
    rng = np.random.default_rng(1)
    for _ in range(20):
        p, q, r = (_random_poly(ring, rng) for _ in range(3))
        assert (p + q) * r == p * r + q * r
        assert (p * q) * r == p * (q * r)
        assert p * q == q * p
        if q:
            assert poly_exact_div(p * q, q) == p


def test_partial_derivative():
    ring = WeightedRing(["x", "y"])
    x, y = ring.gens()
    assert (x**3 + y**4).diff("x") == 3 * x**2
    assert (x**5 + x * y**2).diff("y") == 2 * x * y
    assert partial_derivative(x**2 * y, "x") == 2 * x * y
    assert ring.constant(7).diff("x") == 0
    with pytest.raises(UnknownVariable):
        x.diff("w")


def test_weighted_degree():
    ring = WeightedRing([("x", "2/3"), ("y", "1/2")])
    assert ring.parse("x^3 + y^4").weighted_degree() == 2

    ring = WeightedRing([("x", "2/3"), ("y", "4/9")])
    assert ring.parse("x^3 + x*y^3").weighted_degree() == 2


def test_weighted_degree_errors():
    ring = WeightedRing([("x", 1)])
    with pytest.raises(NotHomogeneous) as e:
        ring.parse("x + x^2").weighted_degree()
    assert set(e.value.terms) == {"x", "x^2"}

    with pytest.raises(ZeroPolynomial):
        ring.zero().weighted_degree()


def test_weighted_degree_is_additive():
    ring = WeightedRing([("x", "1/3"), ("y", "1/2")])
    p = ring.parse("x^3 + 2*y^2")
    q = ring.parse("x^3*y - y^3")
    assert (p * q).weighted_degree() == p.weighted_degree() + q.weighted_degree()


def test_infer_weights():
    ring = WeightedRing(["x", "y"])
    assert infer_weights(ring.parse("x^3 + x*y^3")) == {"x": rational("2/3"), "y": rational("4/9")}
    assert infer_weights(ring.parse("x^4 + x^2*y + y^2")) == {"x": rational("1/2"), "y": rational(1)}
    assert infer_weights(ring.parse("x^2"), degree=1) == {"x": rational("1/2")}

    with pytest.raises(NotHomogeneous):
        infer_weights(ring.parse("x^2 + x^3"))
    with pytest.raises(NotHomogeneous):
        infer_weights(ring.parse("x*y"))


def test_parse_and_print_canonical_order():
    ring = WeightedRing(["x", "y"])
    assert str(ring.parse("1 + y*x*(-3/2) + x^2")) == "x^2 - 3/2*x*y + 1"
    assert str(ring.parse(" y - x ")) == "-x + y"
    assert str(ring.zero()) == "0"


def test_parse_over_number_field():
    k = make_cyclotomic(12)
    ring = WeightedRing(["x", "y"], k)
    p = ring.parse("(zeta12^2 + 1)*y + zeta12^-1*x")
    assert str(ring.parse(str(p))) == str(p)
    assert p.coefficient((0, 1)) == k.gen**2 + 1
    assert "(zeta12^2 + 1)*y" in str(p)


def test_parse_errors():
    ring = WeightedRing(["x", "y"])
    with pytest.raises(ParseError):
        ring.parse("x + w")
    with pytest.raises(ParseError):
        ring.parse("x/y")
    with pytest.raises(ParseError):
        ring.parse("x +* y")


def test_substitution_and_scaling():
    ring = WeightedRing(["x", "y", "z"])
    x, y, z = ring.gens()
    p = x**2 + x * y
    assert p.subs({"x": y + z}) == (y + z) ** 2 + (y + z) * y
    assert p.scale_variables({"x": 2}) == 4 * x**2 + 2 * x * y
    assert p.evaluate_zero(["y"]) == x**2


def test_rename_and_to_ring():
    ring = WeightedRing(["x", "y"])
    p = ring.parse("x^2 + 3*y")
    q = p.rename({"x": "u"})
    assert q.ring.names == ("u", "y")
    assert str(q) == "u^2 + 3*y"

    bigger = WeightedRing(["w", "x", "y"])
    assert str(p.to_ring(bigger)) == "x^2 + 3*y"


def test_linalg_rank_nullspace_and_solve():
    q = rational
    matrix = [[q(1), q(2), q(3)], [q(2), q(4), q(6)], [q(1), q(0), q(1)]]
    assert rank(matrix) == 2
    kernel = nullspace(matrix, 3)
    assert len(kernel) == 1
    v = kernel[0]
    for row in matrix:
        assert sum(row[j] * v.get(j, 0) for j in range(3)) == 0

    assert solve(matrix, [q(1), q(2), q(1)]) is not None
    assert solve(matrix, [q(1), q(3), q(1)]) is None


def test_echelon_basis_membership():
    basis = EchelonBasis()
    assert basis.add({0: rational(1), 1: rational(1)})
    assert basis.add({1: rational(2)})
    assert not basis.add({0: rational(3)})
    assert basis.contains({0: rational(1)})
    assert len(basis) == 2


def test_smith_normal_form_diagonal():
    y2 = UniPoly([0, 0, 1])
    y1 = UniPoly([0, 1])
    zero = UniPoly([])
    diagonal = smith_normal_form([[y1, zero], [zero, y2]])
    assert diagonal == [y1, y2]


def test_smith_normal_form_matches_sympy():
    import sympy
    from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors

    y = sympy.Symbol("y")
    domain = sympy.QQ[y]
    ring = WeightedRing(["y"])
    texts = [["y^2 - 1", "y + 1", "0"], ["y^3 + y", "y^2", "y"], ["1", "y", "y^2 - y"]]
    matrix = [[UniPoly.from_multipoly(ring.parse(t), "y") for t in row] for row in texts]
    sym = sympy.Matrix([[sympy.sympify(t.replace("^", "**")) for t in row] for row in texts])

    expected = []
    for e in sympy_invariant_factors(sym, domain=domain):
        expr = domain.to_sympy(e)
        if expr != 0:
            coeffs = sympy.Poly(expr, y).monic().all_coeffs()
            expected.append([sympy.Rational(c) for c in reversed(coeffs)])

    ours = [[sympy.QQ.to_sympy(c) for c in p.coeffs] for p in smith_normal_form(matrix)]
    assert ours == expected


def test_invariant_factors_drop_units():
    one = UniPoly([1])
    y = UniPoly([0, 1])
    r, factors = invariant_factors([[one, UniPoly([])], [UniPoly([]), y]])
    assert r == 2
    assert factors == [y]


def test_rational_parsing():
    assert rational("3/4") == rational(3) / 4
    with pytest.raises(ParseError):
        rational("abc")
    assert RATIONALS.convert(2) == 2

"""
Tests the mfcore package.
"""
import numpy as np
import pytest

from mfcas.algebra import WeightedRing, make_cyclotomic, rational, root_of_unity
from mfcas.exceptions import (
    GradingViolation,
    InterfaceMismatch,
    ParseError,
    SquareMismatch,
    UnsupportedRank,
)
from mfcas.mfcore import (
    MFMorphism,
    associator,
    c_degree,
    compose,
    compose_all,
    cone,
    delta,
    direct_sum,
    equivariant_structure,
    external_tensor,
    from_blocks,
    galois_mf,
    identity,
    is_closed,
    materialize,
    mf_dual,
    mf_make,
    mf_tensor,
    monomial_mf,
    permutation_interval_mf,
    permutation_mf,
    probe_vectors,
    shift,
    tensor,
    transpose_dual,
    twist,
    twist_multiplication,
    unit_mf,
    unit_morphisms,
)
from mfcas.mfcore import matrix as mx
from mfcas.mfcore.io import dumps, loads, read_mf, write_mf


def _x_ring(weight="1"):
    return WeightedRing([("x", weight)])


def test_mf_make_trivial():
    ring = _x_ring()
    x = ring.var("x")
    M = mf_make([[x]], [[x]], x**2, 0, ring=ring)
    assert (M.n0, M.n1) == (1, 1)
    assert M.left == ("x",)
    assert M.right == ()


def test_mf_make_square_mismatch_reports_entry():
    ring = _x_ring()
    x = ring.var("x")
    with pytest.raises(SquareMismatch) as e:
        mf_make([[x]], [[x]], x**3, 0, ring=ring)
    assert e.value.block == "d1*d0"
    assert e.value.entry == (0, 0)


@pytest.mark.parametrize("m", range(0, 6))
def test_monomial_mf(m):
    M = monomial_mf(5, m)
    x = M.ring.var("x")
    assert M.d1[0, 0] == x**m
    assert M.d0[0, 0] == x ** (5 - m)
    assert M.zero_object == (m in (0, 5))


def test_grading_violation():
    ring = _x_ring("2/5")
    x = ring.var("x")
    with pytest.raises(GradingViolation) as e:
        mf_make([[x**2]], [[x**3]], x**5, 0, grading=([0], [0]), ring=ring)
    assert e.value.block == "d1"


def test_permutation_mf_d3():
    P = permutation_mf(3, [0])
    assert P.d1[0, 0] == P.ring.parse("x - y")
    assert P.d0[0, 0] == P.ring.parse("x^2 + x*y + y^2")
    assert P.tags["permutation"] == (3, (0,))


@pytest.mark.parametrize("d", range(2, 13))
def test_permutation_mf_square_identity(d):
    rng = np.random.default_rng(d)
    for _ in range(3):
        S = [j for j in range(d) if rng.integers(0, 2)]
        P = permutation_mf(d, S, graded=True)
        product = P.d1[0, 0] * P.d0[0, 0]
        assert product == P.ring.parse(f"x^{d} - y^{d}")


def test_permutation_mf_zero_objects():
    assert permutation_mf(4, []).zero_object
    assert permutation_mf(4, range(4)).zero_object
    assert not permutation_mf(4, [1, 2]).zero_object


def test_permutation_mf_hat_grading():
    P = permutation_mf(5, [1, 2, 3], graded=True)
    assert P.grading.even == (rational("-2/5"),)
    assert P.grading.odd == (rational("-2/5") + rational("6/5") - 1,)

    unit = permutation_mf(5, [0], graded=True)
    assert unit.grading.even == (0,)


def test_permutation_mf_variable_names():
    P = permutation_mf(3, [0], variables=("u", "v"))
    assert P.left == ("u",)
    assert P.right == ("v",)


def test_permutation_interval_wraps_around():
    P = permutation_interval_mf(5, 4, 2)
    assert P.tags["permutation"] == (5, (0, 1, 4))


def test_unit_mf_one_variable():
    ring = WeightedRing([("x", "2/5")])
    I = unit_mf(ring.parse("x^5"))
    assert I.left == ("x",)
    assert I.right == ("xp",)
    assert I.d1[0, 0] == I.ring.parse("x - xp")
    assert I.d0[0, 0] == I.ring.parse("x^4 + x^3*xp + x^2*xp^2 + x*xp^3 + xp^4")
    assert I.grading.even == (0,)
    assert I.grading.odd == (rational("-3/5"),)


def test_unit_mf_quadratic_difference_quotient():
    I = unit_mf(WeightedRing([("x", 1)]).parse("x^2"))
    assert I.d0[0, 0] == I.ring.parse("x + xp")


def test_unit_mf_two_variables():
    ring = WeightedRing([("x", "2/3"), ("y", "1/2")])
    I = unit_mf(ring.parse("x^3 + y^4"))
    assert (I.n0, I.n1) == (2, 2)
    assert I.labels == ((), ("x", "y"), ("x",), ("y",))
    assert I.grading is not None
    I.validate()


def test_unit_mf_avoids_name_clashes():
    ring = WeightedRing([("x", 1), ("xp", 1)])
    I = unit_mf(ring.parse("x^2"), names=["x"])
    assert I.right == ("xp1",)


def test_tensor_of_permutation_factorizations_d2():
    A = permutation_mf(2, [0], variables=("x", "y"))
    B = permutation_mf(2, [0], variables=("y", "z"))
    T = mf_tensor(A, B)
    assert T.internal == ("y",)
    assert (T.n0, T.n1) == (2, 2)
    assert T.potential == T.ring.parse("x^2 - z^2")
    T.validate()


def test_tensor_koszul_sign():
    A = permutation_mf(3, [0], variables=("x", "y"))
    B = permutation_mf(3, [1], variables=("y", "z"))
    T = mf_tensor(A, B)
    ring = T.ring
    # basis (A0B0, A1B1 | A1B0, A0B1)
    assert T.d1[0, 0] == A.d1[0, 0].to_ring(ring)
    assert T.d1[0, 1] == B.d1[0, 0].to_ring(ring)
    assert T.d1[1, 0] == -B.d0[0, 0].to_ring(ring)
    assert T.d1[1, 1] == A.d0[0, 0].to_ring(ring)


def test_tensor_gradings_add():
    A = permutation_mf(5, [0, 1], graded=True, variables=("x", "y"))
    B = permutation_mf(5, [2], graded=True, variables=("y", "z"))
    T = mf_tensor(A, B)
    assert T.grading.even == (
        A.grading.even[0] + B.grading.even[0],
        A.grading.odd[0] + B.grading.odd[0],
    )
    T.validate()


def test_tensor_with_unit_squares():
    ring = WeightedRing([("x", "2/3"), ("y", "1/2")])
    W = ring.parse("x^3 + y^4")
    I = unit_mf(W)
    X = monomial_mf(3, 1)
    with pytest.raises(InterfaceMismatch):
        mf_tensor(I, X)

    M = external_tensor(monomial_mf(3, 1), monomial_mf(4, 2, variable="y"))
    M = M.rename({"x": "xp", "y": "yp"})
    T = mf_tensor(I, M)
    T.validate()
    assert T.potential == T.ring.parse("x^3 + y^4")


def test_tensor_interface_mismatch():
    A = permutation_mf(3, [0], variables=("x", "y"))
    B = permutation_mf(3, [0], variables=("z", "w"))
    with pytest.raises(InterfaceMismatch):
        mf_tensor(A, B)


def test_tensor_renames_clashing_internal_variables():
    A = mf_tensor(
        permutation_mf(3, [0], variables=("x", "y")),
        permutation_mf(3, [0], variables=("y", "z")),
    )
    B = mf_tensor(
        permutation_mf(3, [0], variables=("z", "y")),
        permutation_mf(3, [0], variables=("y", "w")),
    )
    T = mf_tensor(A, B)
    assert len(set(T.internal)) == 3
    T.validate()


def test_external_tensor_and_direct_sum():
    X = monomial_mf(2, 1)
    Y = monomial_mf(2, 1, variable="y")
    E = external_tensor(X, Y)
    assert E.W == E.ring.parse("x^2 + y^2")
    E.validate()

    S = direct_sum(monomial_mf(5, 1), monomial_mf(5, 2))
    assert (S.n0, S.n1) == (2, 2)
    S.validate()


def test_shift_twice_is_identity():
    P = permutation_mf(4, [0, 1], graded=True)
    P2 = shift(shift(P))
    assert mx.equal(P2.d1, P.d1)
    assert mx.equal(P2.d0, P.d0)
    assert P2.grading == P.grading

    P1 = shift(P)
    assert P1.d1[0, 0] == -P.d0[0, 0]
    P1.validate()


def test_dual_of_unit_is_unit():
    I = permutation_mf(5, [0], graded=True)
    D = mf_dual(I)
    assert mx.equal(D.d1, I.d1)
    assert mx.equal(D.d0, I.d0)
    assert D.grading == I.grading


def test_dual_preserves_hat_grading():
    P = permutation_mf(5, [1, 2], graded=True)
    D = mf_dual(P)
    assert D.grading.even == P.grading.even
    D.validate()


def test_dual_of_permutation_mf_is_negated_set():
    d, S = 5, [1, 2]
    D = mf_dual(permutation_mf(d, S))
    target = permutation_mf(d, [-j for j in S])
    # the two differ by a scalar on d1
    ratio = None
    for e, c in D.d1[0, 0].terms.items():
        r = c / target.d1[0, 0].coefficient(e)
        assert ratio is None or r == ratio
        ratio = r
    eta = root_of_unity(D.field)
    assert ratio == (-1) ** (len(S) + 1) * eta ** sum(S)


def test_dual_unsupported_rank():
    X = direct_sum(permutation_mf(3, [0]), permutation_mf(3, [1]))
    with pytest.raises(UnsupportedRank):
        mf_dual(X)


def test_transpose_dual():
    X = direct_sum(
        permutation_mf(5, [0], graded=True), permutation_mf(5, [1, 2], graded=True)
    )
    D = transpose_dual(X)
    assert D.left == X.right
    assert D.right == X.left
    assert D.potential == -X.potential
    assert D.grading.even == tuple(-v for v in X.grading.odd)
    D.validate()


def test_galois_mf_permutes_sets():
    d = 5
    P = permutation_mf(d, [1])
    Q = galois_mf(P, 2)
    assert Q.d1[0, 0] == permutation_mf(d, [2]).d1[0, 0]


def test_twist_of_unit_is_permutation_mf():
    d = 5
    I = permutation_mf(d, [0], graded=True)
    for a in range(d):
        twisted, s = twist(I, a, 0)
        assert s.source.tags["permutation"] == (d, ((-a) % d,))
        assert is_closed(s)
        assert c_degree(s) == 0


def test_twist_iso_is_closed_for_all_shifts():
    d = 5
    P = permutation_mf(d, [1, 2])
    for a in range(d):
        for b in range(d):
            _, s = twist(P, a, b)
            assert is_closed(s)


def test_equivariant_structure_composition():
    d = 5
    P = permutation_mf(d, [0, 1, 3])
    for a in range(d):
        for b in range(d):
            ta = equivariant_structure(P, a).matrix
            tb = equivariant_structure(P, b).matrix
            tab = equivariant_structure(P, a + b).matrix
            # diagonal constant maps are unchanged by twisting
            for k in range(2):
                assert ta[k, k] * tb[k, k] == tab[k, k]


def test_twist_multiplication_hexagon():
    d, a, b, c = 3, 1, 2, 1
    mu_ab = twist_multiplication(d, a, b, ("x", "y", "z"))
    mu_bc = twist_multiplication(d, b, c, ("y", "z", "w"))
    mu_ab_c = twist_multiplication(d, a + b, c, ("x", "z", "w"))
    mu_a_bc = twist_multiplication(d, a, b + c, ("x", "y", "w"))
    for mu in (mu_ab, mu_bc):
        assert is_closed(mu, bound=3)

    A = mu_ab.source.tags["tensor"][0]
    B = mu_ab.source.tags["tensor"][1]
    C = mu_bc.source.tags["tensor"][1]
    lhs = compose(mu_ab_c, tensor(mu_ab, identity(C)))
    rhs = compose_all(mu_a_bc, tensor(identity(A), mu_bc), associator(A, B, C))
    for _, v in probe_vectors(lhs.source, 3):
        assert lhs.apply(v) == rhs.apply(v)


def test_unit_morphisms_closed_and_degree_zero():
    P = permutation_mf(4, [0, 1], graded=True)
    lam, rho = unit_morphisms(P)
    assert lam.source.internal == ("xt",)
    assert is_closed(lam)
    assert is_closed(rho)
    assert c_degree(lam) == 0
    assert c_degree(rho) == 0


def test_lambda_on_unit_evaluates_internal_variable():
    I = permutation_mf(3, [0])
    lam, _ = unit_morphisms(I)
    T = lam.source
    xt = T.ring.var("xt")
    x = T.ring.var("x")
    v = [T.ring.zero()] * T.rank
    v[0] = xt**2 + x
    assert lam.apply(v)[0] == I.ring.parse("x^2 + x")


def test_delta_squares_to_zero():
    rng = np.random.default_rng(0)
    M = permutation_mf(3, [0])
    N = permutation_mf(3, [0, 1])
    ring = M.ring
    gens = [ring.one(), ring.var("x"), ring.var("y")]
    for degree in (0, 1):
        f0 = [[gens[int(rng.integers(0, 3))]]]
        f1 = [[gens[int(rng.integers(0, 3))]]]
        f = from_blocks(M, N, f0, f1, degree=degree)
        assert mx.is_zero(delta(delta(f)).matrix)


def test_identity_is_closed_and_materialize_keeps_polynomials():
    P = permutation_mf(3, [0, 1])
    f = identity(P)
    assert is_closed(f)
    assert materialize(f) is f


def test_morphism_rejects_wrong_parity():
    P = permutation_mf(3, [0])
    ring = P.ring
    matrix = mx.zeros(ring, 2, 2)
    matrix[0, 1] = ring.one()
    with pytest.raises(ValueError):
        MFMorphism(P, P, matrix, degree=0)


def test_cone_of_identity_is_factorization():
    P = permutation_mf(3, [0], graded=True)
    C = cone(identity(P))
    C.validate()
    assert (C.n0, C.n1) == (2, 2)


def test_io_roundtrip(tmp_path):
    P = permutation_mf(5, [1, 2], graded=True)
    path = tmp_path / "p.json"
    write_mf(P, path)
    Q = read_mf(path)
    assert mx.equal(Q.d1, P.d1)
    assert mx.equal(Q.d0, P.d0)
    assert Q.grading == P.grading
    assert Q.field == P.field
    assert Q.left == ("x",)


def test_io_tower_field():
    from mfcas.algebra import NumberField

    base = make_cyclotomic(4, "i")
    field = NumberField.from_string("a", "a^3 + 2*i", base)
    ring = WeightedRing([("x", 1)], field)
    x = ring.var("x")
    M = mf_make([[x * field.gen]], [[x * field.gen ** 2]], x**2 * field.gen**3, 0, ring=ring)
    Q = loads(dumps(M))
    assert Q.field == field
    assert mx.equal(Q.d1, M.d1)


def test_io_corrupted_entry():
    text = dumps(permutation_mf(3, [0]))
    text = text.replace('"x^2 + x*y + y^2"', '"x^2 + x*y + 2*y^2"')
    with pytest.raises(SquareMismatch) as e:
        loads(text)
    assert e.value.entry is not None


def test_io_parse_error_location():
    text = dumps(permutation_mf(3, [0])).replace('"x - y"', '"x - q"')
    with pytest.raises(ParseError) as e:
        loads(text)
    assert e.value.location == "d1[0][0]"

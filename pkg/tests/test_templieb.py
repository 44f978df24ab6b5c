"""
Tests the templieb package.
"""
import pytest

from mfcas.algebra import make_cyclotomic, root_of_unity
from mfcas.exceptions import ArityMismatch, NotInvertible, NotPlanar, UndefinedProjector
from mfcas.templieb import (
    PlanarPairing,
    TLMorphism,
    catalan,
    check_relations,
    enumerate_pairings,
    format_word,
    generator,
    generic_context,
    identity,
    in_words,
    markov_trace,
    quantum_int,
    root_of_unity_context,
    specialize,
    specialize_scalar,
    tl_compose,
    tl_tensor,
    wenzl,
    wenzl_sequence,
    wenzl_verify,
)


def _q(l):
    return quantum_int(l).value


#
# diagrams
#
def test_planar_pairing_rejects_crossings():
    with pytest.raises(NotPlanar):
        PlanarPairing(2, 2, (3, 2, 1, 0))


def test_planar_pairing_rejects_non_involutions():
    with pytest.raises(NotPlanar):
        PlanarPairing(2, 2, (2, 3, 1, 0))
    with pytest.raises(NotPlanar):
        PlanarPairing(1, 0, (0,))


def test_cups_of_generator():
    e = next(iter(generator(3, 2).terms))
    assert (1, 2) in e.cups
    assert (4, 5) in e.cups
    assert (0, 3) in e.cups


@pytest.mark.parametrize("n", range(0, 9))
def test_enumerate_pairings_catalan(n):
    pairings = enumerate_pairings(n, n)
    assert len(pairings) == catalan(n)
    assert len(set(pairings)) == len(pairings)


def test_enumerate_pairings_other_arities():
    assert len(enumerate_pairings(3, 1)) == 2
    assert len(enumerate_pairings(4, 0)) == 2
    assert enumerate_pairings(2, 1) == []


#
# composition and tensor product
#
def test_generator_squares_to_kappa():
    kappa = generic_context().kappa
    e = generator(2, 1)
    assert tl_compose(e, e) == e.scale(kappa)


def test_generators_braid_like_relation():
    e1, e2 = generator(3, 1), generator(3, 2)
    assert tl_compose(tl_compose(e1, e2), e1) == e1
    assert tl_compose(tl_compose(e2, e1), e2) == e2


@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_relations_hold(n):
    report = check_relations(n)
    assert report.passed, report.to_dict()


def test_relations_at_root_of_unity():
    assert check_relations(5, at=3).passed


def test_identity_is_neutral():
    f = generator(4, 2) + generator(4, 1).scale(3)
    assert tl_compose(identity(4), f) == f
    assert tl_compose(f, identity(4)) == f


def test_compose_arity_mismatch():
    with pytest.raises(ArityMismatch):
        tl_compose(identity(2), identity(3))


def test_tensor_identities():
    assert tl_tensor(identity(1), identity(1)) == identity(2)
    assert tl_tensor(identity(0), identity(3)) == identity(3)


def test_tensor_embeds_generators():
    assert tl_tensor(generator(2, 1), identity(1)) == generator(3, 1)
    assert tl_tensor(identity(1), generator(2, 1)) == generator(3, 2)


def test_interchange_law():
    e1 = generator(2, 1)
    f = e1 + identity(2).scale(2)
    g = generator(3, 1) - generator(3, 2)
    g2 = tl_compose(generator(3, 2), generator(3, 1))
    lhs = tl_compose(tl_tensor(f, g), tl_tensor(e1, g2))
    rhs = tl_tensor(tl_compose(f, e1), tl_compose(g, g2))
    assert lhs == rhs


#
# quantum integers
#
def test_quantum_integers():
    ctx = generic_context()
    assert _q(0) == 0
    assert _q(1) == 1
    assert _q(2) == ctx.kappa
    assert not (_q(3) - _q(2) ** 2 + 1)
    q = ctx.q
    assert _q(5) * (q - q ** (-1)) == q**5 - q ** (-5)


def test_quantum_integer_rejects_negative():
    with pytest.raises(ValueError):
        quantum_int(-1)


@pytest.mark.parametrize("d", [3, 5, 7])
def test_quantum_integer_vanishes_at_d(d):
    assert not quantum_int(d, at=d).value
    assert all(quantum_int(k, at=d).value for k in range(1, d))


def test_kappa_at_root_of_unity():
    ctx = root_of_unity_context(5)
    big = make_cyclotomic(10)
    assert ctx.kappa == -(root_of_unity(big, 4) + root_of_unity(big, 6))
    kappa = ctx.kappa
    assert not (kappa * kappa - kappa - 1)


def test_specialize_scalar_zero_denominator():
    q = generic_context().q
    with pytest.raises(NotInvertible):
        specialize_scalar(1 / (q**2 + 1), 2)


#
# Wenzl-Jones projectors
#
def test_wenzl_p1_is_identity():
    assert wenzl(1) == identity(1)


def test_wenzl_p2():
    ctx = generic_context()
    expected = identity(2) - generator(2, 1).scale(1 / ctx.kappa)
    assert wenzl(2) == expected


def test_wenzl_p3():
    e1, e2 = generator(3, 1), generator(3, 2)
    expected = (
        identity(3)
        - (e1 + e2).scale(_q(2) / _q(3))
        + (tl_compose(e1, e2) + tl_compose(e2, e1)).scale(1 / _q(3))
    )
    assert wenzl(3) == expected


def test_wenzl_p2_annihilated():
    p = wenzl(2)
    assert not tl_compose(p, generator(2, 1))
    assert not tl_compose(generator(2, 1), p)


def test_wenzl_trace_p2():
    kappa = generic_context().kappa
    assert markov_trace(wenzl(2)) == kappa**2 - 1


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_wenzl_verify(n):
    report = wenzl_verify(n)
    assert report.passed, report.to_dict()


@pytest.mark.parametrize("d", [3, 5])
def test_wenzl_at_root_of_unity(d):
    assert len(wenzl_sequence(d - 1, at=d)) == d - 1
    assert wenzl_verify(d - 1, at=d).passed
    with pytest.raises(UndefinedProjector) as e:
        wenzl(d, at=d)
    assert e.value.index == d


def test_wenzl_verify_reports_undefined_projector():
    report = wenzl_verify(3, at=3)
    assert not report.passed
    assert report.messages


def test_specialize_matches_direct_computation():
    assert specialize(wenzl(3), 5) == wenzl(3, at=5)
    with pytest.raises(ValueError):
        specialize(wenzl(2, at=5), 5)


#
# traces and words
#
@pytest.mark.parametrize("n", [0, 1, 3])
def test_trace_of_identity(n):
    ctx = generic_context()
    assert markov_trace(identity(n)) == ctx.kappa**n


def test_trace_of_generator():
    assert markov_trace(generator(2, 1)) == generic_context().kappa


def test_trace_needs_endomorphism():
    f = tl_tensor(identity(1), identity(1))
    cap = enumerate_pairings(2, 0)[0]
    with pytest.raises(ArityMismatch):
        markov_trace(TLMorphism.from_pairing(cap))
    assert markov_trace(f) == generic_context().kappa ** 2


def test_wenzl_words():
    words = [w for w, _ in in_words(wenzl(3))]
    assert words == [(), (1,), (2,), (1, 2), (2, 1)]
    assert format_word(()) == "1"
    assert format_word((2, 1)) == "e2e1"

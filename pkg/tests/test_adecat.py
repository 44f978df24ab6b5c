"""
Tests the adecat package.
"""
import shutil

import pytest

from mfcas import conf
from mfcas.adecat import (
    BHPolynomial,
    bh_classify,
    bh_degrees_and_charge,
    bh_transpose,
    catalog,
    catalog_names,
    charge_classes,
    check_end_spectrum,
    d_monoid_reduction,
    d_witness,
    dtranspose_witnesses,
    e6_algebra_report,
    galois_image,
    knorrer_sum,
    koszul_factor,
    load_data,
    monoid_object,
    monoid_signature,
    perm_qdim,
    random_sample,
    verify_checksums,
    verify_roots,
    verify_witness,
    weighted_potential,
    witness,
)
from mfcas.adecat.knorrer import imaginary_unit
from mfcas.adecat.store import data_dir
from mfcas.adjunction import qdim
from mfcas.algebra import make_cyclotomic, rational
from mfcas.exceptions import (
    ChecksumMismatch,
    InterfaceMismatch,
    NotSquareSystem,
    UnknownEntry,
    UnsupportedShape,
)
from mfcas.mfcore import permutation_mf
from mfcas.utils import powerset

long_check = pytest.mark.skipif(
    not conf.GENERAL["LONG_CHECKS"], reason="long check, set MFCAS_LONG=1"
)


#
# catalog
#
def test_catalog_e6():
    entry = catalog("E6")
    assert entry.potential == weighted_potential("x^3 + y^4")
    assert entry.charge == rational("5/6")
    assert entry.weights == {"x": rational("2/3"), "y": rational("1/2")}
    assert entry.milnor == 6


@pytest.mark.parametrize("d", [2, 3, 5, 8])
def test_catalog_d_series(d):
    entry = catalog(f"D{d + 1}")
    assert entry.potential == weighted_potential(f"x^{d} + x*y^2")
    assert entry.charge == 1 - rational(1) / d


def test_catalog_a1():
    entry = catalog("A_1")
    assert entry.potential == weighted_potential("x^2 + y^2")
    assert entry.charge == 0


@pytest.mark.parametrize("name", ["E9", "D2", "A0", "B3", "E"])
def test_catalog_unknown_names(name):
    with pytest.raises(UnknownEntry):
        catalog(name)


@pytest.mark.parametrize(
    "name,h", [("E6", 12), ("E7", 18), ("E8", 30), ("A11", 12), ("D7", 12), ("D10", 18)]
)
def test_coxeter_numbers(name, h):
    assert catalog(name).coxeter_number == h


def test_catalog_names():
    names = catalog_names(12)
    assert names[:3] == ["A1", "A2", "A3"]
    assert "D7" in names and "D8" not in names
    assert "E6" in names and "E7" not in names


def test_charge_classes_exceptional():
    classes = dict(charge_classes(30))
    assert classes[rational("5/6")] == ["A11", "D7", "E6"]
    assert classes[rational("8/9")] == ["A17", "D10", "E7"]
    assert classes[rational("14/15")] == ["A29", "D16", "E8"]


def test_charge_classes_even_d():
    for charge, members in charge_classes(30):
        if len(members) == 2:
            a, d = members
            assert a.startswith("A") and d.startswith("D")
            assert int(a[1:]) + 1 == 2 * (int(d[1:]) - 1)
        else:
            assert len(members) == 3
            assert members[2].startswith("E")


def test_charge_classes_cover_every_even_d():
    classes = charge_classes(20)
    pairs = {tuple(m[:2]) for _, m in classes}
    for d in range(4, 21, 2):
        assert (f"A{d - 1}", f"D{d // 2 + 1}") in pairs


#
# catalog files
#
def test_checksums_match():
    assert all(verify_checksums().values())
    assert set(verify_checksums()) == {"e6.json", "e6_algebra.json", "e7.json", "e8.json"}


def test_load_unknown_file():
    with pytest.raises(UnknownEntry):
        load_data("e9.json")


def test_checksum_mismatch(tmp_path, monkeypatch):
    target = tmp_path / "data"
    shutil.copytree(data_dir(), target)
    with open(target / "e6.json", "a") as f:
        f.write("\n")

    monkeypatch.setitem(conf.CATALOG, "DATA_DIR", target)
    monkeypatch.setitem(conf.CATALOG, "CHECKSUMS_FILE", target / "checksums.json")
    with pytest.raises(ChecksumMismatch):
        load_data("e6.json")
    with pytest.raises(ChecksumMismatch):
        witness("E6")
    assert load_data("e7.json")["source"] == "E7"


def test_missing_checksum_file(tmp_path, monkeypatch):
    monkeypatch.setitem(conf.CATALOG, "CHECKSUMS_FILE", tmp_path / "checksums.json")
    with pytest.raises(UnknownEntry):
        load_data("e6.json")


#
# witnesses
#
def test_witness_lookup():
    assert witness("D4").name == "D4~A5"
    assert witness("A5~D4").name == "D4~A5"
    assert witness(("E6", "A11")).target.name == "A11"
    assert witness("E7-A17").source.name == "E7"


@pytest.mark.parametrize("pair", ["E6~A5", "A5", "E9", "D4~E6", "A3 A5 D3"])
def test_witness_unknown_pairs(pair):
    with pytest.raises(UnknownEntry):
        witness(pair)


@pytest.mark.parametrize("b", range(2, 7))
def test_d_witness(b):
    report = verify_witness(d_witness(b))
    assert report.passed, report.to_dict()


def test_d_witness_rejects_small_b():
    with pytest.raises(UnknownEntry):
        d_witness(1)


@pytest.mark.parametrize("name", ["E6", "E7"])
def test_e_witness(name):
    report = verify_witness(witness(name))
    assert report.passed, report.to_dict()


@long_check
def test_e8_witness():
    report = verify_witness(witness("E8"))
    assert report.passed, report.to_dict()


def test_witness_charges_and_parity():
    for w in [d_witness(2), witness("E6"), witness("E7")]:
        assert w.source.charge == w.target.charge
        assert len(w.X.left) % 2 == len(w.X.right) % 2


def test_e6_expected_values():
    w = witness("E6")
    t = w.field.gen
    assert w.expected.left == w.field.one
    assert w.expected.right == 3 * (1 - t)


@pytest.mark.parametrize("b", [2, 3])
def test_d_witness_all_roots(b):
    report = verify_roots(d_witness(b))
    assert report.passed, report.to_dict()
    assert len(report.roots) == 2 * b


@pytest.mark.parametrize("name,degree", [("E6", 2), ("E7", 3), ("E8", 4)])
def test_e_witness_galois_orbit(name, degree):
    report = verify_roots(witness(name))
    assert report.passed, report.to_dict()
    assert len(report.roots) == degree


def test_e6_witness_at_every_root():
    report = verify_roots(witness("E6"), full=True)
    assert report.passed, report.to_dict()


@pytest.mark.parametrize("b", [2, 3, 4])
def test_d_end_spectrum(b):
    result = check_end_spectrum(d_witness(b))
    assert result["passed"], result
    assert result["dimension"] == 2 * b


def test_e6_end_spectrum():
    result = check_end_spectrum(witness("E6"))
    assert result["passed"], result
    assert result["dimension"] == 16


@long_check
@pytest.mark.parametrize("name,dimension", [("E7", 27), ("E8", 60)])
def test_e_end_spectrum(name, dimension):
    result = check_end_spectrum(witness(name))
    assert result["passed"], result
    assert result["dimension"] == dimension


#
# the monoid X^v (x) X
#
def test_perm_qdim_examples():
    K4 = make_cyclotomic(4)
    assert perm_qdim(4, [0]).left == K4.one
    assert perm_qdim(4, [0]).right == K4.one
    assert not perm_qdim(4, [0, 2]).left
    assert not perm_qdim(4, [0, 2]).right
    assert not perm_qdim(5, range(5)).left


@pytest.mark.parametrize("d", [3, 4, 5])
def test_perm_qdim_matches_residues(d):
    for J in powerset(range(d)):
        found = qdim(permutation_mf(d, J))
        expected = perm_qdim(d, J)
        assert found.left == expected.left, J
        assert found.right == expected.right, J


def test_galois_image():
    assert galois_image(12, range(-3, 4), 5) == (0, 2, 3, 5, 7, 9, 10)
    assert galois_image(12, [0], 7) == (0,)
    assert galois_image(6, [1, 2], -1) == (4, 5)


@pytest.mark.parametrize("b", [2, 3, 4])
def test_d_monoid_signature(b):
    report = monoid_signature(d_witness(b))
    assert report.passed, report.to_dict()
    assert report.decomposition[0] == (0,)


@pytest.mark.parametrize(
    "name,nus", [("E6", [1, 5]), ("E7", [1, 5, 7]), ("E8", [1, 7, 11, 13])]
)
def test_e_monoid_signature(name, nus):
    w = witness(name)
    for nu in nus:
        report = monoid_signature(w, nu)
        assert report.passed, report.to_dict()


def test_e7_monoid_decompositions():
    w = witness("E7")
    assert [len(S) for S in w.monoid[1]] == [1, 9, 17]
    report = monoid_signature(w, 5)
    assert report.galois


@pytest.mark.parametrize("nu", [1, 5])
def test_e6_algebra_isomorphism(nu):
    report = e6_algebra_report(nu)
    assert report.passed, report.to_dict()
    assert report.checks["closed"]
    assert report.checks["degree_zero"]
    assert report.checks["iso"]
    assert report.checks["target_sets"]


def test_e6_decomposition_at_sigma5():
    report = e6_algebra_report(5)
    sets = [set(S) for S in report.decomposition]
    assert sets == [{0}, {j % 12 for j in (-5, -3, -2, 0, 2, 3, 5)}]


def test_monoid_object_dispatch():
    assert "iso" in monoid_object("E6").checks
    assert monoid_object("E7").passed
    assert not monoid_object("D4").checks


@pytest.mark.parametrize("b", [2, 3])
def test_d_monoid_reduction(b):
    report = d_monoid_reduction(b)
    assert report.passed, report.to_dict()
    assert report.values["end_dimension"] > 0


#
# Knoerrer periodicity
#
def test_koszul_factor():
    K = koszul_factor()
    q = qdim(K)
    i = imaginary_unit(K.field)
    assert q.left == -i * rational("1/2")
    assert q.left and q.right


def test_knorrer_zero_sum():
    report = knorrer_sum(d_witness(2), 0)
    assert report.passed
    assert report.sign == 1
    assert report.total == report.witness


@pytest.mark.parametrize("b", [2, 3])
def test_knorrer_d_series(b):
    report = knorrer_sum(d_witness(b), "p^2 + q^2")
    assert report.passed, report.to_dict()
    assert report.sign in (1, -1)


def test_knorrer_e6():
    report = knorrer_sum(witness("E6"), "p^2 + q^2")
    assert report.passed, report.to_dict()


def test_knorrer_variable_clash():
    with pytest.raises(InterfaceMismatch):
        knorrer_sum(d_witness(2), "x^2 + q^2")


@pytest.mark.parametrize("U", ["p^2 + 2*q^2", "p^3 + q^2", "p^2", "p^2 + q^2 + r^2"])
def test_knorrer_unsupported_sums(U):
    with pytest.raises(UnsupportedShape):
        knorrer_sum(d_witness(2), U)


#
# Berglund-Huebsch transposition
#
@pytest.mark.parametrize("d", range(2, 11))
def test_transpose_of_d_series(d):
    T = bh_transpose(catalog(f"D{d + 1}").potential)
    assert T.exponents == ((d, 1), (0, 2))
    assert T.to_poly() == weighted_potential(f"x^{d}*y + y^2")


@pytest.mark.parametrize("name", ["A4", "E6", "E8"])
def test_transpose_fixes_fermat(name):
    W = BHPolynomial.from_poly(catalog(name).potential)
    assert bh_transpose(W) == W


def test_transpose_of_e7_after_exchange():
    W = BHPolynomial.from_poly(catalog("E7").potential)
    T = bh_transpose(W)
    assert T != W
    swapped = tuple(tuple(row[::-1]) for row in T.exponents[::-1])
    assert swapped == W.exponents


def test_transpose_needs_square_system():
    with pytest.raises(NotSquareSystem):
        BHPolynomial.from_poly(weighted_potential("x^2 + y^2 + x*y"))


def test_classify_fermat():
    result = bh_classify(weighted_potential("x^3 + y^4"))
    assert result.invertible
    assert result.kinds() == ["fermat", "fermat"]


def test_classify_chain():
    result = bh_classify(weighted_potential("x^3*y + y^2"))
    assert result.invertible
    (s,) = result.summands
    assert s.kind == "chain"
    assert s.variables == ("x", "y")
    assert s.exponents == (3, 2)


def test_classify_loop():
    W = weighted_potential("x^2*y + y^2*z + z^2*x", names=("x", "y", "z"))
    result = bh_classify(W, check_jacobi=True)
    assert result.invertible
    (s,) = result.summands
    assert s.kind == "loop"
    assert s.exponents == (2, 2, 2)


def test_classify_not_invertible():
    singular = BHPolynomial(("x", "y"), (1, 1), ((2, 2), (1, 1)))
    result = bh_classify(singular)
    assert not result.invertible
    assert "singular" in result.reason

    result = bh_classify(BHPolynomial(("x", "y"), (1, 1), ((3, 0), (2, 1))))
    assert not result.invertible
    assert result.reason


def test_classify_checks_jacobi_rings():
    assert bh_classify(weighted_potential("x^3*y + y^2"), check_jacobi=True).invertible


def test_chain_degrees():
    degrees = bh_degrees_and_charge(weighted_potential("x^3*y + y^2"))
    assert degrees.weights == {"x": rational("1/3"), "y": rational(1)}
    assert degrees.transpose_weights == {"x": rational("2/3"), "y": rational("2/3")}
    assert degrees.passed


def test_loop_degrees():
    degrees = bh_degrees_and_charge(weighted_potential("x^2*y + y^2*x"))
    assert degrees.weights == {"x": rational("2/3"), "y": rational("2/3")}
    assert degrees.passed

    degrees = bh_degrees_and_charge(BHPolynomial(("x", "y"), (1, 1), ((3, 1), (1, 2))))
    assert degrees.weights == {"x": rational("2/5"), "y": rational("4/5")}
    assert degrees.passed


@pytest.mark.parametrize("name", catalog_names(12) + ["E7", "E8"])
def test_catalog_charges_survive_transposition(name):
    entry = catalog(name)
    degrees = bh_degrees_and_charge(entry.potential)
    assert degrees.passed, degrees.to_dict()
    assert degrees.charge == entry.charge


def test_random_invertible_charges():
    sample = random_sample(25, conf.GENERAL["RANDOM_SEED"])
    assert len(sample) == 25
    for W in sample:
        assert W.nvars <= 4
        degrees = bh_degrees_and_charge(W)
        assert degrees.passed, (str(W), degrees.to_dict())


def test_random_sample_is_reproducible():
    first = random_sample(5, 7)
    second = random_sample(5, 7)
    assert [W.exponents for W in first] == [W.exponents for W in second]


@pytest.mark.parametrize("d", [2, 3, 4])
def test_dtranspose_witnesses(d):
    first, second = dtranspose_witnesses(d)
    assert first.passed, first.to_dict()
    assert second.passed, second.to_dict()
    assert first.values["sign"] == -1
    assert second.values["sign"] == 1

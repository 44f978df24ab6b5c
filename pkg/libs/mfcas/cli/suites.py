"""
The verification suites. Every suite is a list of independent checks; each
check function returns a report (or a dictionary) with a ``passed`` entry.

Checks marked long (the E7 and E8 endomorphism spaces and the E8 witness)
take minutes each and only run with --long. Everything else runs by default.
"""
from __future__ import annotations

from mfcas.adecat import (
    BHPolynomial,
    bh_degrees_and_charge,
    bh_transpose,
    catalog,
    catalog_names,
    check_end_spectrum,
    d_monoid_reduction,
    dtranspose_witnesses,
    knorrer_sum,
    monoid_object,
    perm_qdim,
    random_sample,
    safe_verify,
    verify_roots,
    witness,
)
from mfcas.adjunction import check_zigzag, qdim, un_pair
from mfcas.cli.report import Check
from mfcas.exceptions import UndefinedProjector
from mfcas.homotopy import fusion_decomposition, fusion_witness, hom_spectrum
from mfcas.jacobi import (
    ResidueFunctional,
    hessian,
    jacobi_ring,
    residue,
    transformation_law_residue,
)
from mfcas.mfcore import monomial_mf, permutation_interval_mf, permutation_mf
from mfcas.templieb import check_relations, context, quantum_int, wenzl, wenzl_verify
from mfcas.utils import powerset

D_RANGE = range(2, 7)
E_NAMES = ("E6", "E7", "E8")
MONOID_NUS = {"E6": (1, 5), "E7": (1, 5, 7), "E8": (1, 7, 11, 13)}
RESIDUE_ENTRIES = ("A5", "D5", "E6", "E7", "E8")
BH_SAMPLE_SIZE = 25


#
# ade
#
def check_witness(pair: str):
    return safe_verify(witness(pair))


def check_roots(pair: str, full: bool = False):
    return verify_roots(witness(pair), full=full)


def check_end(pair: str):
    return check_end_spectrum(witness(pair))


def check_monoid(pair: str, nu: int = 1):
    return monoid_object(pair, nu)


def check_monoid_reduction(b: int):
    return d_monoid_reduction(b)


def check_knorrer(pair: str):
    return knorrer_sum(witness(pair), "p^2 + q^2")


def check_residue(name: str) -> dict:
    """Hessian normalization against the transformation law, and Res[Hess W] = mu."""
    W = catalog(name).potential
    data = jacobi_ring(W)
    functional = ResidueFunctional(W, data=data)
    agree = all(
        functional(W.ring.monomial(e)) == transformation_law_residue(W.ring.monomial(e), W)
        for e in data.basis
    )
    value = residue(hessian(W), W)
    return {
        "name": name,
        "mu": data.mu,
        "residue_hessian": str(value),
        "algorithms_agree": agree,
        "passed": agree and value == data.mu,
    }


def ade_checks(seed: int = None) -> list:
    checks = []
    d_pairs = [(b, f"D{b + 1}") for b in D_RANGE]
    for _, pair in d_pairs:
        checks.append(Check(f"ade/witness/{pair}", check_witness, (pair,)))
    for name in E_NAMES:
        checks.append(Check(f"ade/witness/{name}", check_witness, (name,), long=name == "E8"))

    for b, pair in d_pairs:
        checks.append(Check(f"ade/roots/{pair}", check_roots, (pair,)))
    checks.append(Check("ade/roots/E6", check_roots, ("E6", True)))
    for name in E_NAMES[1:]:
        checks.append(Check(f"ade/roots/{name}", check_roots, (name,)))

    for _, pair in d_pairs:
        checks.append(Check(f"ade/end/{pair}", check_end, (pair,)))
    for name in E_NAMES:
        checks.append(Check(f"ade/end/{name}", check_end, (name,), long=name != "E6"))

    for _, pair in d_pairs:
        checks.append(Check(f"ade/monoid/{pair}", check_monoid, (pair,)))
    for name in E_NAMES:
        for nu in MONOID_NUS[name]:
            checks.append(Check(f"ade/monoid/{name}/nu{nu}", check_monoid, (name, nu)))
    for b in (2, 3):
        checks.append(Check(f"ade/monoid/D{b + 1}/reduced", check_monoid_reduction, (b,)))

    for pair in ("D3", "D4", "E6"):
        checks.append(Check(f"ade/knorrer/{pair}", check_knorrer, (pair,)))
    for name in RESIDUE_ENTRIES:
        checks.append(Check(f"ade/residue/{name}", check_residue, (name,)))
    return checks


#
# fusion
#
def check_fusion(d: int, a: int, b: int, mu: int) -> dict:
    """The fusion witness of P_{a:1} (x) P_{b:mu} and the predicted labels."""
    _, _, report = fusion_witness(d, a, b, mu)
    labels = fusion_decomposition(d, a, 1, b, mu)
    expected = [
        (m, nu)
        for m, nu in (((a + b + 1) % d, mu - 1), ((a + b) % d, mu + 1))
        if nu <= d - 2
    ]
    out = report.to_dict()
    out["decomposition"] = [list(s) for s in labels]
    out["passed"] = report.passed and labels == expected
    return out


def check_hom_formula(d: int, m: int, l: int) -> dict:
    """dim HMF(M_m, M_l) = min(l, m, d - l, d - m)."""
    spectrum = hom_spectrum(monomial_mf(d, m), monomial_mf(d, l))
    found = sum(dim for _, dim in spectrum)
    expected = min(l, m, d - l, d - m)
    return {"d": d, "m": m, "l": l, "dimension": found, "expected": expected, "passed": found == expected}


def fusion_checks(seed: int = None) -> list:
    checks = []
    for d in (3, 5, 7):
        for a in range(d):
            for b in range(d):
                for mu in range(1, d - 1):
                    checks.append(
                        Check(f"fusion/d{d}/a{a}/b{b}/mu{mu}", check_fusion, (d, a, b, mu))
                    )
    for d in range(2, 9):
        for m in range(1, d):
            for l in range(1, d):
                checks.append(
                    Check(f"fusion/hom/d{d}/m{m}/l{l}", check_hom_formula, (d, m, l))
                )
    return checks


#
# tl
#
def check_wenzl(n: int, at: int = None):
    return wenzl_verify(n, at)


def check_tl_relations(n: int, at: int = None):
    return check_relations(n, at)


def check_quantum_identity(at: int = None) -> dict:
    """[3] - [2]^2 + 1 = 0."""
    ctx = context(at)
    two = quantum_int(2, at).value
    value = quantum_int(3, at).value - two * two + ctx.one
    return {"at": at, "value": str(value), "passed": not value}


def check_undefined_projector(d: int) -> dict:
    """At q = zeta_2d the projectors exist up to p_(d-1) and p_d is undefined."""
    below = wenzl_verify(d - 1, at=d)
    index = None
    try:
        wenzl(d, at=d)
    except UndefinedProjector as e:
        index = e.index
    return {
        "d": d,
        "below": below.to_dict(),
        "undefined_at": index,
        "passed": below.passed and index == d,
    }


def tl_checks(seed: int = None) -> list:
    checks = [Check(f"tl/wenzl/n{n}", check_wenzl, (n,)) for n in range(1, 7)]
    checks += [Check(f"tl/relations/n{n}", check_tl_relations, (n,)) for n in range(2, 6)]
    checks.append(Check("tl/quantum-identity", check_quantum_identity))
    for d in (3, 5):
        checks.append(Check(f"tl/quantum-identity/d{d}", check_quantum_identity, (d,)))
        checks.append(Check(f"tl/undefined/d{d}", check_undefined_projector, (d,)))
    return checks


#
# adjunction
#
def check_perm_qdims(d: int) -> dict:
    """Residue quantum dimensions of every P_J against the root-of-unity sums."""
    mismatches = []
    count = 0
    for J in powerset(range(d)):
        count += 1
        found = qdim(permutation_mf(d, J))
        expected = perm_qdim(d, J)
        if found.left != expected.left or found.right != expected.right:
            mismatches.append(list(J))
    return {"d": d, "subsets": count, "mismatches": mismatches, "passed": not mismatches}


def check_zigzag_interval(d: int, a: int, lam: int):
    return check_zigzag(permutation_interval_mf(d, a, lam, graded=True))


def check_zigzag_control(d: int) -> dict:
    """The zig-zag check must reject the evaluation with a flipped sign."""
    report = check_zigzag(permutation_mf(d, [0], graded=True), negative_control=True)
    out = report.to_dict()
    out["control"] = True
    out["passed"] = not report.passed
    return out


def check_un_pair(d: int):
    return un_pair(d)[3]


def adjunction_checks(seed: int = None) -> list:
    checks = [Check(f"adjunction/qdim/d{d}", check_perm_qdims, (d,)) for d in (3, 4, 5)]
    for d in (3, 4, 5):
        for a in range(d):
            for lam in range(min(3, d - 1)):
                checks.append(
                    Check(f"adjunction/zigzag/d{d}/a{a}/lam{lam}", check_zigzag_interval, (d, a, lam))
                )
        checks.append(Check(f"adjunction/zigzag/d{d}/control", check_zigzag_control, (d,)))
    for d in (3, 5, 7):
        checks.append(Check(f"adjunction/un/d{d}", check_un_pair, (d,)))
    return checks


#
# bh
#
def check_bh_transpose_d(d: int) -> dict:
    """(x^d + x y^2)^T = x^d y + y^2."""
    T = bh_transpose(catalog(f"D{d + 1}").potential)
    return {"d": d, "transpose": str(T), "passed": T.exponents == ((d, 1), (0, 2))}


def check_bh_catalog(name: str) -> dict:
    entry = catalog(name)
    degrees = bh_degrees_and_charge(entry.potential)
    out = degrees.to_dict()
    out["name"] = name
    out["passed"] = degrees.passed and degrees.charge == entry.charge
    return out


def check_bh_random(W: BHPolynomial) -> dict:
    out = bh_degrees_and_charge(W).to_dict()
    out["polynomial"] = str(W)
    return out


def check_dtranspose(d: int) -> dict:
    reports = dtranspose_witnesses(d)
    return {
        "d": d,
        "witnesses": [r.to_dict() for r in reports],
        "passed": all(r.passed for r in reports),
    }


def bh_checks(seed: int = 0) -> list:
    checks = [Check(f"bh/transpose/D{d + 1}", check_bh_transpose_d, (d,)) for d in range(2, 11)]
    for name in catalog_names(12) + ["E7", "E8"]:
        checks.append(Check(f"bh/catalog/{name}", check_bh_catalog, (name,)))
    for i, W in enumerate(random_sample(BH_SAMPLE_SIZE, seed)):
        checks.append(Check(f"bh/random/{i:02d}", check_bh_random, (W,)))
    for d in (2, 3, 4):
        checks.append(Check(f"bh/dtranspose/d{d}", check_dtranspose, (d,)))
    return checks


SUITES = {
    "ade": ade_checks,
    "fusion": fusion_checks,
    "tl": tl_checks,
    "adjunction": adjunction_checks,
    "bh": bh_checks,
}


def suite_checks(suite: str, seed: int = 0) -> list:
    """
    The checks of one suite, or of every suite for "all".

    Raises:
        ValueError: for an unknown suite.
    """
    if suite == "all":
        return [c for build in SUITES.values() for c in build(seed)]
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}, expected one of {sorted(SUITES)} or 'all'")
    return SUITES[suite](seed)

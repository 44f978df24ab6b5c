"""
Explicit orbifold equivalences between simple singularities.

A witness is a graded rank-two (rank-four for E8) factorization X of
W(x, y) - V(u, v) with nonvanishing quantum dimensions, where W is the D or
E potential and V = u^N + v^2 the A potential of the same central charge.
The parameters s and t of the solutions only enter through z = s u, so every
witness is stored over Q(t) in the coordinate z; the u-frame object is
recovered with ``u_frame`` once s is available in the coefficient field.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from mfcas.adecat.catalog import CatalogEntry, catalog, parse_name
from mfcas.adecat.store import load_data
from mfcas.adjunction import QuantumDimensions, qdim
from mfcas.algebra import (
    RATIONALS,
    WeightedRing,
    adjugate,
    field_hom,
    galois_apply,
    make_cyclotomic,
    rational,
    root_of_unity,
)
from mfcas.exceptions import (
    GradingViolation,
    MfcasError,
    ParseError,
    SquareMismatch,
    UnknownEntry,
)
from mfcas.homotopy import hom_spectrum
from mfcas.log import get_logger
from mfcas.mfcore import GradingAssignment, MatrixFactorization
from mfcas.mfcore import matrix as mx
from mfcas.mfcore.io import field_from_spec

logger = get_logger(__name__)

WITNESS_FILES = {"E6": "e6.json", "E7": "e7.json", "E8": "e8.json"}


@dataclass
class OrbifoldWitness:
    """
    A witness X in the z-frame, with the data it is checked against.

    ``frame_power`` N and ``frame_value`` c encode s^N = c. ``expected`` are
    the z-frame quantum dimensions; in the u-frame they read s * left and
    right / s. ``cft_value`` is a fixed root t of the parameter equation in
    Q(zeta_cft_order), and ``monoid`` maps a Galois exponent nu to the index
    sets S of the decomposition of the monoid X^v (x) X into permutation
    factorizations P_S at t = sigma_nu(cft_value).
    """

    name: str
    source: CatalogEntry
    target: CatalogEntry
    X: MatrixFactorization
    frame_power: int
    frame_value: object
    expected: QuantumDimensions
    end_spectrum: list
    cft_order: int = None
    cft_value: object = None
    monoid: dict = field(default_factory=dict)

    @property
    def field(self):
        return self.X.field

    @property
    def order(self) -> int:
        """The cyclotomic order of the monoid decomposition: N of V = u^N + v^2."""
        return self.frame_power

    def u_frame_qdims(self, s) -> QuantumDimensions:
        return QuantumDimensions(s * self.expected.left, s.inverse() * self.expected.right)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "source": self.source.name,
            "target": self.target.name,
            "field": repr(self.field),
            "frame": f"z = s*u, s^{self.frame_power} = {self.frame_value}",
            "qdim_l": f"({self.expected.left})*s",
            "qdim_r": f"({self.expected.right})/s",
            "end_dimension": sum(d for _, d in self.end_spectrum),
        }


#
# construction
#
def spectrum_from_ranges(unit, ranges) -> list:
    """Sorted (charge, dimension) pairs for charges i * unit, i in each range."""
    unit = rational(unit)
    counts = {}
    for lo, hi in ranges:
        for i in range(lo, hi + 1):
            counts[unit * i] = counts.get(unit * i, 0) + 1
    return sorted(counts.items())


def d_witness(b: int) -> OrbifoldWitness:
    """
    D_(b+1) ~ A_(2b-1): with z = s u and s^(2b) = 1,

        d1 = [[x - z^2,  v + y z], [v - y z,  (x^b - z^2b) / (x - z^2) + y^2]]

    and d0 its adjugate; the grading has alpha = 0.
    """
    if b < 2:
        raise UnknownEntry(f"the D-series witness needs b >= 2, got {b}")
    ring = WeightedRing(
        [
            ("x", rational(2) / b),
            ("y", 1 - rational(1) / b),
            ("z", rational(1) / b),
            ("v", rational(1)),
        ]
    )
    x, y, z, v = ring.gens()
    corner = (x**b - z ** (2 * b)).exact_div(x - z**2) + y**2
    d1 = [[x - z**2, v + y * z], [v - y * z, corner]]
    shift = rational(2) / b - 1
    X = MatrixFactorization(
        ring,
        mx.as_matrix(d1, ring),
        mx.as_matrix(adjugate(d1), ring),
        x**b + x * y**2,
        z ** (2 * b) + v**2,
        ("x", "y"),
        ("z", "v"),
        (),
        GradingAssignment([0, shift], [shift, 0]),
        name=f"X_D{b + 1}",
    )
    d = 2 * b
    return OrbifoldWitness(
        name=f"D{b + 1}~A{d - 1}",
        source=catalog(f"D{b + 1}"),
        target=catalog(f"A{d - 1}"),
        X=X,
        frame_power=d,
        frame_value=rational(1),
        expected=QuantumDimensions(rational(-2), rational(-1)),
        end_spectrum=spectrum_from_ranges(rational(1) / b, [(0, d - 2), (b - 1, b - 1)]),
        monoid={1: [(0,), tuple(j for j in range(-(b - 1), b))]},
    )


def _frame_potential(text: str, ring: WeightedRing, frame: dict, scale):
    """
    Rewrites a polynomial in u as one in z = s u, given s^N = scale: u^(kN)
    becomes z^(kN) / scale^k.
    """
    u, z, N = frame["variable"], frame["rescaled"], int(frame["power"])
    frame_ring = ring.extend([(u, ring.weight(z))])
    p = frame_ring.parse(text)
    inverse = 1 / scale
    out = ring.zero()
    for (k,), part in p.coefficient_in([u]).items():
        if k % N:
            raise ParseError(f"u^{k} is not a power of u^{N}", location="potential_right")
        out = out + part.to_ring(ring) * ring.var(z) ** k * inverse ** (k // N)
    return out


def _parse_ring(data: dict):
    field_ = field_from_spec(data.get("field"))
    variables, roles = [], {"left": [], "right": []}
    for k, v in enumerate(data["vars"]):
        role = v.get("role")
        if role not in roles:
            raise ParseError(f"a witness variable is left or right, got {role!r}", location=f"vars[{k}]")
        variables.append((v["name"], rational(v["weight"])))
        roles[role].append(v["name"])
    return WeightedRing(variables, field_), tuple(roles["left"]), tuple(roles["right"])


def witness_from_dict(data: dict) -> OrbifoldWitness:
    """
    Builds a witness from its catalog record. The factorization is not
    validated here; see ``verify_witness``.
    """
    ring, left, right = _parse_ring(data)
    K = ring.field
    frame = data["frame"]
    scale = K.parse(str(frame["value"]))

    try:
        d1 = [[ring.parse(str(e)) for e in row] for row in data["d1"]]
    except ParseError as e:
        raise ParseError(str(e), location=f"{data.get('name')}: d1") from e
    W = ring.parse(data["potential_left"])
    V = _frame_potential(data["potential_right"], ring, frame, scale)

    d0 = adjugate(d1)
    if data["d0"] == "adjugate_over_potential":
        potential = W - V
        d0 = [[e.exact_div(potential) for e in row] for row in d0]
    elif data["d0"] != "adjugate":
        raise ParseError(f"unknown d0 rule {data['d0']!r}", location="d0")

    X = MatrixFactorization(
        ring,
        mx.as_matrix(d1, ring),
        mx.as_matrix(d0, ring),
        W,
        V,
        left,
        right,
        (),
        GradingAssignment(data["grading"]["even"], data["grading"]["odd"]),
        name=f"X_{data['source']}",
    )

    cft = data.get("cft_point")
    cft_order = cft_value = None
    if cft is not None:
        cft_order = int(cft["cyclotomic"])
        cft_value = make_cyclotomic(cft_order).parse(cft["t"])

    return OrbifoldWitness(
        name=data["name"],
        source=catalog(data["source"]),
        target=catalog(data["target"]),
        X=X,
        frame_power=int(frame["power"]),
        frame_value=scale,
        expected=QuantumDimensions(K.parse(data["qdim"]["left"]), K.parse(data["qdim"]["right"])),
        end_spectrum=spectrum_from_ranges(
            data["end_spectrum"]["unit"], data["end_spectrum"]["ranges"]
        ),
        cft_order=cft_order,
        cft_value=cft_value,
        monoid={int(nu): [tuple(S) for S in sets] for nu, sets in data.get("monoid", {}).items()},
    )


def witness(pair) -> OrbifoldWitness:
    """
    The witness of an equivalent pair, e.g. "E6", ("E6", "A11") or "D4~A5".
    The A member may be omitted; when it is given it must match.

    Raises:
        UnknownEntry: for pairs without a witness.
    """
    names = pair.replace("~", " ").replace("-", " ").split() if isinstance(pair, str) else list(pair)
    parsed = [parse_name(n) for n in names]
    others = [(f, n) for f, n in parsed if f != "A"]
    if len(others) != 1 or len(parsed) > 2:
        raise UnknownEntry(f"{pair!r} is not a pair of an A and a D or E singularity")

    family, n = others[0]
    key = f"{family}{n}"
    if family == "D":
        w = d_witness(n - 1)
    elif key in WITNESS_FILES:
        w = witness_from_dict(load_data(WITNESS_FILES[key]))
    else:
        raise UnknownEntry(f"no witness for {key}")

    a_names = [f"{f}{k}" for f, k in parsed if f == "A"]
    if a_names and a_names[0] != w.target.name:
        raise UnknownEntry(f"{key} is equivalent to {w.target.name}, not {a_names[0]}")
    return w


def all_witnesses(b_values=range(2, 7)) -> list:
    return [d_witness(b) for b in b_values] + [witness(k) for k in WITNESS_FILES]


#
# verification
#
@dataclass
class WitnessReport:
    name: str
    necessary: bool = False
    square: bool = False
    grading: bool = False
    qdims: bool = False
    nonvanishing: bool = False
    values: dict = field(default_factory=dict)
    messages: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.necessary and self.square and self.grading and self.qdims and self.nonvanishing

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "necessary": self.necessary,
            "square": self.square,
            "grading": self.grading,
            "qdims": self.qdims,
            "nonvanishing": self.nonvanishing,
            "values": dict(self.values),
            "messages": list(self.messages),
            "passed": self.passed,
        }


def _check_factorization(X: MatrixFactorization, report) -> None:
    try:
        X.check_square()
        report.square = True
    except SquareMismatch as e:
        report.messages.append(str(e))
    try:
        X.check_grading()
        report.grading = True
    except GradingViolation as e:
        report.messages.append(str(e))


def verify_witness(w: OrbifoldWitness) -> WitnessReport:
    """
    Checks that X is a graded factorization of W - V, that its quantum
    dimensions are the recorded ones and nonzero, and the necessary
    conditions of an orbifold equivalence: equal central charges and equal
    numbers of variables modulo 2.
    """
    report = WitnessReport(w.name)
    report.necessary = w.source.charge == w.target.charge and (
        len(w.X.left) - len(w.X.right)
    ) % 2 == 0
    if not report.necessary:
        report.messages.append(
            f"central charges {w.source.charge} and {w.target.charge} differ"
        )

    _check_factorization(w.X, report)
    if not report.square:
        return report

    found = qdim(w.X)
    report.values = {
        "qdim_l": f"({found.left})*s",
        "qdim_r": f"({found.right})/s",
        "s_power": f"s^{w.frame_power} = {w.frame_value}",
    }
    report.qdims = found.left == w.expected.left and found.right == w.expected.right
    if not report.qdims:
        report.messages.append(
            f"qdims ({found.left}, {found.right}), expected "
            f"({w.expected.left}, {w.expected.right})"
        )
    report.nonvanishing = bool(found.left) and bool(found.right)
    logger.info(f"{w.name}: {'passed' if report.passed else 'failed'}")
    return report


def end_spectrum(w: OrbifoldWitness) -> list:
    """(charge, dimension) of the even endomorphisms of X up to homotopy."""
    return hom_spectrum(w.X, w.X, parity=0)


def check_end_spectrum(w: OrbifoldWitness) -> dict:
    found = end_spectrum(w)
    return {
        "name": w.name,
        "dimension": sum(d for _, d in found),
        "expected_dimension": sum(d for _, d in w.end_spectrum),
        "spectrum": [(str(c), d) for c, d in found],
        "passed": found == w.end_spectrum,
    }


#
# frames and Galois conjugates
#
def specialize_parameter(M: MatrixFactorization, target, image) -> MatrixFactorization:
    """Sends the generator t of M's coefficient field to ``image`` in ``target``."""
    ring = M.ring.with_field(target)
    out = M.map_entries(
        lambda p: p.map_coefficients(lambda c: field_hom(c, target, image), ring), ring
    )
    out.name = f"{M.name}|t"
    return out


def modulus_at(K, value):
    """m(value) for the modulus m of the top level of K."""
    acc = value.field.zero if hasattr(value, "field") else rational(0)
    for c in reversed(K.modulus):
        acc = acc * value + c
    return acc


def u_frame(w: OrbifoldWitness, s, t=None) -> MatrixFactorization:
    """
    The witness in the coordinate u = z / s.

    Args:
        s: a field element with s^N = c(t).
        t: the image of the parameter t in the field of s; needed when the
            witness depends on t.

    Raises:
        ValueError: when s^N differs from c(t).
    """
    target = s.field
    X = w.X
    c = w.frame_value
    if w.field is RATIONALS:
        X = X.with_field(target)
        c = target.convert(c)
    else:
        X = specialize_parameter(X, target, t)
        c = field_hom(c, target, t)
    if s ** w.frame_power != c:
        raise ValueError(f"s^{w.frame_power} = {s ** w.frame_power} differs from {c}")

    z = X.right[0]
    scaled = X.map_entries(lambda p: p.scale_variables({z: s}))
    out = scaled.rename({z: "u"})
    out.name = f"{w.X.name}_u"
    return out


@dataclass
class GaloisReport:
    name: str
    roots: dict = field(default_factory=dict)
    complete: bool = False
    messages: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.complete and all(self.roots.values())

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "roots": {str(k): v for k, v in self.roots.items()},
            "complete": self.complete,
            "messages": list(self.messages),
            "passed": self.passed,
        }


def units(n: int) -> list:
    return [nu for nu in range(1, n) if math.gcd(nu, n) == 1]


def verify_roots(w: OrbifoldWitness, full: bool = False) -> GaloisReport:
    """
    Checks the witness at every solution of the parameter equations.

    For the D series these are the u-frame objects with s = zeta_2b^k for all
    k, which are validated and whose quantum dimensions must be (-2s, -1/s).
    For E witnesses the roots t = sigma_nu(t_cft) are generated by the
    Galois group of Q(zeta_n): each must solve the modulus, the orbit must
    reach every root, and the quantum dimensions must stay nonzero. With
    ``full`` the specialized factorization is revalidated as well.
    """
    report = GaloisReport(w.name)
    if w.field is RATIONALS:
        K = make_cyclotomic(w.frame_power)
        for k in range(w.frame_power):
            s = root_of_unity(K, k)
            X = u_frame(w, s)
            sub = WitnessReport(f"{w.name} s=zeta^{k}")
            _check_factorization(X, sub)
            q = qdim(X) if sub.square else None
            expected = w.u_frame_qdims(s)
            ok = sub.square and sub.grading and q.left == expected.left and q.right == expected.right
            report.roots[k] = ok
            report.messages.extend(sub.messages)
        report.complete = True
        return report

    K = make_cyclotomic(w.cft_order)
    images = {}
    for nu in units(w.cft_order):
        t = galois_apply(nu, w.cft_value)
        if t in images.values():
            continue
        images[nu] = t
        ok = not modulus_at(w.field, t)
        if not ok:
            report.messages.append(f"sigma_{nu}(t_cft) does not solve the modulus")
        ql = field_hom(w.expected.left, K, t)
        qr = field_hom(w.expected.right, K, t)
        ok = ok and bool(ql) and bool(qr)
        if ok and full:
            X = specialize_parameter(w.X, K, t)
            sub = WitnessReport(f"{w.name} nu={nu}")
            _check_factorization(X, sub)
            found = qdim(X) if sub.square else None
            ok = sub.square and sub.grading and found.left == ql and found.right == qr
            report.messages.extend(sub.messages)
        report.roots[nu] = ok
    report.complete = len(images) == w.field.degree
    if not report.complete:
        report.messages.append(
            f"the Galois orbit reaches {len(images)} of {w.field.degree} roots"
        )
    return report


def safe_verify(w: OrbifoldWitness) -> WitnessReport:
    """verify_witness, with kernel errors recorded instead of raised."""
    try:
        return verify_witness(w)
    except MfcasError as e:
        report = WitnessReport(w.name)
        report.messages.append(f"{type(e).__name__}: {e}")
        return report

"""
Reading and writing matrix factorizations as JSON text.

A file holds one object with the keys

    field            null (the rationals), an integer n (Q(zeta_n)), or a list
                     of tower levels {"name": ..., "modulus": ...} or
                     {"name": ..., "cyclotomic": n}
    vars             [{"name": "x", "weight": "2/5", "role": "left"}, ...]
    potential_left   polynomial text
    potential_right  polynomial text
    d1, d0           rectangular arrays of polynomial text
    grading          optional {"even": [...], "odd": [...]} of rationals
    basis            optional list of basis labels
    name             optional

Polynomials are written in canonical graded-lex order. Reading validates the
square identities and the grading.
"""
from __future__ import annotations

import json
from pathlib import Path

from mfcas.algebra import RATIONALS, NumberField, WeightedRing, make_cyclotomic
from mfcas.algebra.fields import format_rational
from mfcas.exceptions import MfcasError, ParseError
from mfcas.mfcore.factorization import MatrixFactorization, mf_make

ROLES = ("left", "right", "internal")


def field_to_spec(field):
    if field is RATIONALS or field == RATIONALS:
        return None
    levels = []
    for level in field.tower()[1:]:
        if level.cyclotomic_order is not None:
            levels.append({"name": level.name, "cyclotomic": level.cyclotomic_order})
        else:
            levels.append({"name": level.name, "modulus": level.modulus_string()})
    if (
        len(levels) == 1
        and "cyclotomic" in levels[0]
        and levels[0]["name"] == f"zeta{levels[0]['cyclotomic']}"
    ):
        return levels[0]["cyclotomic"]
    return levels


def field_from_spec(spec):
    if spec is None or spec == "QQ":
        return RATIONALS
    if isinstance(spec, int):
        return make_cyclotomic(spec)
    if isinstance(spec, dict):
        spec = [spec]
    if not isinstance(spec, list):
        raise ParseError(f"unsupported field specification {spec!r}", location="field")

    field = RATIONALS
    for k, level in enumerate(spec):
        if "cyclotomic" in level:
            n = int(level["cyclotomic"])
            if field is not RATIONALS:
                raise ParseError(
                    "cyclotomic levels must come first", location=f"field[{k}]"
                )
            field = make_cyclotomic(n, level.get("name"))
        elif "modulus" in level:
            field = NumberField.from_string(level["name"], level["modulus"], field)
        else:
            raise ParseError("a level needs 'modulus' or 'cyclotomic'", location=f"field[{k}]")
    return field


def mf_to_dict(M: MatrixFactorization) -> dict:
    roles = {}
    for n in M.left:
        roles[n] = "left"
    for n in M.right:
        roles[n] = "right"
    for n in M.internal:
        roles[n] = "internal"

    data = {
        "name": M.name,
        "field": field_to_spec(M.field),
        "vars": [
            {"name": n, "weight": format_rational(w), "role": roles.get(n, "internal")}
            for n, w in M.ring.variables
        ],
        "potential_left": str(M.W),
        "potential_right": str(M.V),
        "d1": [[str(e) for e in row] for row in M.d1],
        "d0": [[str(e) for e in row] for row in M.d0],
    }
    if M.grading is not None:
        data["grading"] = {
            "even": [format_rational(v) for v in M.grading.even],
            "odd": [format_rational(v) for v in M.grading.odd],
        }
    if M.labels is not None:
        data["basis"] = [str(v) for v in M.labels]
    return data


def _parse_matrix(rows, ring, key):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("expected an array of arrays", location=key)
    out = []
    for i, row in enumerate(rows):
        parsed = []
        for j, text in enumerate(row):
            try:
                parsed.append(ring.parse(str(text)))
            except ParseError as e:
                raise ParseError(str(e), location=f"{key}[{i}][{j}]") from e
        out.append(parsed)
    return out


def mf_from_dict(data: dict) -> MatrixFactorization:
    """
    Raises:
        ParseError: with the location of malformed content.
        SquareMismatch, GradingViolation: when the content is not a valid
            factorization.
    """
    for key in ("vars", "potential_left", "potential_right", "d1", "d0"):
        if key not in data:
            raise ParseError(f"missing key {key!r}", location=key)

    field = field_from_spec(data.get("field"))
    variables, roles = [], {r: [] for r in ROLES}
    for k, v in enumerate(data["vars"]):
        role = v.get("role", "internal")
        if role not in ROLES:
            raise ParseError(f"unknown role {role!r}", location=f"vars[{k}]")
        variables.append((v["name"], v.get("weight", 0)))
        roles[role].append(v["name"])
    try:
        ring = WeightedRing(variables, field)
    except (ValueError, MfcasError) as e:
        raise ParseError(str(e), location="vars") from e

    def poly(key):
        try:
            return ring.parse(str(data[key]))
        except ParseError as e:
            raise ParseError(str(e), location=key) from e

    grading = None
    if data.get("grading") is not None:
        grading = (data["grading"]["even"], data["grading"]["odd"])

    return mf_make(
        _parse_matrix(data["d1"], ring, "d1"),
        _parse_matrix(data["d0"], ring, "d0"),
        poly("potential_left"),
        poly("potential_right"),
        grading=grading,
        ring=ring,
        left=roles["left"],
        right=roles["right"],
        internal=roles["internal"],
        labels=data.get("basis"),
        name=data.get("name", "M"),
    )


def dumps(M: MatrixFactorization) -> str:
    return json.dumps(mf_to_dict(M), indent=2)


def loads(text: str) -> MatrixFactorization:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, location=f"line {e.lineno}, column {e.colno}") from e
    return mf_from_dict(data)


def write_mf(M: MatrixFactorization, path) -> None:
    Path(path).write_text(dumps(M) + "\n")


def read_mf(path) -> MatrixFactorization:
    return loads(Path(path).read_text())

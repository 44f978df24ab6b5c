"""
The simple singularities in two variables and their central charges.

    A_(d-1): x^d + y^2          c = 1 - 2/d
    D_(d+1): x^d + x y^2        c = 1 - 1/d
    E_6:     x^3 + y^4          c = 1 - 2/12
    E_7:     x^3 + x y^3        c = 1 - 2/18
    E_8:     x^3 + y^5          c = 1 - 2/30

Orbifold equivalence preserves the central charge, so the classes of
``charge_classes`` are the only candidates for equivalent pairs.
"""
from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

from mfcas.algebra import MultiPoly, Rational, WeightedRing, infer_weights, rational
from mfcas.exceptions import UnknownEntry
from mfcas.jacobi import central_charge, milnor_number

NAME_PATTERN = re.compile(r"^\s*([ADEade])_?(\d+)\s*$")

E_POTENTIALS = {6: "x^3 + y^4", 7: "x^3 + x*y^3", 8: "x^3 + y^5"}


@dataclass(frozen=True)
class CatalogEntry:
    """A simple singularity: its ADE name, family and potential W(x, y)."""

    name: str
    family: str
    index: int
    potential: MultiPoly

    @property
    def weights(self) -> dict:
        return {n: w for n, w in self.potential.ring.variables}

    @property
    def charge(self) -> Rational:
        return central_charge(self.potential)

    @property
    def coxeter_number(self) -> int:
        """h with c = 1 - 2/h."""
        return int(2 / (1 - self.charge))

    @property
    def milnor(self) -> int:
        return milnor_number(self.potential)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "potential": str(self.potential),
            "weights": {n: str(w) for n, w in self.weights.items()},
            "central_charge": str(self.charge),
        }

    def __str__(self):
        return f"{self.name}: W = {self.potential}, c = {self.charge}"


def weighted_potential(text: str, names=("x", "y")) -> MultiPoly:
    """Parses a potential and attaches the weights making it of degree 2."""
    flat = WeightedRing([(n, 0) for n in names]).parse(text)
    weights = infer_weights(flat)
    ring = WeightedRing([(n, weights.get(n, rational(0))) for n in names])
    return ring.parse(text)


def parse_name(name: str) -> tuple:
    """("A", 5) for "A5" or "A_5"."""
    match = NAME_PATTERN.match(str(name))
    if match is None:
        raise UnknownEntry(f"{name!r} is not an ADE name")
    return match.group(1).upper(), int(match.group(2))


@lru_cache(maxsize=None)
def catalog(name: str) -> CatalogEntry:
    """
    Looks up a simple singularity by name: A_n for n >= 1, D_n for n >= 3,
    E_6, E_7 and E_8.

    Raises:
        UnknownEntry: for other names.
    """
    family, n = parse_name(name)
    if family == "A" and n >= 1:
        text = f"x^{n + 1} + y^2"
    elif family == "D" and n >= 3:
        text = f"x^{n - 1} + x*y^2"
    elif family == "E" and n in E_POTENTIALS:
        text = E_POTENTIALS[n]
    else:
        raise UnknownEntry(f"{name!r} is not a simple singularity")
    return CatalogEntry(f"{family}{n}", family, n, weighted_potential(text))


def catalog_names(d_max: int) -> list:
    """
    Every entry with Coxeter number at most d_max, which is the largest
    exponent of x among the A and D potentials.
    """
    names = [f"A{d - 1}" for d in range(2, d_max + 1)]
    names += [f"D{d + 1}" for d in range(2, d_max // 2 + 1)]
    names += [f"E{n}" for n, h in ((6, 12), (7, 18), (8, 30)) if h <= d_max]
    return names


def charge_classes(d_max: int) -> list:
    """
    Groups the catalog entries with Coxeter number at most d_max by central
    charge. Only classes with more than one member are returned, sorted by
    charge.
    """
    groups = defaultdict(list)
    for name in catalog_names(d_max):
        groups[catalog(name).charge].append(name)
    return [
        (charge, sorted(members, key=_family_order))
        for charge, members in sorted(groups.items())
        if len(members) > 1
    ]


def _family_order(name: str):
    family, n = parse_name(name)
    return family, n

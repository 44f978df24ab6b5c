"""
Exact coefficient fields: the rationals, number fields given by a monic
modulus over a base field (towers allowed), and cyclotomic fields.

Rationals are sympy ``QQ`` elements. A number field element stores its
coordinates in the power basis 1, a, ..., a^(n-1) over the base field.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import sympy
from sympy.parsing.sympy_parser import (
    parse_expr,
    standard_transformations,
    convert_xor,
)
from sympy.polys.domains import QQ
from sympy.polys.polyerrors import CoercionFailed

from mfcas.algebra.linalg import solve
from mfcas.exceptions import NotCoprime, NotInvertible, ParseError, RingMismatch

PARSER_TRANSFORMATIONS = standard_transformations + (convert_xor,)

Rational = QQ.dtype


def rational(value) -> Rational:
    """
    Converts ints, fractions, sympy rationals and strings like "3/4" into a
    ``QQ`` element.
    """
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        return QQ(int(value))
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, sympy.Rational):
        return QQ.from_sympy(value)
    if isinstance(value, str):
        try:
            return QQ.from_sympy(sympy.Rational(value.strip()))
        except (TypeError, ValueError, SyntaxError, sympy.SympifyError) as e:
            raise ParseError(f"not a rational number: {value!r}") from e
    if isinstance(value, FieldElement):
        if value.is_rational():
            return value.to_rational()
        raise RingMismatch(f"{value} is not a rational number")
    raise RingMismatch(f"cannot convert {type(value).__name__} to a rational")


def format_rational(value: Rational) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_coefficient(value) -> tuple[str, bool]:
    """
    Returns the canonical text of a coefficient and whether it is atomic (a
    single signed factor that needs no parentheses before a monomial).
    """
    if isinstance(value, FieldElement):
        if value.is_rational():
            return format_coefficient(value.to_rational())
        nonzero = [c for c in value.coords if c]
        text = str(value)
        atomic = len(nonzero) == 1 and format_coefficient(nonzero[0])[1]
        return text, atomic
    return format_rational(value), True


def _format_univariate(coeffs: Sequence, name: str) -> str:
    """Prints sum(coeffs[k] * name^k) from the highest power down."""
    pieces = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue

        text, atomic = format_coefficient(c)
        negative = atomic and text.startswith("-")
        if negative:
            text = text[1:]

        if k == 0:
            term = text if atomic else f"({text})"
        else:
            power = name if k == 1 else f"{name}^{k}"
            if text == "1":
                term = power
            elif atomic:
                term = f"{text}*{power}"
            else:
                term = f"({text})*{power}"

        if not pieces:
            pieces.append(f"-{term}" if negative else term)
        else:
            pieces.append(f" - {term}" if negative else f" + {term}")

    return "".join(pieces) if pieces else "0"


class RationalField:
    """The field of rational numbers."""

    name = None
    base = None
    degree = 1
    absolute_degree = 1
    cyclotomic_order = None

    zero = QQ.zero
    one = QQ.one

    def convert(self, value) -> Rational:
        return rational(value)

    def has_subfield(self, other) -> bool:
        return isinstance(other, RationalField)

    def tower(self) -> list:
        return [self]

    def generator_names(self) -> list[str]:
        return []

    def generator_values(self) -> dict:
        return {}

    def from_sympy(self, expr) -> Rational:
        try:
            return QQ.from_sympy(sympy.sympify(expr))
        except (CoercionFailed, TypeError, ValueError, sympy.SympifyError) as e:
            raise ParseError(f"not a rational number: {expr}") from e

    def parse(self, text: str) -> Rational:
        return rational(text)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return (RationalField, ())


RATIONALS = RationalField()


class NumberField:
    """
    The field base[a]/(m(a)) for a monic modulus m over ``base``.

    The modulus is not checked for irreducibility. Arithmetic is well defined
    on the quotient algebra in any case, and inverting a non-unit raises
    NotInvertible.

    Args:
        name: symbol of the generator.
        modulus: coefficients of m from the constant term up; the leading
            coefficient must be 1.
        base: the field the coefficients live in.
        cyclotomic_order: n when this is Q(zeta_n) built by make_cyclotomic.
    """

    def __init__(
        self,
        name: str,
        modulus: Sequence,
        base=RATIONALS,
        cyclotomic_order: int = None,
    ):
        modulus = tuple(base.convert(c) for c in modulus)
        if len(modulus) < 2:
            raise ValueError("the modulus must have degree at least 1")
        if modulus[-1] != 1:
            raise ValueError(f"the modulus of {name} must be monic")
        if name in base.generator_names():
            raise ValueError(f"generator name {name} is already used in the base field")

        self.name = name
        self.base = base
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.absolute_degree = self.degree * base.absolute_degree
        self.cyclotomic_order = cyclotomic_order

        self.zero = FieldElement(self, (base.zero,) * self.degree)
        self.one = self.convert(1)

    @classmethod
    def from_string(cls, name: str, modulus: str, base=RATIONALS) -> "NumberField":
        """Builds a field from a modulus written in the generator symbol."""
        symbol = sympy.Symbol(name)
        expr = _parse_sympy(modulus, [name] + base.generator_names())
        try:
            poly = sympy.Poly(expr, symbol)
        except sympy.PolynomialError as e:
            raise ParseError(f"modulus is not a polynomial in {name}: {modulus}") from e

        coeffs = [base.from_sympy(c) for c in reversed(poly.all_coeffs())]
        lead = coeffs[-1]
        if lead != 1:
            coeffs = [c / lead for c in coeffs]
        return cls(name, coeffs, base)

    @property
    def gen(self) -> "FieldElement":
        coords = [self.base.zero] * self.degree
        if self.degree == 1:
            return FieldElement(self, (-self.modulus[0],))
        coords[1] = self.base.one
        return FieldElement(self, tuple(coords))

    def tower(self) -> list:
        return self.base.tower() + [self]

    def has_subfield(self, other) -> bool:
        return self == other or self.base.has_subfield(other)

    def generator_names(self) -> list[str]:
        return self.base.generator_names() + [self.name]

    def generator_values(self) -> dict:
        values = {k: self.convert(v) for k, v in self.base.generator_values().items()}
        values[self.name] = self.gen
        return values

    def modulus_string(self) -> str:
        return _format_univariate(self.modulus, self.name)

    def convert(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field == self:
                return value
            if not self.base.has_subfield(value.field):
                raise RingMismatch(f"{value} does not belong to {self}")
        elif isinstance(value, str):
            return self.parse(value)

        coords = [self.base.zero] * self.degree
        coords[0] = self.base.convert(value)
        return FieldElement(self, tuple(coords))

    def from_sympy(self, expr) -> "FieldElement":
        """Converts a sympy expression in the tower generators into an element."""
        gens = {sympy.Symbol(k): v for k, v in self.generator_values().items()}
        result = self.zero
        for term in sympy.Add.make_args(sympy.expand(expr)):
            coeff, factors = term.as_coeff_mul()
            value = self.convert(RATIONALS.from_sympy(coeff))
            for factor in factors:
                symbol, exp = factor.as_base_exp()
                if symbol not in gens or not exp.is_Integer:
                    raise ParseError(f"unexpected factor {factor} in a field element")
                value = value * gens[symbol] ** int(exp)
            result = result + value
        return result

    def parse(self, text: str) -> "FieldElement":
        return self.from_sympy(_parse_sympy(text, self.generator_names()))

    def __eq__(self, other):
        return (
            isinstance(other, NumberField)
            and self.name == other.name
            and self.modulus == other.modulus
            and self.base == other.base
        )

    def __hash__(self):
        return hash((self.name, self.modulus, self.base))

    def __repr__(self):
        if self.cyclotomic_order is not None:
            return f"Q({self.name})"
        return f"{self.base!r}[{self.name}]/({self.modulus_string()})"

    def __getstate__(self):
        return {
            "name": self.name,
            "modulus": self.modulus,
            "base": self.base,
            "cyclotomic_order": self.cyclotomic_order,
        }

    def __setstate__(self, state):
        self.__init__(**state)


class FieldElement:
    """An element of a NumberField in power-basis coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: tuple):
        self.field = field
        self.coords = coords

    def _coerce(self, other):
        if not isinstance(other, (FieldElement, int, Rational, Fraction, sympy.Rational, str)):
            return NotImplemented
        try:
            return self.field.convert(other)
        except RingMismatch:
            if isinstance(other, FieldElement) and other.field.has_subfield(self.field):
                return NotImplemented
            raise

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(
            self.field, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(
            self.field, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return FieldElement(self.field, tuple(a * other for a in self.coords))

        other = self._coerce(other)
        if other is NotImplemented:
            return other

        field = self.field
        n = field.degree
        zero = field.base.zero
        prod = [zero] * (2 * n - 1)
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(other.coords):
                if b:
                    prod[i + j] = prod[i + j] + a * b

        modulus = field.modulus
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if not c:
                continue
            for i in range(n):
                if modulus[i]:
                    prod[k - n + i] = prod[k - n + i] - c * modulus[i]

        return FieldElement(field, tuple(prod[:n]))

    __rmul__ = __mul__

    def multiplication_matrix(self) -> list[list]:
        """Matrix of x -> self*x over the base field, columns indexed by a^j."""
        n = self.field.degree
        columns = []
        current = self
        for j in range(n):
            columns.append(current.coords)
            if j < n - 1:
                current = current * self.field.gen
        return [[columns[j][i] for j in range(n)] for i in range(n)]

    def inverse(self) -> "FieldElement":
        if not self:
            raise NotInvertible("division by zero")

        field = self.field
        rhs = [field.base.zero] * field.degree
        rhs[0] = field.base.one
        solution = solve(self.multiplication_matrix(), rhs, zero=field.base.zero)
        if solution is None:
            raise NotInvertible(f"{self} is a zero divisor in {field!r}")
        return FieldElement(field, tuple(solution))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            raise TypeError("exponent must be an integer")
        base = self
        if exponent < 0:
            base = self.inverse()
            exponent = -exponent

        result = self.field.one
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __bool__(self):
        return any(bool(c) for c in self.coords)

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except RingMismatch:
            return False
        if other is NotImplemented:
            return other
        return self.coords == other.coords

    def __hash__(self):
        if self.in_base():
            return hash(self.coords[0])
        return hash((self.field.name, self.coords))

    def in_base(self) -> bool:
        return not any(bool(c) for c in self.coords[1:])

    def is_rational(self) -> bool:
        if not self.in_base():
            return False
        c = self.coords[0]
        return not isinstance(c, FieldElement) or c.is_rational()

    def to_rational(self) -> Rational:
        if not self.in_base():
            raise RingMismatch(f"{self} is not a rational number")
        return rational(self.coords[0])

    def __str__(self):
        return _format_univariate(self.coords, self.field.name)

    def __repr__(self):
        return f"FieldElement({self}; {self.field!r})"

    def __reduce__(self):
        return (FieldElement, (self.field, self.coords))


def _parse_sympy(text: str, names: Sequence[str]):
    """Parses text with sympy, allowing only the given symbol names."""
    local_dict = {name: sympy.Symbol(name) for name in names}
    try:
        expr = parse_expr(
            text, local_dict=local_dict, transformations=PARSER_TRANSFORMATIONS
        )
    except (SyntaxError, TypeError, ValueError, sympy.SympifyError) as e:
        raise ParseError(f"cannot parse {text!r}") from e
    except Exception as e:  # tokenizer errors
        raise ParseError(f"cannot parse {text!r}: {e}") from e

    unknown = {str(s) for s in expr.free_symbols} - set(names)
    if unknown:
        raise ParseError(f"unknown symbols {sorted(unknown)} in {text!r}")
    return expr


@lru_cache(maxsize=None)
def cyclotomic_coefficients(n: int) -> tuple[int, ...]:
    """
    Integer coefficients (constant term first) of the n-th cyclotomic
    polynomial, obtained by dividing x^n - 1 by all Phi_k with k a proper
    divisor of n.
    """
    if n < 1:
        raise ValueError(f"cyclotomic order must be positive, got {n}")

    numerator = [-1] + [0] * (n - 1) + [1]
    for k in range(1, n):
        if n % k:
            continue
        divisor = cyclotomic_coefficients(k)
        numerator = _exact_divide_monic(numerator, divisor)
    return tuple(numerator)


def _exact_divide_monic(numerator: list[int], divisor: Sequence[int]) -> list[int]:
    num = list(numerator)
    m = len(divisor) - 1
    quotient = [0] * (len(num) - m)
    for k in range(len(num) - 1, m - 1, -1):
        c = num[k]
        if c:
            quotient[k - m] = c
            for i in range(m + 1):
                num[k - m + i] -= c * divisor[i]
    if any(num[:m]):
        raise ArithmeticError("cyclotomic division is not exact")
    return quotient


def make_cyclotomic(n: int, name: str = None) -> NumberField:
    """
    Returns Q(zeta_n), the field generated by a primitive n-th root of unity.

    Args:
        n: order of the root of unity (n >= 1).
        name: generator symbol; defaults to "zeta<n>".

    Returns:
        The cyclotomic NumberField with modulus Phi_n.
    """
    return NumberField(
        name or f"zeta{n}",
        cyclotomic_coefficients(n),
        RATIONALS,
        cyclotomic_order=n,
    )


def root_of_unity(field: NumberField, k: int = 1) -> FieldElement:
    """zeta_n^k in a cyclotomic field, with k read modulo n."""
    n = field.cyclotomic_order
    if n is None:
        raise RingMismatch(f"{field!r} is not a cyclotomic field")
    return field.gen ** (k % n)


def field_hom(value, target, image):
    """
    Evaluates the power-basis representation of value at ``image``.

    This realizes the homomorphism base[a]/(m) -> target sending a to image,
    provided m(image) = 0 in target. Base coordinates must convert into target.
    """
    if not isinstance(value, FieldElement):
        return target.convert(value)

    acc = target.zero
    for c in reversed(value.coords):
        acc = acc * image + target.convert(c)
    return acc


def galois_apply(nu: int, value):
    """
    Applies the automorphism zeta_n -> zeta_n^nu.

    Args:
        nu: an integer coprime to the cyclotomic order.
        value: a FieldElement of a cyclotomic field, a rational, or any object
            with a ``map_coefficients`` method (polynomials, factorizations).

    Returns:
        The image of value, of the same type.
    """
    if hasattr(value, "map_coefficients"):
        return value.map_coefficients(lambda c: galois_apply(nu, c))

    if not isinstance(value, FieldElement):
        return value

    field = value.field
    n = field.cyclotomic_order
    if n is None:
        raise RingMismatch(f"{field!r} is not a cyclotomic field")
    if math.gcd(nu, n) != 1:
        raise NotCoprime(f"{nu} is not coprime to {n}")

    return field_hom(value, field, root_of_unity(field, nu))

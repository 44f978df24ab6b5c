"""
Exceptions raised by the mfcas kernel.

Every error is a ValueError, so callers that only care about invalid input can
keep catching ValueError.
"""


class MfcasError(ValueError):
    """Base class of all mfcas errors."""


#
# algebra
#
class RingMismatch(MfcasError):
    """Operands live in different rings or fields."""


class UnknownVariable(MfcasError):
    """A variable name is not part of the ring."""


class NotDivisible(MfcasError):
    """An exact division has no polynomial quotient."""


class NotHomogeneous(MfcasError):
    """A polynomial is not weighted homogeneous."""

    def __init__(self, message: str, terms: tuple = ()):
        super().__init__(message)
        self.terms = terms


class ZeroPolynomial(MfcasError):
    """An operation is undefined on the zero polynomial."""


class NotInvertible(MfcasError, ZeroDivisionError):
    """A field or algebra element has no inverse."""


class NotCoprime(MfcasError):
    """A Galois exponent is not a unit modulo the cyclotomic order."""


class ParseError(MfcasError):
    """Polynomial or file text could not be parsed."""

    def __init__(self, message: str, location: str = None):
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)
        self.location = location


#
# jacobi
#
class InfiniteDimensional(MfcasError):
    """The Jacobi ring of a polynomial is not finite-dimensional."""

    def __init__(self, message: str, free_variable: str = None):
        super().__init__(message)
        self.free_variable = free_variable


class DegenerateHessian(MfcasError):
    """The Hessian has no socle component."""


class DegenerateSocle(MfcasError):
    """The top weighted degree of a Jacobi ring is not one-dimensional."""


#
# mfcore
#
class SquareMismatch(MfcasError):
    """d1*d0 or d0*d1 differs from (W-V)*id."""

    def __init__(self, message: str, block: str = None, entry: tuple = None):
        super().__init__(message)
        self.block = block
        self.entry = entry


class GradingViolation(MfcasError):
    """A differential entry does not have the degree forced by the grading."""

    def __init__(self, message: str, block: str = None, entry: tuple = None):
        super().__init__(message)
        self.block = block
        self.entry = entry


class UnsupportedRank(MfcasError):
    """The operation is only defined for rank-one factorizations."""


class UnsupportedShape(MfcasError):
    """The variable layout of a factorization is not supported."""


class InterfaceMismatch(MfcasError):
    """Tensor factors do not share variables and potential."""


#
# homotopy
#
class NotClosed(MfcasError):
    """A morphism does not commute with the differentials."""


class BoundTooSmall(MfcasError):
    """A degree truncation was too small to produce a factorization."""


class NoProgress(MfcasError):
    """The finite-rank reduction did not stabilize."""


#
# templieb
#
class UndefinedProjector(MfcasError):
    """A Wenzl-Jones projector needs the inverse of a vanishing quantum integer."""

    def __init__(self, message: str, index: int = None):
        super().__init__(message)
        self.index = index


class ArityMismatch(MfcasError):
    """Temperley-Lieb morphisms cannot be composed."""


class NotPlanar(MfcasError):
    """A pairing has crossing strands or is not a perfect matching."""


#
# adecat
#
class NotSquareSystem(MfcasError):
    """The number of monomials differs from the number of variables."""


class UnknownEntry(MfcasError):
    """A catalog name or witness pair is unknown."""


class ChecksumMismatch(MfcasError):
    """A catalog data file does not match its recorded MD5 hash."""

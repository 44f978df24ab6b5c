from mfcas.algebra.fields import (  # noqa: F401
    RATIONALS,
    FieldElement,
    NumberField,
    Rational,
    field_hom,
    galois_apply,
    make_cyclotomic,
    rational,
    root_of_unity,
)
from mfcas.algebra.poly import (  # noqa: F401
    MultiPoly,
    WeightedRing,
    adjugate,
    determinant,
    difference_quotient,
    infer_weights,
    partial_derivative,
    poly_exact_div,
    poly_mul,
    weighted_degree,
)

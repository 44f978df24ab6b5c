from mfcas.mfcore.factorization import (  # noqa: F401
    GradingAssignment,
    MatrixFactorization,
    direct_sum,
    entry_degree,
    equivariant_structure,
    external_tensor,
    galois_mf,
    interval_set,
    mf_dual,
    mf_make,
    mf_tensor,
    monomial_mf,
    permutation_interval_mf,
    permutation_mf,
    shift,
    tensor_pairs,
    transpose_dual,
    twist,
    unit_mf,
)
from mfcas.mfcore.morphism import (  # noqa: F401
    MFMorphism,
    associator,
    associator_inverse,
    c_degree,
    compose,
    compose_all,
    cone,
    delta,
    from_blocks,
    identity,
    is_closed,
    materialize,
    probe_vectors,
    scaling_operator,
    tensor,
    twist_multiplication,
    twisted_unit,
    unit_morphisms,
    zero_morphism,
)
from mfcas.mfcore.io import read_mf, write_mf  # noqa: F401

from mfcas.adecat.catalog import (  # noqa: F401
    CatalogEntry,
    catalog,
    catalog_names,
    charge_classes,
    parse_name,
    weighted_potential,
)
from mfcas.adecat.store import checksums, load_data, verify_checksums  # noqa: F401
from mfcas.adecat.witnesses import (  # noqa: F401
    GaloisReport,
    OrbifoldWitness,
    WitnessReport,
    all_witnesses,
    check_end_spectrum,
    d_witness,
    end_spectrum,
    safe_verify,
    u_frame,
    verify_roots,
    verify_witness,
    witness,
)
from mfcas.adecat.monoid import (  # noqa: F401
    MonoidReport,
    d_monoid_reduction,
    e6_algebra,
    e6_algebra_report,
    galois_image,
    monoid_object,
    monoid_signature,
    perm_qdim,
)
from mfcas.adecat.knorrer import KnorrerReport, koszul_factor, knorrer_sum  # noqa: F401
from mfcas.adecat.bh import (  # noqa: F401
    BHClassification,
    BHDegrees,
    BHPolynomial,
    BHSummand,
    bh_classify,
    bh_degrees_and_charge,
    bh_transpose,
    closed_form_weights,
    random_sample,
)
from mfcas.adecat.transposed import (  # noqa: F401
    a_witness,
    d_witness_transposed,
    dtranspose_witnesses,
)

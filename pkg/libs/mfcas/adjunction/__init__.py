from mfcas.adjunction.evaluation import (  # noqa: F401
    DualityData,
    coevaluation,
    dual_identification,
    ev_coev,
    evaluation,
    gm_eval,
)
from mfcas.adjunction.units import unit_inverses  # noqa: F401
from mfcas.adjunction.qdim import QuantumDimensions, qdim, supertrace  # noqa: F401
from mfcas.adjunction.zigzag import (  # noqa: F401
    UnPairReport,
    ZigzagReport,
    check_zigzag,
    equivariant_scalars,
    first_snake,
    is_equivariant,
    second_snake,
    tensor_scalars,
    un_pair,
)

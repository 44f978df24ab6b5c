from mfcas.homotopy.homology import (  # noqa: F401
    HomologyReport,
    PIDModulePresentation,
    bar_homology,
    internal_homology,
    is_iso_H,
)
from mfcas.homotopy.morphisms import (  # noqa: F401
    MorphismBasis,
    central_charge,
    hom_graded,
    hom_spectrum,
    homotopic,
)
from mfcas.homotopy.reduction import finite_rank_reduce  # noqa: F401
from mfcas.homotopy.fusion import (  # noqa: F401
    FusionReport,
    fusion_decomposition,
    fusion_witness,
)

from mfcas.templieb.quantum import (  # noqa: F401
    QuantumInteger,
    TLContext,
    context,
    generic_context,
    quantum_int,
    root_of_unity_context,
    specialize_scalar,
)
from mfcas.templieb.diagrams import (  # noqa: F401
    PlanarPairing,
    TLMorphism,
    catalan,
    diagram_words,
    enumerate_pairings,
    format_word,
    generator,
    identity,
    identity_pairing,
    in_words,
    markov_trace,
    specialize,
    tl_compose,
    tl_tensor,
)
from mfcas.templieb.wenzl import (  # noqa: F401
    RelationsReport,
    WenzlReport,
    check_relations,
    wenzl,
    wenzl_sequence,
    wenzl_verify,
)

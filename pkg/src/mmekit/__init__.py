"""Mixed maximally entangled (MME) states of finite multipartite systems:
which mode structures can host them, at what ranks, how to build them,
and how to certify them by decomposition sampling.

Levels and mode labels are 1-based throughout, with mode 1 the most
significant digit of the mixed-radix scalar index.
"""

from .entcore import (
    LStarSet,
    UnsupportedSystemError,
    ent_pure,
    hyperspherical,
    lstar,
    mpsrp_purity,
)
from .linalg import (
    DensityMatrix,
    PureStateVector,
    basis_state,
    mix,
    outer,
    partial_trace,
    purity,
)
from .mme import (
    ExampleSetReport,
    MmeRankReport,
    MmeState,
    compatible,
    construct,
    loose_bound,
    max_mme_rank,
    validate_example_set,
)
from .modes import (
    Bipartition,
    ModeStructure,
    bipartition,
    parse_dims,
    project_level,
    scalar_to_vector,
    vector_to_scalar,
)
from .tgx import (
    LocalUnitarySet,
    MeTgxTuple,
    apply_lu,
    build_tgx_state,
    enumerate_me_tuples,
    is_me_tuple,
)
from .verify import (
    DecompositionSample,
    EntEstimate,
    SpectralState,
    as_spectral,
    comparison_family,
    comparison_family_spectral,
    decompose,
    haar_unitary,
    min_avg_ent,
    random_lu_set,
    reduction_purity_report,
    spectral,
    u2,
    u2_grid,
)

__version__ = "0.1.0"

__all__ = [
    "Bipartition",
    "DecompositionSample",
    "DensityMatrix",
    "EntEstimate",
    "ExampleSetReport",
    "LStarSet",
    "LocalUnitarySet",
    "MeTgxTuple",
    "MmeRankReport",
    "MmeState",
    "ModeStructure",
    "PureStateVector",
    "SpectralState",
    "UnsupportedSystemError",
    "apply_lu",
    "as_spectral",
    "basis_state",
    "bipartition",
    "build_tgx_state",
    "comparison_family",
    "comparison_family_spectral",
    "compatible",
    "construct",
    "decompose",
    "ent_pure",
    "enumerate_me_tuples",
    "haar_unitary",
    "hyperspherical",
    "is_me_tuple",
    "loose_bound",
    "lstar",
    "max_mme_rank",
    "min_avg_ent",
    "mix",
    "mpsrp_purity",
    "outer",
    "parse_dims",
    "partial_trace",
    "project_level",
    "purity",
    "random_lu_set",
    "reduction_purity_report",
    "scalar_to_vector",
    "spectral",
    "u2",
    "u2_grid",
    "validate_example_set",
    "vector_to_scalar",
]

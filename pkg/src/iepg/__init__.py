"""Symmetric matrices with a prescribed spectrum on clique-plus-cluster graphs."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    DEFAULT_TOL,
    BorderedMatrix,
    HypothesisError,
    IEPGError,
    NumericalError,
    Spectrum,
    StructuralError,
    SymMatrix,
    ToleranceProfile,
    assemble_bordered,
    spectrum_equal,
)
from .graphs import (  # noqa: E402
    CliqueClusterShape,
    GraphSpec,
    build_clique_cluster,
    build_complete,
    build_join_family,
    build_kn_minus_edge,
    detect_clusters,
    pattern_of,
    recognize_shape,
)
from .constructions import (  # noqa: E402
    Pin,
    bordered_realize,
    check_hypotheses,
    choose_partition,
    clique_cluster_realize,
    cluster_clique_realize,
    complete_realize,
    join_realize,
    kn_minus_edge_realize,
    r_inverse,
    r_matrix,
    smith_glue,
)
from .verify import (  # noqa: E402
    charpoly_oracle,
    check_interlacing,
    check_realization,
    check_ssp,
    eig_symmetric,
    q_kn_minus_edge,
)

__all__ = [
    "DEFAULT_TOL",
    "BorderedMatrix",
    "HypothesisError",
    "IEPGError",
    "NumericalError",
    "Spectrum",
    "StructuralError",
    "SymMatrix",
    "ToleranceProfile",
    "assemble_bordered",
    "spectrum_equal",
    "CliqueClusterShape",
    "GraphSpec",
    "build_clique_cluster",
    "build_complete",
    "build_join_family",
    "build_kn_minus_edge",
    "detect_clusters",
    "pattern_of",
    "recognize_shape",
    "Pin",
    "bordered_realize",
    "check_hypotheses",
    "choose_partition",
    "clique_cluster_realize",
    "cluster_clique_realize",
    "complete_realize",
    "join_realize",
    "kn_minus_edge_realize",
    "r_inverse",
    "r_matrix",
    "smith_glue",
    "charpoly_oracle",
    "check_interlacing",
    "check_realization",
    "check_ssp",
    "eig_symmetric",
    "q_kn_minus_edge",
]

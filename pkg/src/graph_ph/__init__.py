"""Persistent homology of graph filtrations and Weisfeiler-Leman refinement."""

from .complex import FilteredComplex, Simplex, clique_complex, euler_characteristic, kwl_complex
from .filtration import (
    FiltrationAssignment,
    degree_filtration,
    kwl_simplex_weights,
    laplacian_filtration,
    laplacian_spectrum,
    orc_filtration,
    perturb_to_injective,
    wl_filtration,
)
from .graph import (
    Graph,
    Graph6Error,
    VertexPermutation,
    enumerate_connected_cubic,
    generate_fixture,
    parse_graph6,
    permute,
    write_graph6,
)
from .metrics import bottleneck_distance, diagrams_equal, distinguishes
from .persistence import (
    INF,
    BettiVector,
    PersistenceDiagram,
    betti_numbers,
    connected_components,
    diameter_bound,
    persistence_dim0,
    persistence_reduction,
    persistent_betti,
)
from .transport import DiscreteMeasure, random_walk_measure, wasserstein1
from .wl import ColorTable, WLColoring, colorings_distinguish, kwl_refine, wl1_refine

__version__ = "0.1.0"

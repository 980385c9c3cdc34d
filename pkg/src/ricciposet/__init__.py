"""Extended combinatorial Ricci curvature on ranked posets of rank 2 and polyhedral surfaces."""

from .complexes import (
    PolyMap,
    SimplicialComplex2,
    cube,
    dual_map,
    face_poset_of_map,
    face_poset_of_simplicial,
    icosahedron,
    maps_isomorphic,
    tetrahedron,
    torus_grid,
)
from .curvature import (
    averages,
    forman_curvature,
    full_report,
    is_sufficiently_covered,
    r0,
    r1,
    r2,
    ric,
    stone_star_general,
    stone_star_surface,
)
from .invariants import (
    is_almost_polyhedral,
    is_polyhedral_map_poset,
    negativity_criterion,
    order_complex_euler,
    orientable,
    positive_average_check,
    ranked_euler_char,
    verify_gauss_bonnet,
    verify_gauss_bonnet_ric,
    verify_stone_gauss_bonnet,
)
from .poset import Poset, build_poset, compute_rank, f_vector, local_counts, parallel_neighbors

__version__ = "0.1.0"

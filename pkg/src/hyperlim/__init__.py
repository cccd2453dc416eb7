"""Hypergraph limits at desk scale.

Contractions of hypergraph adjacency tensors, cut-type norms of step
functions, homomorphism counting, random-walk spectra and the scripted
experiments that tie them together.
"""

__author__ = "Bryan M Bugyi"
__email__ = "bryanbugyi34@gmail.com"
__version__ = "0.1.0"

from ._contractions import (
    IntersectionMatrices,
    RandomWalkMatrices,
    codegree_section,
    intersection_matrix,
    p_weighted_adjacency,
    random_walk_matrix,
    rw_matrices,
)
from ._cutnorm import (
    CutDistance,
    CutNormEstimate,
    NormResult,
    cut_distance_upper,
    cut_norm_exact,
    cut_norm_heuristic,
    one_cut_distance_upper,
    one_cut_norm,
    two_cut_norm,
)
from ._errors import (
    CapacityError,
    DegeneracyError,
    HyperlimError,
    InputError,
)
from ._experiments import (
    EXPERIMENTS,
    ExperimentRecord,
    records_to_csv,
    run_experiment,
)
from ._hom import (
    DirectedGraph,
    IdentityCheck,
    MomentCheck,
    SimpleGraph,
    complete_graph,
    cycle_graph,
    directed_cycle,
    directed_cycle_density,
    directed_path,
    disjoint_union,
    hom_hypergraph,
    hom_weighted,
    intersection_pattern,
    path_graph,
    spectral_moment_check,
    subdivide,
    t_density,
    verify_intersection_identity,
    verify_subdivision_identity,
)
from ._hypergraph import (
    Hypergraph,
    RankDecomposition,
    UniformHypergraph,
    WeightedGraph,
    as_uniform,
    codegree,
    codegree_matrix,
    complete_hypergraph,
    decompose,
    degree,
    degree_vector,
    is_linear,
    union,
)
from ._io import (
    matrix_to_csv,
    read_graph,
    read_hypergraph,
    read_step,
    spectrum_to_csv,
    step_from_text,
    step_to_text,
)
from ._random import (
    gen_nonuniform,
    gen_random_step,
    gen_triangle_hypergraph,
    gen_uniform_er,
)
from ._spectra import (
    MomentReport,
    Spectrum,
    moment_spectrum_consistency,
    pointwise_distance,
    rw_spectra,
    spectrum_random_walk,
    spectrum_step_operator,
    spectrum_symmetric,
)
from ._step import (
    Partition,
    PartProfile,
    RandomWalkKernel,
    StepHypergraphon3,
    StepKernel,
    StepLaplacian,
    StepTensor,
    codegree_section_step,
    degree_profile,
    from_graph,
    from_hypergraph,
    intersection_graphon,
    lift_to_hypergraphon,
    limit_rw_kernel,
    random_walk_kernel,
    rw_laplacian,
)


__all__ = [
    "CapacityError",
    "CutDistance",
    "CutNormEstimate",
    "DegeneracyError",
    "DirectedGraph",
    "EXPERIMENTS",
    "ExperimentRecord",
    "Hypergraph",
    "HyperlimError",
    "IdentityCheck",
    "InputError",
    "IntersectionMatrices",
    "MomentCheck",
    "MomentReport",
    "NormResult",
    "PartProfile",
    "Partition",
    "RandomWalkKernel",
    "RandomWalkMatrices",
    "RankDecomposition",
    "SimpleGraph",
    "Spectrum",
    "StepHypergraphon3",
    "StepKernel",
    "StepLaplacian",
    "StepTensor",
    "UniformHypergraph",
    "WeightedGraph",
    "as_uniform",
    "codegree",
    "codegree_matrix",
    "codegree_section",
    "codegree_section_step",
    "complete_graph",
    "complete_hypergraph",
    "cut_distance_upper",
    "cut_norm_exact",
    "cut_norm_heuristic",
    "cycle_graph",
    "decompose",
    "degree",
    "degree_profile",
    "degree_vector",
    "directed_cycle",
    "directed_cycle_density",
    "directed_path",
    "disjoint_union",
    "from_graph",
    "from_hypergraph",
    "gen_nonuniform",
    "gen_random_step",
    "gen_triangle_hypergraph",
    "gen_uniform_er",
    "hom_hypergraph",
    "hom_weighted",
    "intersection_graphon",
    "intersection_matrix",
    "intersection_pattern",
    "is_linear",
    "lift_to_hypergraphon",
    "limit_rw_kernel",
    "matrix_to_csv",
    "moment_spectrum_consistency",
    "one_cut_distance_upper",
    "one_cut_norm",
    "p_weighted_adjacency",
    "path_graph",
    "pointwise_distance",
    "random_walk_kernel",
    "random_walk_matrix",
    "read_graph",
    "read_hypergraph",
    "read_step",
    "records_to_csv",
    "run_experiment",
    "rw_laplacian",
    "rw_matrices",
    "rw_spectra",
    "spectral_moment_check",
    "spectrum_random_walk",
    "spectrum_step_operator",
    "spectrum_symmetric",
    "spectrum_to_csv",
    "step_from_text",
    "step_to_text",
    "subdivide",
    "t_density",
    "two_cut_norm",
    "union",
    "verify_intersection_identity",
    "verify_subdivision_identity",
]

"""Quantum CSS LDPC codes from balanced products of lossless expanders."""

__version__ = "0.1.0"

from .gf2 import F2Matrix, F2Vector, kernel_basis, mat_mul, mat_vec, rank
from .graphs import (
    BipartiteGraph,
    CayleyGraph,
    GraphAction,
    NonRegularReport,
    RegularityProfile,
    build_bipartite,
    cayley_bipartite,
    invert_gens,
    neighbors,
    regularity,
)
from .groups import (
    FiniteGroup,
    GroupAction,
    conjugation_action,
    cyclic_group,
    dihedral_group,
    left_translation_action,
    right_translation_action,
    symmetric_group,
    trivial_action,
    trivial_group,
    verify_free_action,
)
from .expansion import (
    ExpansionCertificate,
    FlowNetwork,
    TreePartition,
    certify_expansion,
    check_unique_expander_bound,
    edge_count_bounds,
    max_flow_integer,
    tree_partition,
    unique_neighbors,
    verify_tree_partition,
)
from .product import (
    BalancedProductComplex,
    DegreeProfile,
    balanced_product,
    complete_square,
    copies_decomposition,
    hypergraph_product,
    inherit_certificates,
    verify_chain_condition,
)
from .css import (
    CssCode,
    brute_distance,
    code_params,
    extract_code,
    greedy_flip_reduce,
    locally_minimal_distance,
    minimal_coset_representative,
    normalized_weight,
    normalized_syndrome_weight,
)
from .decoder import (
    DecoderConfig,
    decode,
    decode_x,
    flippable,
    guaranteed_correctable_weight,
    preprocess_candidates,
    region_diagnostics,
    size_gates,
)
from .harness import ExperimentConfig, ExperimentResult, run_simulation

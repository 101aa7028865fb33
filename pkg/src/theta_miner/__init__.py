"""Small theta_r-models, edge-protrusions and dense minors in multigraphs."""

from ._kernels import BACKEND
from .decomposition import (
    DistanceDecomposition,
    RootedTreePartition,
    bounded_escape_path,
    check_dd_invariants,
    distance_decomposition,
)
from .graph import (
    Multigraph,
    MinorModelCertificate,
    ThetaCertificate,
    contract_partition,
    degree,
    from_edge_list,
    to_edge_list,
    verify_minor_model,
    verify_theta_certificate,
)
from .oracles import brute_theta_girth, check_bound_lemma, check_loose_connectivity, quotient_min_degree
from .packing import pack_k_theta, stiebitz_partition, theta_by_maximal_path
from .partitioner import (
    critical_vertices,
    frontier_report,
    grouped_partition,
    leaf_lower_bound_check,
    maximal_scattered_set,
    unimportant_paths,
)
from .protrusion import ProtrusionCertificate, fold_unimportant_path, verify_protrusion
from .theta import (
    run_theorem4,
    run_theorem5,
    theta_from_big_bag,
    theta_from_heavy_node,
    theta_from_region_pair,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DistanceDecomposition",
    "RootedTreePartition",
    "bounded_escape_path",
    "check_dd_invariants",
    "distance_decomposition",
    "Multigraph",
    "MinorModelCertificate",
    "ThetaCertificate",
    "contract_partition",
    "degree",
    "from_edge_list",
    "to_edge_list",
    "verify_minor_model",
    "verify_theta_certificate",
    "brute_theta_girth",
    "check_bound_lemma",
    "check_loose_connectivity",
    "quotient_min_degree",
    "pack_k_theta",
    "stiebitz_partition",
    "theta_by_maximal_path",
    "critical_vertices",
    "frontier_report",
    "grouped_partition",
    "leaf_lower_bound_check",
    "maximal_scattered_set",
    "unimportant_paths",
    "ProtrusionCertificate",
    "fold_unimportant_path",
    "verify_protrusion",
    "run_theorem4",
    "run_theorem5",
    "theta_from_big_bag",
    "theta_from_heavy_node",
    "theta_from_region_pair",
]

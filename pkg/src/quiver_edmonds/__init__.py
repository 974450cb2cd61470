"""Edmonds' problem for quiver data.

Build the block-matrix family of a quiver datum (W, sigma), decide whether
its span contains a non-singular matrix exactly, and decide positivity of
the capacity of the associated completely positive operator.
"""
from .capacity import CapacityReport, CPOperator, decide_capacity
from .datum import (
    BlockMatrixFamily,
    QuiverDatum,
    build_bipartite,
    build_block_matrices,
    schofield_matrix,
    split_weight,
)
from .kernels import BACKEND
from .oracle import SpanDecision, decide_membership, randomized_span_test, symbolic_span_test
from .quiver import (
    Path,
    Quiver,
    Relation,
    Representation,
    apply_base_change,
    check_relations,
    enumerate_paths,
    euler_form,
    evaluate_path,
    hom_ext_dims,
    validate_quiver,
)
from .rational import RationalMatrix
from .semigroup import orbit_membership, saturation_probe, weight_semigroup_member

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BlockMatrixFamily", "CPOperator", "CapacityReport", "Path", "Quiver",
    "QuiverDatum", "RationalMatrix", "Relation", "Representation", "SpanDecision",
    "apply_base_change", "build_bipartite", "build_block_matrices", "check_relations",
    "decide_capacity", "decide_membership", "enumerate_paths", "euler_form", "evaluate_path",
    "hom_ext_dims", "orbit_membership", "randomized_span_test", "saturation_probe",
    "schofield_matrix", "split_weight", "symbolic_span_test", "validate_quiver",
    "weight_semigroup_member",
]

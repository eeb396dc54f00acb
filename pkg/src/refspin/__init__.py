"""Refined spin-model invariants of symmetric union link diagrams.

The package evaluates partition-function invariants that weigh crossings on
a diagram's reflection axis by a second matrix pair, certifies the models
those weights must come from, and manipulates the underlying signed graphs
by value-preserving rewrites.
"""

from .algebra import (
    SpinModel,
    TAU_NUM,
    TAU_ZERO,
    hadamard_inverse,
    is_in_nomura,
    psi_image,
    verify_spin_model,
    y_vector,
)
from .diagram import (
    Coloring,
    SymmetricDiagram,
    TaitEdge,
    TaitGraph,
    checkerboard,
    connected_sum,
    format_smg,
    format_sud,
    parse_smg,
    parse_sud,
    tait_graph,
)
from .engine import (
    EliminationOrder,
    InvariantValue,
    invariant_of_diagram,
    normalized_invariant,
    partition_eliminate,
    partition_naive,
    pinned_sum,
)
from .models import (
    RefinedSpinModel,
    ShiftMap,
    is_translation_invariant,
    make_pentagonal,
    make_pentagonal_family,
    make_potts,
    make_potts_family,
    make_potts_refinement,
    make_refined,
    parse_model_spec,
)

__version__ = "0.1.0"

__all__ = [
    "Coloring",
    "EliminationOrder",
    "InvariantValue",
    "RefinedSpinModel",
    "ShiftMap",
    "SpinModel",
    "SymmetricDiagram",
    "TAU_NUM",
    "TAU_ZERO",
    "TaitEdge",
    "TaitGraph",
    "checkerboard",
    "connected_sum",
    "format_smg",
    "format_sud",
    "hadamard_inverse",
    "invariant_of_diagram",
    "is_in_nomura",
    "is_translation_invariant",
    "make_pentagonal",
    "make_pentagonal_family",
    "make_potts",
    "make_potts_family",
    "make_potts_refinement",
    "make_refined",
    "normalized_invariant",
    "parse_model_spec",
    "parse_smg",
    "parse_sud",
    "partition_eliminate",
    "partition_naive",
    "pinned_sum",
    "psi_image",
    "tait_graph",
    "verify_spin_model",
    "y_vector",
]

"""Finite join semilattices: o-modularity, forbidden M2/M4 copies, and census."""

__version__ = "0.1.0"

from .construct import ConstructionTrace, build_t2, build_t4, build_t5, run_pipeline
from .errors import (
    FactViolation,
    InvalidWitness,
    NotAJoinSemilattice,
    OModularError,
    StructureError,
)
from .omod import (
    OModWitness,
    ProofLabeling,
    check_omodular,
    is_omodular,
    modular_law_check,
    to_proof_labels,
    verify_witness,
)
from .order import (
    JoinSemilattice,
    Poset,
    builtin,
    canonical_form,
    format_structure,
    is_isomorphic,
    is_join_closed,
    join_of_set,
    lower_bounds,
    parse_structure,
    upper_bounds,
)
from .substructure import EmbeddedSub, classify_strength, find_m2, find_m4

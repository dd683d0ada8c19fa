"""dimerlab: dimer quivers on the torus, their matchings, path algebras and contractions."""
from .contraction import (ContractionError, ContractionMap, contract, identity_map, p_zero,
                          pullback_matching, push_matching, reduce_removable_two_cycles,
                          tau_psi_label)
from .io import ParseError, parse, read, serialize, write
from .matchings import (enumerate_perfect_matchings, is_cancellative, is_nondegenerate,
                        simple_matchings)
from .monoid import center, corner_semigroup, cycle_algebra, equal_up_to_degree, is_cyclic
from .paths import equal_in_A, find_non_cancellative_pairs, label, rewrite_rules
from .quiver import Arrow, DimerQuiver, Face, InvalidQuiver, Path, validate
from .representations import build_representation, is_simple, reps_equivalent

__all__ = [
    "Arrow", "ContractionError", "ContractionMap", "DimerQuiver", "Face", "InvalidQuiver",
    "ParseError", "Path", "build_representation", "center", "contract", "corner_semigroup",
    "cycle_algebra", "enumerate_perfect_matchings", "equal_in_A", "equal_up_to_degree",
    "find_non_cancellative_pairs", "identity_map", "is_cancellative", "is_cyclic",
    "is_nondegenerate", "is_simple", "label", "p_zero", "parse", "pullback_matching",
    "push_matching", "read", "reduce_removable_two_cycles", "reps_equivalent", "rewrite_rules",
    "serialize", "simple_matchings", "tau_psi_label", "validate", "write",
]

__version__ = "0.1.0"

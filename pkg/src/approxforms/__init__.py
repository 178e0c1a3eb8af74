"""Successive-approximation decompositions over finite posets."""

from .algebra import (BOOLEAN_DUAL, BOOLEAN_PRIMAL, AxiomReport, OperationSystem, check_axioms,
                      check_dual_identity, conjugate_system, find_dual_isomorphism, make_system,
                      search_boolean_interpretations)
from .boolinf import ImplicativeNormalForm, TruthTable, exhaustive_verify, inf_evaluate, inf_synthesize
from .choice import run_approx, run_exact, run_generalized, choice_table
from .decompose import ApproximatingForm, DecompositionReport, decompose, pad_to_universal, verify_form
from .errors import ApproxFormsError
from .lefebvre import (EnsembleCharacteristic, check_L_axioms, equality_region_scan, f_real, golden_ensemble,
                       golden_section_root, marginals, pl_characteristic, sample_ensemble)
from .poset import (BOOL, FinitePoset, PosetMap, antichain, boolean_cube, build_poset, chain, embed_into_cube,
                    is_monotone, layer_decompose, non_monotonicity_domain)

__version__ = "0.1.0"

__all__ = [
    "BOOL", "BOOLEAN_DUAL", "BOOLEAN_PRIMAL", "ApproxFormsError", "ApproximatingForm", "AxiomReport",
    "DecompositionReport", "EnsembleCharacteristic", "FinitePoset", "ImplicativeNormalForm", "OperationSystem",
    "PosetMap", "TruthTable", "antichain", "boolean_cube", "build_poset", "chain", "check_L_axioms",
    "check_axioms", "check_dual_identity", "conjugate_system", "decompose", "embed_into_cube",
    "equality_region_scan", "exhaustive_verify", "f_real", "find_dual_isomorphism", "golden_ensemble",
    "golden_section_root", "inf_evaluate", "inf_synthesize", "is_monotone", "layer_decompose", "make_system",
    "marginals", "non_monotonicity_domain", "pad_to_universal", "pl_characteristic", "run_approx", "run_exact",
    "run_generalized", "sample_ensemble", "search_boolean_interpretations", "choice_table", "verify_form",
]

"""Stable module categories of self-injective algebras over F_p: AR knitting,
tubes, stable Hom, triangle filtrations and simple-minded systems."""

from .algebra import BoundQuiverAlgebra, selfinjectivity_report
from .arknit import (ar_sequence, knit_component, sectional_triangle_check, tube_from_seed,
                     tube_info, tube_module, wing_members)
from .decompose import decompose, indecomposable_summands, is_isomorphic, is_projective_indec
from .dsl import parse_algebra, print_algebra
from .errors import SmsLabError
from .families import A, B, example_family, kronecker_trivext, local, nakayama
from .lemmas import REGISTRY, verify_lemma
from .rep import Rep, direct_sum, hom_space
from .sms import (StratLadder, classify_system, closure, ell, enumerate_sms, main_strat_certify,
                  replay, stable_universe, theorem_check)
from .stable import (ext1, nakayama_functor, omega, omega_inv, semibrick_check, stable_dim, sthom,
                     tau)
from .strings import band_module, string_module

__all__ = [
    "A", "B", "BoundQuiverAlgebra", "REGISTRY", "Rep", "SmsLabError", "StratLadder",
    "ar_sequence", "band_module", "classify_system", "closure", "decompose", "direct_sum", "ell",
    "enumerate_sms", "example_family", "ext1", "hom_space", "indecomposable_summands",
    "is_isomorphic", "is_projective_indec", "knit_component", "kronecker_trivext", "local",
    "main_strat_certify", "nakayama", "nakayama_functor", "omega", "omega_inv", "parse_algebra",
    "print_algebra", "replay", "sectional_triangle_check", "selfinjectivity_report",
    "semibrick_check", "stable_dim", "stable_universe", "sthom", "string_module", "tau",
    "theorem_check", "tube_from_seed", "tube_info", "tube_module", "verify_lemma", "wing_members",
]

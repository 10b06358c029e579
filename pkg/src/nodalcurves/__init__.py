"""Band and string data for the derived category of tame nodal curves.

Words, their matrix realizations, classification, admissible equivalences,
decomposition and tensor products, over the rationals or a prime field.
"""

from .classification import (ClassificationReport, classify, decode_normalization,
                             homological_dimension, is_bounded, is_coherent, is_mixed,
                             is_skyscraper, is_torsion_free, is_vector_bundle, rank)
from .curves import CurveConfig, E, F, Letter, Weight, compare_weights, conjugate, make_curve, parse_curve
from .enumeration import enumerate_data
from .equivalence import (Certificate, Verdict, apply_certificate, brute_force_equivalent,
                          find_certificate, random_certificate, verify_equivalence)
from .errors import NodalError
from .fields import QQ, ExactField
from .realization import Representation, check_restrictions, direct_sum, realize
from .reduction import DecompositionResult, decompose, normalization_tensor, tensor
from .summands import LineBundle, TorsionComplex
from .words import (BandData, StringData, Tail, Word, canonical_form, closed_word, is_isomorphic,
                    make_band, make_string, open_word, truncate, validate_word)

enumerate = enumerate_data  # noqa: A001

__all__ = [
    "BandData", "Certificate", "ClassificationReport", "CurveConfig", "DecompositionResult", "E",
    "ExactField", "F", "Letter", "LineBundle", "NodalError", "QQ", "Representation", "StringData",
    "Tail", "TorsionComplex", "Verdict", "Weight", "Word", "apply_certificate",
    "brute_force_equivalent", "canonical_form", "check_restrictions", "classify", "closed_word",
    "compare_weights", "conjugate", "decode_normalization", "decompose", "direct_sum",
    "enumerate", "enumerate_data", "find_certificate", "homological_dimension", "is_bounded",
    "is_coherent", "is_isomorphic", "is_mixed", "is_skyscraper", "is_torsion_free",
    "is_vector_bundle", "make_band", "make_curve", "make_string", "normalization_tensor",
    "open_word", "parse_curve", "random_certificate", "rank", "realize", "tensor", "truncate",
    "validate_word", "verify_equivalence",
]

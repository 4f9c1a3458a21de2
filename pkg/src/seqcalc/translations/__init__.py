from seqcalc.translations.edges import (
    EDGES,
    TranslationError,
    translate_formula,
    translate_proof,
)
from seqcalc.translations.normalize import commute_check, permutation_normalize

__all__ = [
    "EDGES",
    "TranslationError",
    "translate_formula",
    "translate_proof",
    "permutation_normalize",
    "commute_check",
]

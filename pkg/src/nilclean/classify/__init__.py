from .report import (
    DEGENERATE,
    FLAG_ORDER,
    UNKNOWN,
    ClassificationReport,
    FlagResult,
    QuotientProfile,
    flag_value,
    quotient_mod_J_profile,
    radical_quotient,
    ring_class_flags,
    ring_flag,
)
from .witness import (
    ElementProfile,
    NilCleanWitness,
    TripotentWitness,
    commuting_nil_clean_witness,
    element_json,
    element_profile,
    nil_clean_idempotents,
    nil_clean_witnesses,
    nilpotent_tripotent_witness,
    one_sided_nil_clean_witness,
    strongly_nil_clean_criterion,
    strongly_nil_clean_elem,
    sum_nilpotent_two_idem,
    sum_two_idem,
    tripotents,
)

__all__ = [name for name in dir() if not name.startswith("_")]

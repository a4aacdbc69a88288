from .core import (
    DEFAULT_LIMITS,
    AxiomError,
    CardinalityError,
    Carrier,
    Elem,
    FiniteRing,
    Limits,
    ParentMismatchError,
    RingError,
    check_axioms,
)
from .ideals import (
    Ideal,
    IdealError,
    Subring,
    ideal_generated,
    ideal_nil_index,
    ideal_product,
    make_subring,
    quotient,
    subring_generated,
    zero_ideal,
)
from .structure import (
    center,
    center_mask,
    central_idempotent_split,
    characteristic,
    corner_ring,
    idempotent_mask,
    idempotents,
    is_semipotent,
    jacobson_mask,
    jacobson_radical,
    nil_mask,
    nilpotency_indices,
    nilpotents,
    torsion_split,
    unit_inverses,
    unit_mask,
    units,
)

__all__ = [name for name in dir() if not name.startswith("_")]

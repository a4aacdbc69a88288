from .descriptor import (
    ElemLiteral,
    GroupDescriptor,
    ParseError,
    RingDescriptor,
    build_group,
    build_ring,
    cardinality_bound,
    parse_element,
    parse_element_literal,
    parse_ring_expr,
    render,
    resolve_element,
)
from .groups import FiniteGroup, GroupError, cyclic, dihedral, direct_product, quaternion8
from .matrix import Matrix, cofactor, det
from .rings import (
    augmentation_ideal,
    augmentation_map,
    block_triangular,
    boolean_power,
    direct_sum,
    ex27,
    gf,
    group_ring,
    matrix_ring,
    triangular_ring,
    trivial_extension,
    truncated_poly,
    zmod,
)

__all__ = [name for name in dir() if not name.startswith("_")]

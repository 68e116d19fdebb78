"""Symbolic classification of reducibility hierarchies on zero-dimensional
Polish space terms: exact CNF ordinal arithmetic, rank invariants of a space
algebra, the complete (alpha, theta) invariant with per-level structure
queries and realization, and a point-level difference-hierarchy toolkit."""

from .ordinals import (
    OMEGA,
    ONE,
    THETA,
    ZERO,
    ExtOrdinal,
    Ordinal,
    add,
    compare,
    format_ext,
    format_ordinal,
    fundamental_sequence,
    is_limit,
    mul,
    of,
    parity,
    parse_ext,
    parse_ordinal,
    split,
    successor,
)
from .spaces import (
    BAIRE,
    CANTOR,
    POINT,
    AttachToCantor,
    CBType,
    Constant,
    Glue,
    K,
    KAlong,
    OmegaTimesKAlong,
    Prefixed,
    SpaceTerm,
    SumFin,
    SumOmega,
    Y,
    Z,
    cb_rank,
    cb_type,
    comp_rank,
    format_term,
    is_compact,
    is_countable,
    is_simple,
    kernel_compact,
    limit_partition_selfdual,
    normalize,
    parse_term,
    reach,
)
from .engine import (
    LevelKind,
    WadgeInvariant,
    alpha_of,
    describe_level,
    hierarchy_render,
    is_valid_invariant,
    level_kind,
    realize_invariant,
    same_hierarchy,
    theta_of,
    wadge_invariant,
)
from .oracle import GeneratorConfig, cb_type_oracle, generate_terms, order_type

__all__ = [name for name in dir() if not name.startswith("_")]

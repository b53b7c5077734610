"""Non-crossing partitions, non-crossing linked partitions, the bijection
between linked partitions and endpoint-refinement pairs, and the exact
moment-transform calculus built on them."""

from .partitions import (
    BlockClassification,
    InvalidPartitionError,
    ParseError,
    Partition,
    Permutation,
    act,
    block_cycles,
    catalan,
    classify_blocks,
    count_endpoint_coarsenings,
    count_endpoint_refinements,
    endpoint_coarsenings,
    endpoint_floor,
    endpoint_refinements,
    endpoint_refines,
    enumerate_nc,
    is_noncrossing,
    make_partition,
    make_permutation,
    refines,
)
from .linked import (
    CoverMap,
    InvalidLinkedPartitionError,
    LinkedPartition,
    coloured_count,
    cover_map,
    cycled_unlink,
    enumerate_ncl,
    enumerate_ncl_direct,
    from_pair,
    generated_partition,
    make_linked,
    ncl_count,
    schroder,
    to_pair,
    unlink,
)
from .series import (
    MomentSequence,
    NormalizationError,
    TruncatedSeries,
    cumulants_from_moments,
    cumulants_from_t,
    moment_series,
    moments_from_cumulants,
    moments_from_t,
    s_transform,
    t_transform,
)
from .polynomials import (
    Monomial,
    Polynomial,
    cumulant_poly,
    cumulant_product_identity,
    moment_poly_cumulants,
    moment_poly_inner_outer,
    moment_poly_linked,
    moment_poly_pairs,
)

__version__ = "0.1.0"

__all__ = [
    "BlockClassification",
    "CoverMap",
    "InvalidLinkedPartitionError",
    "InvalidPartitionError",
    "LinkedPartition",
    "MomentSequence",
    "Monomial",
    "NormalizationError",
    "ParseError",
    "Partition",
    "Permutation",
    "Polynomial",
    "TruncatedSeries",
    "act",
    "block_cycles",
    "catalan",
    "classify_blocks",
    "coloured_count",
    "count_endpoint_coarsenings",
    "count_endpoint_refinements",
    "cover_map",
    "cumulant_poly",
    "cumulant_product_identity",
    "cumulants_from_moments",
    "cumulants_from_t",
    "cycled_unlink",
    "endpoint_coarsenings",
    "endpoint_floor",
    "endpoint_refinements",
    "endpoint_refines",
    "enumerate_nc",
    "enumerate_ncl",
    "enumerate_ncl_direct",
    "from_pair",
    "generated_partition",
    "is_noncrossing",
    "make_linked",
    "make_partition",
    "make_permutation",
    "moment_poly_cumulants",
    "moment_poly_inner_outer",
    "moment_poly_linked",
    "moment_poly_pairs",
    "moment_series",
    "moments_from_cumulants",
    "moments_from_t",
    "ncl_count",
    "refines",
    "s_transform",
    "schroder",
    "t_transform",
    "to_pair",
    "unlink",
]

"""Persistence pairing, shallow pairs, cancellations and depth posets of filtered Lefschetz complexes over Z/2."""
from .cancellation import (
    NotShallowError,
    ShallowPair,
    cancel,
    cancel_sequence,
    cancel_shallow,
    is_shallow,
    is_shallow_order,
    shallow_pairs,
)
from .complex import (
    BettiVector,
    Cell,
    Filter,
    LefschetzComplex,
    betti,
    check_filter,
    from_simplicial,
    sublevel,
    validate_complex,
)
from .depth import (
    BookKeeping,
    DepthPoset,
    build_depth_poset,
    is_linear_extension,
    order_pi,
    reduce_alpha,
    reduce_omega,
    split_by_dimension,
)
from .matrix import (
    BirthDeathPair,
    OrderedBoundaryMatrix,
    Pairing,
    build_matrix,
    canonical_cycle,
    is_birth_death_by_ranks,
    minor_rank,
    standard_reduction,
)
from .oracle import CapExceeded, brute_depth_poset, enumerate_shallow_orders, random_filtered_complex

__version__ = "0.1.0"

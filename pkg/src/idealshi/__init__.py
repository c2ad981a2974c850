"""Exact-arithmetic ideal-Shi hyperplane arrangements.

Construction of crystallographic root systems and their ideal-extended Shi
arrangements, exact intersection lattices and characteristic polynomials,
dual-partition exponent predictions, rank-2 multiarrangement exponents, and
the complete ambient-3 freeness criterion, all over arbitrary-precision
integers.
"""

__version__ = "0.1.0"

from .arrangement import (
    Arrangement,
    IntersectionLattice,
    LatticeCache,
    SizeBoundError,
    Subspace,
    filtration_exponents,
    filtration_step,
    intersection_count,
    intersection_lattice,
    localization,
    restriction,
    root_arrangement,
    root_covector,
    shi_arrangement,
    shi_minus,
    shi_plus,
    z_covector,
    ziegler_multiplicity,
)
from .charpoly import (
    BadReductionError,
    CharPoly,
    FactorFailure,
    NotDivisibleError,
    TeraoVerdict,
    charpoly_finite_field,
    charpoly_mobius,
    charpoly_whitney,
    chi0,
    chi0_at_zero,
    count_free_points,
    terao_check,
    try_factor_exponents,
)
from .ideals import (
    Ideal,
    LinearExtension,
    dominance_leq,
    empty_ideal,
    enumerate_ideals,
    full_ideal,
    ideal_exponents,
    ideal_from_roots,
    is_ideal,
    is_subsystem_ideal,
    linear_extension,
    localize_ideal,
    rank2_localizations,
    subsystem_simple_roots,
    weyl_catalan_number,
)
from .multiarr import (
    FreenessVerdict,
    derivation_space_dim,
    exp_rank2_multi,
    shift_predict,
    yoshinaga_check,
)
from .rootsys import (
    DualPartitionError,
    ExponentMultiset,
    Root,
    RootSystem,
    RootSystemType,
    build,
    coxeter_number,
    dual_partition,
    ext_height,
    ext_height_z,
    shi_exponents_dp,
    weyl_exponents,
)

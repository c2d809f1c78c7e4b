"""Classical channels as row-stochastic matrices: capacity, the row-polytope
order, and probability measures on finite monoids."""

__version__ = "0.1.0"

from .birkhoff import birkhoff_decompose
from .capacity import (
    CapacityResult,
    blahut_arimoto,
    cap_polytope,
    capacity_grid_oracle,
    entropy_gap,
)
from .channel import (
    Channel,
    Permutation,
    compose,
    conditional_entropy,
    constant_channel,
    identity_channel,
    is_doubly_stochastic,
    make_channel,
    mutual_information,
    permutation_channel,
    pushforward,
    z_channel,
)
from .monoid import (
    FiniteMonoid,
    ProbMeasure,
    convolve,
    cyclic_group,
    haar,
    make_monoid,
    measure,
    measure_to_channel,
    minimal_ideal,
    product_measure,
    pushforward_hom,
    symmetric_group,
    transformation_monoid,
    units,
)
from .polytope import (
    Polytope,
    canonical_form,
    contains_point,
    equiv_M_polytope,
    equiv_M_rows,
    leq_M,
    rows_polytope,
    way_below,
)
from .prob import Dist, convex_combine, dirac, entropy, make_dist

__all__ = [
    "__version__",
    "birkhoff_decompose",
    "CapacityResult",
    "blahut_arimoto",
    "cap_polytope",
    "capacity_grid_oracle",
    "entropy_gap",
    "Channel",
    "Permutation",
    "compose",
    "conditional_entropy",
    "constant_channel",
    "identity_channel",
    "is_doubly_stochastic",
    "make_channel",
    "mutual_information",
    "permutation_channel",
    "pushforward",
    "z_channel",
    "FiniteMonoid",
    "ProbMeasure",
    "convolve",
    "cyclic_group",
    "haar",
    "make_monoid",
    "measure",
    "measure_to_channel",
    "minimal_ideal",
    "product_measure",
    "pushforward_hom",
    "symmetric_group",
    "transformation_monoid",
    "units",
    "Polytope",
    "canonical_form",
    "contains_point",
    "equiv_M_polytope",
    "equiv_M_rows",
    "leq_M",
    "rows_polytope",
    "way_below",
    "Dist",
    "convex_combine",
    "dirac",
    "entropy",
    "make_dist",
]

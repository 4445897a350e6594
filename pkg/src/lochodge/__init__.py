"""Local cohomology of monomial ideals with Hodge, order and Ext filtrations."""

__version__ = "0.1.0"

from .monomial import MonomialIdeal, radical, minimal_primes, codim, ideal_power
from .cech import lcd, local_cohomology_dim, min_nonvanishing_q, nonvanishing_range
from .resolutions import betti_numbers, proj_dim, ext_colimit_image
from .filtrations import (compare_filtrations, hodge_dim, order_subspace, ext_subspace,
                          singularity_level_probe, jk_criterion_check)

__all__ = [
    "MonomialIdeal", "radical", "minimal_primes", "codim", "ideal_power",
    "lcd", "local_cohomology_dim", "min_nonvanishing_q", "nonvanishing_range",
    "betti_numbers", "proj_dim", "ext_colimit_image",
    "compare_filtrations", "hodge_dim", "order_subspace", "ext_subspace",
    "singularity_level_probe", "jk_criterion_check",
]

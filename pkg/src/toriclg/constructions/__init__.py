"""Classical mirror constructions recovered from the duality."""

from .batyrev_borisov import (
    NefData,
    NefError,
    bb_dual,
    bb_mirror_via_duality,
    nef_subpartition_check,
    partition_sets,
    phi_check,
    wbb_section,
)
from .berglund_hubsch import BHData, BHError, bh_dual, degree_monomials, factor_augmented
from .givental import givental_presentation, hv_presentation, semigroup_generation_check

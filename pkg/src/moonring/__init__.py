"""Exact computations with Green rings of small cyclic subgroups of the Monster,
McKay-Thompson series and the quasi-replicability vanishing criterion."""

from .exactseries import BiSeries, LaurentSeries, SeriesError, bi_exp, dilate, exp_series, log_series
from .modfun import catalog, hauptmodul, power_map
from .greenring import GreenRing, RingElement, adams, builtin_ring, exterior_power, load_ring, restrict, tensor
from .homfinder import Character, enumerate_characters
from .decomp import d_series_4B, decompose_4A, feasibility_6A
from .quasirep import (ReplicateFamily, assemble_biexp, bracket_series, check_quasirep,
                       family_from_adams, family_from_power_map, knz_check, recursion_probe_4B)

__version__ = "0.1.0"

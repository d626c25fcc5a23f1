"""
Horosphere System Package for treecoh

The submodules S_n of the corner model, window intersections, division
witnesses, sigma families with branch swaps, and the fiber-cover kernel.
"""

from .division import division_spanning_check, division_witness
from .fiber_kernel import fiber_kernel_check, stage_part
from .sigma import (BranchSwap, SigmaFamily, admissible_heights, enumerate_families, sample_families,
                    zero_chain_identity, zero_chain_suite)
from .ysystem import YSystem, horosphere_rank, window_lim_check, y_submodule

"""
Cohomology Package for treecoh

Stage pairs and exhaustion towers, the corner model of the top
cohomology, Mayer-Vietoris bookkeeping and lim / lim^1 windows.
"""

from .assembly import hcu_assemble, sublevel_tower, surviving_classes
from .corner import CornerCheck, CornerModel, LevelSpace, corner_crosscheck, corner_model, segment_edges
from .mayer_vietoris import (MayerVietorisReport, mv_verify, restriction_kernel, supported_span,
                             threshold_bottoms)
from .pairs import (DeathReport, ExhaustionTower, GradedDescriptor, TruncationPair, colimit_map,
                    corner_block_cohomology, eventual_death_check, persistence_check, relative_cohomology,
                    yhat_cohomology)
from .tower import StagePresentation, TowerWindow

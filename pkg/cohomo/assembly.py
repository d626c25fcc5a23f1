"""
Assembly of the lim / lim^1 windows into the completed cohomology

For each degree k the completed module sits in
0 -> lim^1 H^{k-1} -> H^k -> lim H^k -> 0, so the finite residue in degree
k is the lim-window of degree k together with the lim^1-window of degree
k-1.
"""

import logging
from fractions import Fraction
from typing import Any, Dict, Iterable, Mapping, Optional

from cohomo.pairs import ExhaustionTower
from cohomo.tower import StagePresentation, TowerWindow
from exactalg.cohomology import induced_map, map_kernel
from exactalg.descriptors import ModuleDescriptor
from exactalg.rings import INTEGERS, CoefficientRing
from exactalg.submodule import Submodule
from prodcomplex.complex import ProductComplex
from prodcomplex.regions import Sublevel
from utils.errors import InputError

logger = logging.getLogger(__name__)


def _lim_descriptor(window: TowerWindow) -> ModuleDescriptor:
    data = window.lim_window()["image"]
    return ModuleDescriptor(data["free_rank"], tuple(data["invariant_factors"]))


def hcu_assemble(windows: Mapping[int, TowerWindow], d: Optional[int] = None) -> Dict[str, Any]:
    """Combine per-degree tower windows

    Args:
        windows: Tower window for each degree; missing degrees are zero
        d: Degree in which the inputs are expected to be concentrated

    Returns:
        Report with the per-degree windows, the assembled support and
        whether inputs and output are concentrated in degree d and in
        degrees d and d+1
    """
    if not windows:
        raise InputError("hcu_assemble needs at least one tower window")

    lim: Dict[int, ModuleDescriptor] = {}
    lim1: Dict[int, ModuleDescriptor] = {}
    degrees: Dict[str, Any] = {}
    for k, window in sorted(windows.items()):
        lim[k] = _lim_descriptor(window)
        lim1[k] = window.lim1_window()
        degrees[str(k)] = {
            "stages": [window.start, window.end],
            "descriptors": [str(x) for x in window.descriptors()],
            "lim": window.lim_window(),
            "lim1": lim1[k].to_dict(),
        }

    assembled: Dict[str, Any] = {}
    support = []
    for k in sorted(set(lim) | {k + 1 for k in lim1}):
        lim_part = lim.get(k, ModuleDescriptor.zero())
        lim1_part = lim1.get(k - 1, ModuleDescriptor.zero())
        assembled[str(k)] = {"lim": lim_part.to_dict(), "lim1": lim1_part.to_dict()}
        if not (lim_part.is_zero and lim1_part.is_zero):
            support.append(k)

    report: Dict[str, Any] = {"degrees": degrees, "assembled": assembled, "support": support}
    if d is not None:
        inputs_concentrated = all(
            all(x.is_zero for x in window.descriptors()) for k, window in windows.items() if k != d
        )
        concentrated = set(support) <= {d, d + 1}
        report["inputs_concentrated"] = inputs_concentrated
        report["concentrated"] = concentrated
        report["passed"] = concentrated and inputs_concentrated
    logger.info(f"assembled completed cohomology with support {support}")
    return report


def surviving_classes(tower: ExhaustionTower, k: int, source: int, top: int) -> StagePresentation:
    """Image of H^k at stage source inside H^k at stage top, as R^a / kernel"""
    ring = tower.ring
    basis = tower.basis(source, k)
    if not basis.size:
        return StagePresentation.free(0, ring)
    target = tower.basis(top, k)
    if not target.size:
        return StagePresentation(basis.size, Submodule.full(basis.size, ring))
    kernel = map_kernel(tower.colimit_map(source, top, k), target.orders, ring)
    return StagePresentation(basis.size, kernel)


def sublevel_tower(complex_: ProductComplex, levels: Iterable[int], k: int, source: int,
                   top: Optional[int] = None, ring: CoefficientRing = INTEGERS) -> TowerWindow:
    """Degree-k tower of the sublevel sets X_n read through stage source -> top

    Stage n of the window is the part of H^k(X_n) at stage source that
    survives to stage top. Connecting maps are the restrictions from
    X_{n+1} to X_n on the stage-source cohomology.

    Args:
        complex_: Truncated product complex
        levels: Consecutive sublevel heights n
        k: Cohomological degree
        source: Stage whose classes are followed
        top: Stage they are read at, the truncation depth by default
        ring: Coefficient ring

    Returns:
        Tower window starting at the first level
    """
    top = complex_.depth if top is None else top
    levels = sorted(levels)
    if not levels or levels != list(range(levels[0], levels[-1] + 1)):
        raise InputError(f"Sublevel towers need consecutive levels, got {levels}")
    if not 1 <= source < top:
        raise InputError(f"Source stage {source} must lie in [1, {top - 1}]", stage=source)
    towers = [ExhaustionTower(complex_, Sublevel(Fraction(n)), ring) for n in levels]
    stages = [surviving_classes(tower, k, source, top) for tower in towers]
    maps = []
    for lower, upper in zip(towers, towers[1:]):
        chain_map = upper.pair(source).cells.restriction_matrix(lower.pair(source).cells, k)
        maps.append(induced_map(upper.basis(source, k), lower.basis(source, k), chain_map))
    return TowerWindow(stages, maps, ring, start=levels[0], degree=k)

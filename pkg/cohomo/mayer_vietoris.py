"""
Mayer-Vietoris bookkeeping for X = X_n union B_n

The image of the connecting map H_c^{d-1}(Y_n) -> H_c^d(X) is read at
stage N as a submodule S_n of R^{Lambda_N}, in two independent ways:

* supported span: the classes of relative top cochains carried by cells
  that meet the open horoball, i.e. d-cells with max beta > n. Their
  corner evaluations are tensor indicators of descendant sets.
* restriction kernel: the kernel of H^d(X, stage N) -> H^d(X_n, stage N),
  pushed into R^{Lambda_N} by the corner evaluation.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from exactalg.cohomology import induced_map, map_kernel
from exactalg.rings import INTEGERS, CoefficientRing
from exactalg.sparse import SparseIntMatrix
from exactalg.submodule import Submodule
from cohomo.corner import CornerCheck, LevelSpace
from cohomo.pairs import ExhaustionTower, check_stage, eventual_death_check
from prodcomplex.complex import ProductComplex, as_fraction
from prodcomplex.regions import Sublevel, Superlevel

logger = logging.getLogger(__name__)


def threshold_bottoms(complex_: ProductComplex, n, top: Optional[int] = None) -> List[Tuple[int, ...]]:
    """Bottom tuples of the stage-top d-cells with max beta > n, up to redundancy

    The indicator of D(b) is the sum of the indicators of D(c) over the
    children c of b, so a tuple whose every lowering still clears the
    threshold is a sum of other generators and is left out.
    """
    top = complex_.depth if top is None else top
    n = as_fraction(n, "n")
    weights = complex_.weights
    heights = range(-top, top)

    result = []
    for levels in itertools.product(heights, repeat=complex_.d):
        value = sum(w * (h + 1) for w, h in zip(weights, levels))
        if value <= n:
            continue
        if any(h > -top and value - w > n for w, h in zip(weights, levels)):
            continue
        per_factor = []
        for tree, h in zip(complex_.factors, levels):
            per_factor.append(tree.descendants_at(tree.spine(top), h))
        result.extend(itertools.product(*per_factor))
    return result


def supported_span(complex_: ProductComplex, n, top: Optional[int] = None,
                   ring: CoefficientRing = INTEGERS) -> Submodule:
    """S_n from the cells meeting the open horoball B_n"""
    top = complex_.depth if top is None else top
    check_stage(complex_, top)
    space = LevelSpace(complex_, -top, top)
    vectors = [space.vector(bottoms) for bottoms in threshold_bottoms(complex_, n, top)]
    logger.debug(f"supported span at n={n}: {len(vectors)} generators in rank {space.rank}")
    return Submodule.from_vectors(space.rank, vectors, ring)


def restriction_kernel(check: CornerCheck, n, top: Optional[int] = None,
                       sublevel: Optional[ExhaustionTower] = None) -> Submodule:
    """S_n as the evaluated kernel of restriction to the sublevel set X_n"""
    complex_ = check.complex
    top = complex_.depth if top is None else top
    d = complex_.d
    sublevel = sublevel or ExhaustionTower(complex_, Sublevel(as_fraction(n, "n")), check.ring)

    whole_basis = check.top_basis(top)
    sub_basis = sublevel.basis(top, d)
    chain_map = check.tower.pair(top).cells.restriction_matrix(sublevel.pair(top).cells, d)
    restriction = induced_map(whole_basis, sub_basis, chain_map)
    kernel = map_kernel(restriction, sub_basis.orders, check.ring)

    evaluation = check.evaluation_on_classes(top)
    reduce = check.ring.arithmetic.reduce
    vectors = []
    for coefficients in kernel.basis():
        image = {i: reduce(x) for i, x in evaluation.matvec(coefficients).items()}
        image = {i: x for i, x in image.items() if x}
        if image:
            vectors.append(image)
    return Submodule.from_vectors(evaluation.rows, vectors, check.ring)


@dataclass
class MayerVietorisReport:
    n: Fraction
    stage: int
    passed: bool
    agreement: bool
    rank: int
    superlevel: Dict[str, Any]
    sublevel_top_minus_one: Dict[str, Any]
    sublevel_death: Optional[Dict[str, Any]] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": str(self.n),
            "stage": self.stage,
            "passed": self.passed,
            "agreement": self.agreement,
            "rank": self.rank,
            "superlevel": self.superlevel,
            "sublevel_top_minus_one": self.sublevel_top_minus_one,
            "sublevel_death": self.sublevel_death,
            **self.details,
        }


def mv_verify(complex_: ProductComplex, n, top: Optional[int] = None,
              ring: CoefficientRing = INTEGERS, window: int = 1,
              check: Optional[CornerCheck] = None) -> MayerVietorisReport:
    """Check both derivations of S_n agree and B_n carries no stage cohomology

    The degree d-1 cohomology of X_n is reported with its eventual death
    over the window when that fits the truncation.
    """
    n = as_fraction(n, "n")
    top = complex_.depth if top is None else top
    check_stage(complex_, top)
    check = check or CornerCheck(complex_, ring)
    d = complex_.d

    horoball = ExhaustionTower(complex_, Superlevel(n), ring)
    superlevel = horoball.descriptor(top)
    sublevel = ExhaustionTower(complex_, Sublevel(n), ring)

    span = supported_span(complex_, n, top, ring)
    kernel = restriction_kernel(check, n, top, sublevel)
    agreement = span.equals(kernel)

    death = None
    if top - window >= 0 and d >= 1:
        death = eventual_death_check(sublevel, d - 1, window).to_dict()

    passed = agreement and superlevel.is_zero()
    if not passed:
        logger.error(f"Mayer-Vietoris check failed at n={n}: agreement={agreement}, B_n={superlevel}")
    return MayerVietorisReport(
        n=n,
        stage=top,
        passed=passed,
        agreement=agreement,
        rank=span.rank,
        superlevel=superlevel.to_dict(),
        sublevel_top_minus_one=sublevel.basis(top, d - 1).descriptor.to_dict() if d >= 1 else {},
        sublevel_death=death,
        details={"kernel_rank": kernel.rank},
    )

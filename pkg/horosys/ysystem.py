"""
The horosphere system S_n inside R^{Lambda_N}

S_n is the image of H_c^{d-1}(Y_n) in H_c^d(X), read at stage N through
the corner model. The system keeps both derivations of every S_n and
exposes nesting, purity, the closed-form rank on regular trees, the
window intersection with the stage-n corner classes, and the tower of
W-space quotients R^{Lambda_N} / S_n.
"""

import logging
import threading
from typing import Any, Dict, Iterable, Optional

from cohomo.corner import CornerCheck, CornerModel, LevelSpace
from cohomo.mayer_vietoris import restriction_kernel, supported_span, threshold_bottoms
from cohomo.pairs import check_stage
from cohomo.tower import StagePresentation, TowerWindow
from exactalg.rings import INTEGERS, CoefficientRing
from exactalg.sparse import SparseIntMatrix
from exactalg.submodule import Submodule, purity_check
from prodcomplex.complex import ProductComplex, as_fraction
from utils.errors import ContractViolation, InputError

logger = logging.getLogger(__name__)


def horosphere_rank(d: int, q: int, top: int, n: int) -> int:
    """rank S_n for unit weights on (q+1)-regular trees

    Sums prod w_{a_i} over a_1 + ... + a_d >= n - d + 1, where
    w_{N-1} = q and w_j = q^{N-j} - q^{N-j-1} below.
    """
    widths = {top - 1: q}
    for j in range(-top, top - 1):
        widths[j] = q ** (top - j) - q ** (top - j - 1)
    threshold = n - d + 1

    totals = {0: 1}
    for _ in range(d):
        following: Dict[int, int] = {}
        for partial, count in totals.items():
            for a, width in widths.items():
                following[partial + a] = following.get(partial + a, 0) + count * width
        totals = following
    return sum(count for partial, count in totals.items() if partial >= threshold)


class YSystem:
    """Submodules S_n of R^{Lambda_N} with both derivations on demand"""

    def __init__(self, complex_: ProductComplex, top: Optional[int] = None,
                 ring: CoefficientRing = INTEGERS, check: Optional[CornerCheck] = None):
        self.complex = complex_
        self.top = complex_.depth if top is None else top
        check_stage(complex_, self.top)
        if self.top < 1:
            raise InputError("The horosphere system needs a stage N >= 1")
        self.ring = ring
        self._check = check
        self._spans: Dict[Any, Submodule] = {}
        self._lock = threading.RLock()

    @property
    def rank(self) -> int:
        """Rank of the ambient module R^{Lambda_N}"""
        return LevelSpace(self.complex, -self.top, self.top).rank

    @property
    def corner_check(self) -> CornerCheck:
        with self._lock:
            if self._check is None:
                self._check = CornerCheck(self.complex, self.ring)
            return self._check

    def s(self, n) -> Submodule:
        """S_n from the cells meeting B_n"""
        with self._lock:
            if n not in self._spans:
                self._spans[n] = supported_span(self.complex, n, self.top, self.ring)
            return self._spans[n]

    def restriction_derivation(self, n) -> Submodule:
        """S_n as the evaluated kernel of restriction to X_n"""
        return restriction_kernel(self.corner_check, n, self.top)

    def agreement(self, n) -> Dict[str, Any]:
        supported = self.s(n)
        kernel = self.restriction_derivation(n)
        agree = supported.equals(kernel)
        if not agree:
            logger.error(f"derivations of S_{n} disagree: ranks {supported.rank} and {kernel.rank}")
        return {"n": str(n), "passed": agree, "supported_rank": supported.rank, "kernel_rank": kernel.rank}

    def require_agreement(self, n) -> None:
        result = self.agreement(n)
        if not result["passed"]:
            raise ContractViolation(f"The two derivations of S_{n} differ", reason="derivation_mismatch",
                                    **result)

    def nesting(self, levels: Iterable[int]) -> Dict[str, Any]:
        """S_{n+1} inside S_n along consecutive levels"""
        levels = sorted(levels)
        failures = []
        for low, high in zip(levels, levels[1:]):
            if not self.s(low).contains_submodule(self.s(high)):
                failures.append([low, high])
        return {"passed": not failures, "levels": levels, "failures": failures}

    def purity(self, n) -> bool:
        return purity_check(self.s(n))

    def rank_oracle(self, n: int) -> Optional[int]:
        """Closed-form rank, or None off regular trees with unit weights"""
        complex_ = self.complex
        qs = {tree.q for tree in complex_.factors}
        if len(qs) != 1 or None in qs or any(w != 1 for w in complex_.weights):
            return None
        return horosphere_rank(complex_.d, qs.pop(), self.top, n)

    def w_space_tower(self, levels: Iterable[int]) -> TowerWindow:
        """M_n = R^{Lambda_N} / S_n for consecutive n with identity connecting maps"""
        levels = sorted(levels)
        if not levels or levels != list(range(levels[0], levels[-1] + 1)):
            raise InputError(f"W-space towers need consecutive levels, got {levels}")
        rank = self.rank
        stages = [StagePresentation(rank, self.s(n)) for n in levels]
        maps = [SparseIntMatrix.identity(rank)] * (len(levels) - 1)
        return TowerWindow(stages, maps, self.ring, start=levels[0], degree=self.complex.d)

    def __repr__(self) -> str:
        return f"YSystem(d={self.complex.d}, N={self.top}, ring={self.ring})"


def y_submodule(complex_: ProductComplex, n, top: Optional[int] = None,
                ring: CoefficientRing = INTEGERS, verify: bool = True) -> Submodule:
    """S_n, checked against the restriction kernel unless verify is off"""
    system = YSystem(complex_, top, ring)
    if verify:
        system.require_agreement(n)
    return system.s(n)


def window_lim_check(complex_: ProductComplex, n: int, m, top: Optional[int] = None,
                     ring: CoefficientRing = INTEGERS) -> Dict[str, Any]:
    """S_m meets the image of f_{n -> N} only in zero, for m above beta on K_{n+1}

    Both submodules are spanned by tensor indicators of descendant sets, so
    the intersection is computed on the coarsest level they all reach.
    """
    top = complex_.depth if top is None else top
    check_stage(complex_, top)
    if not 0 <= n <= top:
        raise InputError(f"Support stage {n} outside [0, {top}]", stage=n)
    m = as_fraction(m, "m")
    bound = complex_.weight_sum * (n + 1)
    record: Dict[str, Any] = {"n": n, "m": str(m), "stage": top, "bound": str(bound)}
    if m <= bound:
        logger.warning(f"window check at n={n}, m={m} skipped: m must exceed {bound}")
        return {**record, "applicable": False, "passed": True}

    bottoms = threshold_bottoms(complex_, m, top)
    levels = [complex_.factors[i].height(b) for bs in bottoms for i, b in enumerate(bs)]
    level = min([-n] + levels)
    space = LevelSpace(complex_, level, top)
    span = Submodule.from_vectors(space.rank, [space.vector(bs) for bs in bottoms], ring)
    corners = CornerModel(complex_, n).lambda_n
    image = Submodule.from_vectors(space.rank, [space.vector(v) for v in corners], ring)
    meet = span.intersection(image)
    record.update(applicable=True, passed=meet.rank == 0, level=level, span_rank=span.rank,
                  image_rank=image.rank)
    if meet.rank:
        witness = meet.basis()[0]
        record["witness"] = {str(i): str(x) for i, x in sorted(witness.items())}
        logger.error(f"window check failed at n={n}, m={m}")
    return record

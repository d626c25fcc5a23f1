"""
Truncation pairs and exhaustion towers for treecoh

The stage-n pair of a region A is (A, A'_n), where A'_n is the largest
subcomplex of A missing the open box, the product of the sets of vertices
strictly below x_{i,n} with height > -n. Relative cochains live on the
cells of A meeting that box; all of them lie in K_n. Stage 0 is empty.
Compact-support statements are read off the colimit along stages.
"""

import logging
import threading
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from exactalg.cohomology import CohomologyBasis, induced_map
from exactalg.descriptors import ModuleDescriptor
from exactalg.rings import INTEGERS, CoefficientRing
from exactalg.sparse import SparseIntMatrix
from prodcomplex.cells import CellSet
from prodcomplex.complex import ProductComplex, as_fraction, region_cells
from prodcomplex.regions import CornerBlock, Region, YHat
from utils.errors import DeepenTruncationError, InputError

logger = logging.getLogger(__name__)


@dataclass
class GradedDescriptor:
    """Module descriptors by cohomological degree"""

    degrees: Dict[int, ModuleDescriptor] = field(default_factory=dict)

    def __getitem__(self, k: int) -> ModuleDescriptor:
        return self.degrees.get(k, ModuleDescriptor.zero())

    def is_zero(self) -> bool:
        return all(d.is_zero for d in self.degrees.values())

    def support(self) -> List[int]:
        return sorted(k for k, d in self.degrees.items() if not d.is_zero)

    def concentrated_in(self, *ks: int) -> bool:
        return set(self.support()) <= set(ks)

    def to_dict(self) -> Dict[str, Any]:
        return {str(k): d.to_dict() for k, d in sorted(self.degrees.items())}

    def __str__(self) -> str:
        return ", ".join(f"H^{k}={d}" for k, d in sorted(self.degrees.items()))


class TruncationPair:
    """Relative cochain complex of a region at a stage"""

    def __init__(self, complex_: ProductComplex, region: Region, cells: CellSet, stage: Optional[int] = None):
        self.complex = complex_
        self.region = region
        self.cells = cells
        self.stage = stage

    @classmethod
    def at_stage(cls, complex_: ProductComplex, region: Region, n: int) -> "TruncationPair":
        check_stage(complex_, n)
        cells = region_cells(complex_, region, stage=n) if n > 0 else []
        return cls(complex_, region, complex_.cell_set(cells), n)

    @classmethod
    def block(cls, complex_: ProductComplex, region: Region) -> "TruncationPair":
        """The built-in pair of a region, e.g. (C(m), upper boundary of C(m))"""
        cells = [c for c in region_cells(complex_, region) if not region.excludes(complex_, c)]
        return cls(complex_, region, complex_.cell_set(cells))

    def coboundary(self, k: int) -> SparseIntMatrix:
        return self.cells.coboundary(k)

    def basis(self, k: int, ring: CoefficientRing = INTEGERS) -> CohomologyBasis:
        return CohomologyBasis(self.coboundary(k - 1), self.coboundary(k), ring)

    def cohomology(self, ring: CoefficientRing = INTEGERS) -> GradedDescriptor:
        result = GradedDescriptor()
        for k in range(self.complex.d + 1):
            result.degrees[k] = self.basis(k, ring).descriptor
        return result

    def __repr__(self) -> str:
        return f"TruncationPair({self.region}, stage={self.stage}, cells={self.cells.counts()})"


def check_stage(complex_: ProductComplex, n: int) -> None:
    if not isinstance(n, int) or n < 0:
        raise InputError(f"Stage must be a nonnegative integer, got {n}", stage=n)
    if n > complex_.depth:
        raise DeepenTruncationError(f"Stage {n} exceeds the truncation depth {complex_.depth}",
                                    required=n, available=complex_.depth)


def relative_cohomology(complex_: ProductComplex, region: Region, n: int,
                        ring: CoefficientRing = INTEGERS) -> GradedDescriptor:
    """H^*(A, A'_n) in all degrees"""
    return TruncationPair.at_stage(complex_, region, n).cohomology(ring)


class ExhaustionTower:
    """Stage pairs of one region with cached cohomology bases

    Bases are cached per (stage, degree); the cache is shared between
    threads.
    """

    def __init__(self, complex_: ProductComplex, region: Region, ring: CoefficientRing = INTEGERS):
        self.complex = complex_
        self.region = region
        self.ring = ring
        self._pairs: Dict[int, TruncationPair] = {}
        self._bases: Dict[Tuple[int, int], CohomologyBasis] = {}
        self._lock = threading.RLock()

    def pair(self, n: int) -> TruncationPair:
        with self._lock:
            if n not in self._pairs:
                self._pairs[n] = TruncationPair.at_stage(self.complex, self.region, n)
            return self._pairs[n]

    def basis(self, n: int, k: int) -> CohomologyBasis:
        with self._lock:
            key = (n, k)
            if key not in self._bases:
                self._bases[key] = self.pair(n).basis(k, self.ring)
                logger.debug(f"{self.region} stage {n} degree {k}: {self._bases[key].descriptor}")
            return self._bases[key]

    def descriptor(self, n: int) -> GradedDescriptor:
        return GradedDescriptor({k: self.basis(n, k).descriptor for k in range(self.complex.d + 1)})

    def colimit_map(self, n: int, n_prime: int, k: int) -> SparseIntMatrix:
        """H^k(A, A'_n) -> H^k(A, A'_n') induced by extension by zero"""
        if n_prime < n:
            raise InputError(f"Colimit maps go up in stage, got {n} -> {n_prime}")
        source = self.basis(n, k)
        target = self.basis(n_prime, k)
        if n == n_prime:
            return SparseIntMatrix.identity(source.size)
        chain_map = self.pair(n).cells.extension_matrix(self.pair(n_prime).cells, k)
        return induced_map(source, target, chain_map)


def colimit_map(complex_: ProductComplex, region: Region, n: int, n_prime: int, k: int,
                ring: CoefficientRing = INTEGERS) -> SparseIntMatrix:
    return ExhaustionTower(complex_, region, ring).colimit_map(n, n_prime, k)


@dataclass
class DeathReport:
    passed: bool
    k: int
    window: int
    stages: List[int]
    witness: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"passed": self.passed, "k": self.k, "window": self.window, "stages": self.stages,
                "witness": self.witness}


def eventual_death_check(tower: ExhaustionTower, k: int, window: int) -> DeathReport:
    """True iff every stage-n class of degree k dies by stage n + window

    Stages range over 0 <= n <= N - window. A failure reports the first
    stage and the first generator whose image survives.
    """
    if window < 1:
        raise InputError(f"Window must be at least 1, got {window}")
    last = tower.complex.depth - window
    if last < 0:
        raise DeepenTruncationError(f"Window {window} does not fit depth {tower.complex.depth}",
                                    required=window, available=tower.complex.depth)
    stages = list(range(0, last + 1))
    for n in stages:
        matrix = tower.colimit_map(n, n + window, k)
        if not matrix.is_zero():
            column = min(j for (_, j), _value in matrix.items())
            witness = {"stage": n, "generator": column,
                       "source": str(tower.basis(n, k).descriptor),
                       "image": {str(i): v for (i, j), v in matrix.items() if j == column}}
            return DeathReport(False, k, window, stages, witness)
    return DeathReport(True, k, window, stages)


def persistence_check(tower: ExhaustionTower, k: int, window: int) -> DeathReport:
    """True iff some stage map over the window is nonzero"""
    report = eventual_death_check(tower, k, window)
    return DeathReport(not report.passed, k, window, report.stages, report.witness)


def corner_block_cohomology(complex_: ProductComplex, r, m: int,
                            ring: CoefficientRing = INTEGERS) -> GradedDescriptor:
    """H^*(C(m), upper boundary of C(m)); zero in every degree"""
    return TruncationPair.block(complex_, CornerBlock(as_fraction(r, "r"), m)).cohomology(ring)


def yhat_cohomology(complex_: ProductComplex, m, n: int,
                    ring: CoefficientRing = INTEGERS) -> GradedDescriptor:
    """Stage-n cohomology of the block model of the horosphere at level m"""
    return relative_cohomology(complex_, YHat(as_fraction(m, "m")), n, ring)

"""
Finite windows of inverse towers

A window holds stages m = 0..M, each presented as R^{a_m} modulo a
relations submodule, and connecting maps r_m: M_{m+1} -> M_m written as
a_m x a_{m+1} matrices on the presenting generators.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

from exactalg.descriptors import ModuleDescriptor
from exactalg.rings import INTEGERS, CoefficientRing
from exactalg.sparse import SparseIntMatrix
from exactalg.submodule import Submodule, subquotient_descriptor
from utils.errors import ContractViolation, InputError

logger = logging.getLogger(__name__)


@dataclass
class StagePresentation:
    """R^generators / relations"""

    generators: int
    relations: Submodule

    @classmethod
    def free(cls, rank: int, ring: CoefficientRing = INTEGERS) -> "StagePresentation":
        return cls(rank, Submodule.zero(rank, ring))

    @property
    def descriptor(self) -> ModuleDescriptor:
        return self.relations.quotient_descriptor()


class TowerWindow:
    """Stages n_0..n_1 of a tower M_{n_0} <- M_{n_0+1} <- ... <- M_{n_1}"""

    def __init__(self, stages: Sequence[StagePresentation], maps: Sequence[SparseIntMatrix],
                 ring: CoefficientRing = INTEGERS, start: int = 0, degree: Optional[int] = None):
        if not stages:
            raise InputError("A tower window needs at least one stage")
        if len(maps) != len(stages) - 1:
            raise InputError(f"{len(stages)} stages need {len(stages) - 1} connecting maps, got {len(maps)}")
        self.stages = list(stages)
        self.maps = list(maps)
        self.ring = ring
        self.start = start
        self.degree = degree
        for m, matrix in enumerate(self.maps):
            upper, lower = self.stages[m + 1], self.stages[m]
            if matrix.shape != (lower.generators, upper.generators):
                raise InputError(f"Connecting map {m} has shape {matrix.shape}, "
                                 f"expected ({lower.generators}, {upper.generators})")
            for vector in upper.relations.basis():
                if not lower.relations.contains(matrix.matvec(vector)):
                    raise ContractViolation(f"Connecting map {m} does not preserve relations",
                                            reason="not_a_module_map", stage=start + m)

    @classmethod
    def free(cls, ranks: Sequence[int], maps: Sequence[SparseIntMatrix],
             ring: CoefficientRing = INTEGERS, **kwargs: Any) -> "TowerWindow":
        return cls([StagePresentation.free(a, ring) for a in ranks], maps, ring, **kwargs)

    @property
    def length(self) -> int:
        return len(self.stages)

    @property
    def end(self) -> int:
        return self.start + self.length - 1

    def descriptors(self) -> List[ModuleDescriptor]:
        return [stage.descriptor for stage in self.stages]

    def composite(self) -> SparseIntMatrix:
        """r_0 r_1 ... r_{M-1}: generators of the last stage into the first"""
        result = SparseIntMatrix.identity(self.stages[-1].generators)
        for matrix in reversed(self.maps):
            result = matrix @ result
        return result

    def delta_matrix(self) -> SparseIntMatrix:
        """Delta((x_m)) = (x_m - r_m(x_{m+1})) on the truncated product

        Rows cover stages 0..M-1, columns stages 0..M.
        """
        sizes = [stage.generators for stage in self.stages]
        offsets = [0]
        for size in sizes:
            offsets.append(offsets[-1] + size)
        entries: Dict[Any, Any] = {}
        for m in range(self.length - 1):
            for i in range(sizes[m]):
                entries[(offsets[m] + i, offsets[m] + i)] = 1
            for (i, j), value in self.maps[m].items():
                entries[(offsets[m] + i, offsets[m + 1] + j)] = -value
        return SparseIntMatrix(offsets[-2] if self.length > 1 else 0, offsets[-1], entries)

    def lim_window(self) -> Dict[str, Any]:
        """Image of the longest composite inside the first stage"""
        first = self.stages[0]
        image = Submodule(first.generators, self.composite(), self.ring).sum(first.relations)
        return {
            "image": subquotient_descriptor(image, first.relations).to_dict(),
            "cokernel": image.quotient_descriptor().to_dict(),
        }

    def lim1_window(self) -> ModuleDescriptor:
        """Mittag-Leffler defect: the sum of M_m / r_m(M_{m+1}) for m < M"""
        blocks = []
        rows = 0
        for m in range(self.length - 1):
            stage = self.stages[m]
            blocks.append((rows, stage.relations.generators.hstack(self.maps[m])))
            rows += stage.generators
        entries = {}
        column = 0
        for offset, block in blocks:
            for (i, j), value in block.items():
                entries[(offset + i, column + j)] = value
            column += block.cols
        relations = SparseIntMatrix(rows, column, entries)
        return Submodule(rows, relations, self.ring).quotient_descriptor()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "stages": [self.start, self.end],
            "degree": self.degree,
            "descriptors": [d.to_dict() for d in self.descriptors()],
            "maps": [m.to_json() for m in self.maps],
        }

"""
Horocyclic coding of the (q+1)-regular tree

With label budget L, a vertex at height h <= L is the label
(a_h, a_{h+1}, ..., a_{L-1}) over {0, ..., q-1}. The parent forgets a_h and
the children prepend a_{h-1}. The vertex with the all-zero label at height
n is the spine vertex x_n, so reading a label from a_{L-1} down gives the
child-index path from x_L in the truncated tree of depth L.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from treegeo.tree import TruncatedTree, build_regular
from utils.errors import BoundaryError, DeepenTruncationError, InputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class DLVertex:
    height: int
    label: Tuple[int, ...]

    def value(self, position: int) -> int:
        """a_position, zero above the label"""
        if position < self.height:
            raise InputError(f"Position {position} lies below height {self.height}")
        index = position - self.height
        return self.label[index] if index < len(self.label) else 0

    @property
    def budget(self) -> int:
        return self.height + len(self.label)

    def parent(self) -> "DLVertex":
        if not self.label:
            raise BoundaryError(f"Vertex at height {self.height} is the top of the coding")
        return DLVertex(self.height + 1, self.label[1:])

    def children(self, q: int) -> List["DLVertex"]:
        return [DLVertex(self.height - 1, (c,) + self.label) for c in range(q)]

    def path(self) -> Tuple[int, ...]:
        return tuple(reversed(self.label))

    def __str__(self) -> str:
        return f"{self.height}:{''.join(str(a) for a in self.label)}"


class CodedTree:
    """The coded vertices of C_L with their truncated-tree ids"""

    def __init__(self, q: int, budget: int):
        if not isinstance(q, int) or q < 2:
            raise InputError(f"The alphabet needs q >= 2, got {q}", q=q)
        if not isinstance(budget, int) or budget < 1:
            raise InputError(f"Label budget must be a positive integer, got {budget}", budget=budget)
        self.q = q
        self.budget = budget
        self.tree: TruncatedTree = build_regular(q, budget)

    def make(self, height: int, values: Dict[int, int]) -> DLVertex:
        """Vertex at a height from a position -> letter map"""
        self.check_height(height)
        for position, letter in values.items():
            if not 0 <= letter < self.q:
                raise InputError(f"Letter {letter} outside the alphabet of size {self.q}")
            if position >= self.budget and letter:
                raise DeepenTruncationError(f"Lamp at {position} exceeds the label budget {self.budget}",
                                            required=position + 1, available=self.budget)
        return DLVertex(height, tuple(values.get(p, 0) for p in range(height, self.budget)))

    def check_height(self, height: int) -> None:
        if not -self.budget <= height <= self.budget:
            raise DeepenTruncationError(f"Height {height} outside the label budget {self.budget}",
                                        required=abs(height), available=self.budget)

    def at_height(self, height: int) -> List[DLVertex]:
        """All labels at a height, in tree id order"""
        self.check_height(height)
        return [self.from_id(v) for v in self.tree.at_height(height)]

    def to_id(self, vertex: DLVertex) -> int:
        if vertex.budget != self.budget:
            raise InputError(f"Vertex {vertex} was coded with another budget")
        return self.tree.find(vertex.path())

    def from_id(self, v: int) -> DLVertex:
        path = self.tree.path(v)
        return DLVertex(self.tree.height(v), tuple(reversed(path)))

"""
Regions of a product complex for treecoh

A region is a face-closed set of cells decided per cell from the corner
values of beta (or of the Busemann sums of horoball specs). Regions are
frozen dataclasses; the complex they are evaluated on is passed in.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple

from prodcomplex.cells import Cell
from prodcomplex.complex import ProductComplex, as_fraction
from utils.errors import DeepenTruncationError, InputError

logger = logging.getLogger(__name__)


class Region:
    """Base class of cell selectors"""

    kind = "region"

    def contains(self, complex_: ProductComplex, cell: Cell) -> bool:
        raise NotImplementedError

    def excludes(self, complex_: ProductComplex, cell: Cell) -> bool:
        """True for cells of the relative part of a built-in pair"""
        return False

    def candidate_components(self, complex_: ProductComplex) -> List[List[int]]:
        return [complex_.all_components(i) for i in range(complex_.d)]

    def params(self) -> Dict[str, Any]:
        return {}

    def to_dict(self) -> Dict[str, Any]:
        data = {"kind": self.kind}
        data.update(self.params())
        return data

    def __str__(self) -> str:
        values = ",".join(str(v) for v in self.params().values())
        return f"{self.kind}({values})"


@dataclass(frozen=True)
class Whole(Region):
    kind = "whole"

    def contains(self, complex_, cell):
        return True


@dataclass(frozen=True)
class Superlevel(Region):
    """B_r: cells whose lowest corner has beta >= r"""

    r: Fraction = Fraction(0)
    kind = "superlevel"

    def contains(self, complex_, cell):
        return complex_.beta_range(cell)[0] >= self.r

    def params(self):
        return {"r": str(self.r)}


@dataclass(frozen=True)
class Sublevel(Region):
    """X_r: cells whose highest corner has beta <= r"""

    r: Fraction = Fraction(0)
    kind = "sublevel"

    def contains(self, complex_, cell):
        return complex_.beta_range(cell)[1] <= self.r

    def params(self):
        return {"r": str(self.r)}


@dataclass(frozen=True)
class KBlock(Region):
    """K_n = product of the C_{i,n}"""

    n: int = 0
    kind = "kblock"

    def contains(self, complex_, cell):
        for i, code in enumerate(cell):
            tree = complex_.factors[i]
            top = tree.spine(self.n)
            v = code >> 1
            if not tree.is_below(v, top) or tree.heights[v] < -self.n:
                return False
            if code & 1 and v == top:
                return False
        return True

    def candidate_components(self, complex_):
        return [complex_.block_components(i, complex_.factors[i].spine(self.n), -self.n)
                for i in range(complex_.d)]

    def params(self):
        return {"n": self.n}


def corner_reach(weights: Sequence[Fraction], r, m: int) -> List[int]:
    """Lowest height each factor reaches inside C(m) for the horoball at r"""
    total = sum(weights, Fraction(0))
    return [math.ceil((r - m * (total - weight)) / weight) for weight in weights]


def corner_block_depth(weights: Sequence[Fraction], r, m: int) -> int:
    """Smallest truncation depth holding C(m) of the horoball at r"""
    return max([m] + [-lowest for lowest in corner_reach(weights, r, m)])


@dataclass(frozen=True)
class CornerBlock(Region):
    """C(m): the part of B_r below the corner (x_{1,m}, ..., x_{d,m})

    The relative part is the upper boundary, the cells with some
    coordinate equal to x_{i,m}.
    """

    r: Fraction = Fraction(0)
    m: int = 0
    kind = "corner"

    def min_heights(self, complex_: ProductComplex) -> List[int]:
        """Lowest height each factor reaches inside C(m)"""
        result = []
        for i, lowest in enumerate(corner_reach(complex_.weights, self.r, self.m)):
            if lowest < -complex_.depth:
                raise DeepenTruncationError(
                    f"C({self.m}) at r={self.r} reaches height {lowest} in factor {i}",
                    required=-lowest, available=complex_.depth, factor=i,
                )
            result.append(min(lowest, self.m))
        return result

    def contains(self, complex_, cell):
        for i, code in enumerate(cell):
            tree = complex_.factors[i]
            top = tree.spine(self.m)
            v = code >> 1
            if not tree.is_below(v, top):
                return False
            if code & 1 and v == top:
                return False
        return complex_.beta_range(cell)[0] >= self.r

    def excludes(self, complex_, cell):
        return any(code == 2 * complex_.factors[i].spine(self.m) for i, code in enumerate(cell))

    def candidate_components(self, complex_):
        lows = self.min_heights(complex_)
        return [complex_.block_components(i, complex_.factors[i].spine(self.m), lows[i])
                for i in range(complex_.d)]

    def params(self):
        return {"r": str(self.r), "m": self.m}


@dataclass(frozen=True)
class YHat(Region):
    """Closure of the d-cells whose lowest corner lies on the level beta = m"""

    m: Fraction = Fraction(0)
    kind = "yhat"

    def contains(self, complex_, cell):
        low = complex_.beta_range(cell)[0]
        if low < self.m:
            return False
        positions = [i for i, code in enumerate(cell) if not code & 1]
        excess = low - self.m
        for size in range(len(positions) + 1):
            for down in itertools.combinations(positions, size):
                if sum((complex_.weights[i] for i in down), Fraction(0)) != excess:
                    continue
                if self._extendable(complex_, cell, positions, set(down)):
                    return True
        return False

    @staticmethod
    def _extendable(complex_, cell, positions, down) -> bool:
        for i in positions:
            v = cell[i] >> 1
            tree = complex_.factors[i]
            if i in down and not tree.child_ids[v]:
                return False
            if i not in down and tree.parents[v] is None:
                return False
        return True

    def params(self):
        return {"m": str(self.m)}


@dataclass(frozen=True)
class MultiComplement(Region):
    """W: cells contained in the closed complement of a family of horoballs"""

    specs: Tuple[Any, ...] = field(default_factory=tuple)
    kind = "multi_complement"

    def contains(self, complex_, cell):
        for spec in self.specs:
            if complex_.function_range(cell, spec.tables(complex_))[1] > spec.r:
                return False
        return True

    def params(self):
        return {"specs": [spec.to_dict() for spec in self.specs]}

    def __str__(self) -> str:
        return f"{self.kind}({len(self.specs)} horoballs)"


def parse_region(text: str) -> Region:
    """Parse a region name such as "whole", "superlevel:1/2" or "corner:0:2"

    Multi-horoball complements come from the run configuration and are not
    parsed here.
    """
    parts = text.strip().lower().split(":")
    kind, args = parts[0], parts[1:]
    try:
        if kind == "whole" and not args:
            return Whole()
        if kind == "superlevel" and len(args) == 1:
            return Superlevel(as_fraction(args[0], "r"))
        if kind == "sublevel" and len(args) == 1:
            return Sublevel(as_fraction(args[0], "r"))
        if kind == "kblock" and len(args) == 1:
            return KBlock(int(args[0]))
        if kind == "corner" and len(args) == 2:
            return CornerBlock(as_fraction(args[0], "r"), int(args[1]))
        if kind == "yhat" and len(args) == 1:
            return YHat(as_fraction(args[0], "m"))
    except ValueError as e:
        raise InputError(f"Invalid region {text!r}: {str(e)}", region=text)
    raise InputError(f"Unknown region {text!r}", region=text)

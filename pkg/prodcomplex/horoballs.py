"""
Horoball specifications and disjointness for treecoh

A HoroballSpec fixes one end per factor and a height r; its Busemann sum
beta_Q = sum_i lambda_i b_{Q,i} defines the closed horoball beta_Q >= r.
Disjointness is decided on the truncation with the king's-move distance
of the product graph (two vertices are adjacent when they span a cube).
"""

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Set, Tuple

from prodcomplex.cells import Cell, vertex_cell
from prodcomplex.complex import ProductComplex, as_fraction
from treegeo.ends import RayEnd, distinguished_end
from utils.errors import InputError

logger = logging.getLogger(__name__)

VertexTuple = Tuple[int, ...]


@dataclass(frozen=True)
class HoroballSpec:
    """Ends per factor and a height"""

    ends: Tuple[RayEnd, ...]
    r: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "ends", tuple(self.ends))
        object.__setattr__(self, "r", as_fraction(self.r, "horoball height"))

    @classmethod
    def distinguished(cls, complex_: ProductComplex, r=0) -> "HoroballSpec":
        """The horoball of the product end xi, i.e. the superlevel set beta >= r"""
        return cls(tuple(distinguished_end(t) for t in complex_.factors), r)

    def tables(self, complex_: ProductComplex) -> List[List[int]]:
        if len(self.ends) != complex_.d:
            raise InputError(f"Horoball has {len(self.ends)} ends for {complex_.d} factors")
        return [complex_.busemann(i, end) for i, end in enumerate(self.ends)]

    def value(self, complex_: ProductComplex, vertices: Sequence[int]) -> Fraction:
        tables = self.tables(complex_)
        return sum((complex_.weights[i] * tables[i][v] for i, v in enumerate(vertices)), Fraction(0))

    def contains_cell(self, complex_: ProductComplex, cell: Cell) -> bool:
        """Closed horoball membership: every corner has beta_Q >= r"""
        return complex_.function_range(cell, self.tables(complex_))[0] >= self.r

    def vertices(self, complex_: ProductComplex) -> List[VertexTuple]:
        tables = self.tables(complex_)
        result = []
        for combo in itertools.product(*(t.vertices() for t in complex_.factors)):
            if sum((complex_.weights[i] * tables[i][v] for i, v in enumerate(combo)), Fraction(0)) >= self.r:
                result.append(combo)
        return result

    def without_factor(self, w: int, r) -> "HoroballSpec":
        return HoroballSpec(tuple(e for i, e in enumerate(self.ends) if i != w), r)

    def to_dict(self) -> Dict[str, Any]:
        return {"ends": [end.to_dict() for end in self.ends], "r": str(self.r)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "HoroballSpec":
        try:
            ends = tuple(RayEnd(int(e["anchor"]), bool(e.get("ascending", False)),
                                tuple(int(b) for b in e.get("branch", ())))
                         for e in data["ends"])
            return cls(ends, data.get("r", 0))
        except (KeyError, TypeError) as e:
            raise InputError(f"Malformed horoball spec: {str(e)}")


@dataclass
class DisjointnessReport:
    passed: bool
    margin: Fraction
    distance: Optional[int]
    pair: Optional[Tuple[int, int]] = None
    witness: Optional[Dict[str, Any]] = None
    distances: Dict[str, Optional[int]] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "margin": str(self.margin),
            "distance": self.distance,
            "pair": list(self.pair) if self.pair else None,
            "witness": self.witness,
            "distances": self.distances,
        }


def _neighbourhoods(complex_: ProductComplex) -> List[List[Tuple[int, ...]]]:
    result = []
    for tree in complex_.factors:
        table = []
        for v in tree.vertices():
            around = [v] + list(tree.child_ids[v])
            if tree.parents[v] is not None:
                around.append(tree.parents[v])
            table.append(tuple(around))
        result.append(table)
    return result


def product_distance(complex_: ProductComplex, sources: Sequence[VertexTuple],
                     targets: Sequence[VertexTuple]) -> Tuple[Optional[int], Optional[Tuple[VertexTuple, VertexTuple]]]:
    """King's-move distance between two vertex sets, with a closest pair

    Multi-source breadth-first search from sources; stops at the first
    layer that meets targets. Returns (None, None) when either set is empty.
    """
    if not sources or not targets:
        return None, None
    goal: Set[VertexTuple] = set(targets)
    around = _neighbourhoods(complex_)
    origin: Dict[VertexTuple, VertexTuple] = {}
    frontier = []
    for s in sorted(sources):
        if s not in origin:
            origin[s] = s
            frontier.append(s)
    distance = 0
    while frontier:
        hits = sorted(v for v in frontier if v in goal)
        if hits:
            return distance, (origin[hits[0]], hits[0])
        nxt = []
        for v in frontier:
            for u in itertools.product(*(around[i][x] for i, x in enumerate(v))):
                if u not in origin:
                    origin[u] = origin[v]
                    nxt.append(u)
        frontier = sorted(nxt)
        distance += 1
    return None, None


def common_cell(complex_: ProductComplex, u: VertexTuple, v: VertexTuple) -> Cell:
    """Smallest cell containing two vertices at king's-move distance <= 1"""
    codes = []
    for i, (a, b) in enumerate(zip(u, v)):
        if a == b:
            codes.append(2 * a)
            continue
        tree = complex_.factors[i]
        if tree.parents[a] == b:
            codes.append(2 * a + 1)
        elif tree.parents[b] == a:
            codes.append(2 * b + 1)
        else:
            raise InputError(f"Vertices {u} and {v} do not span a cell")
    return tuple(codes)


def check_disjointness(complex_: ProductComplex, specs: Sequence[HoroballSpec], margin=0) -> DisjointnessReport:
    """Pairwise disjointness of closed horoballs with a distance margin

    Two horoballs are disjoint as cell sets iff no cube has corners in both,
    i.e. their vertex sets are at king's-move distance >= 2. The check passes
    iff every pairwise distance is at least max(2, margin).
    """
    margin = as_fraction(margin, "margin")
    if margin < 0:
        raise InputError(f"Margin must be nonnegative, got {margin}")
    if len(specs) < 2:
        raise InputError("Disjointness needs at least two horoballs")
    vertex_sets = [spec.vertices(complex_) for spec in specs]
    threshold = max(Fraction(2), margin)
    best: Optional[Tuple[int, Tuple[int, int], Tuple[VertexTuple, VertexTuple]]] = None
    distances: Dict[str, Optional[int]] = {}
    for a, b in itertools.combinations(range(len(specs)), 2):
        distance, pair = product_distance(complex_, vertex_sets[a], vertex_sets[b])
        distances[f"{a}-{b}"] = distance
        if distance is not None and (best is None or distance < best[0]):
            best = (distance, (a, b), pair)
    if best is None:
        logger.warning("No two horoballs meet the truncation; disjointness is vacuous")
        return DisjointnessReport(True, margin, None, distances=distances)
    distance, indices, (u, v) = best
    passed = distance >= threshold
    witness = None
    if not passed:
        witness = {"cells": [list(vertex_cell(u)), list(vertex_cell(v))], "distance": distance}
        if distance <= 1:
            witness["common_cell"] = list(common_cell(complex_, u, v))
    logger.debug(f"horoball distances {distances}, margin {margin}")
    return DisjointnessReport(passed, margin, distance, indices, witness, distances)

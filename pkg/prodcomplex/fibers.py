"""
Fiber covers of multi-horoball complements for treecoh

Projecting W = MultiComplement(specs) to one factor T_w, the fiber over an
open edge e is again a multi-horoball complement, in the complex of the
other factors, with heights s^e_Q. The sets F_e (closed edge times fiber)
and F_y (union over the edges at y) cover W.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from prodcomplex.cells import Cell
from prodcomplex.complex import ProductComplex, region_cells
from prodcomplex.horoballs import HoroballSpec
from prodcomplex.regions import MultiComplement
from utils.errors import InputError

logger = logging.getLogger(__name__)


def _check_factor(complex_: ProductComplex, w: int) -> None:
    if complex_.d < 2:
        raise InputError("Fiber constructions need at least two factors")
    if not 0 <= w < complex_.d:
        raise InputError(f"Factor {w} outside [0, {complex_.d})")


def fiber_parameters(complex_: ProductComplex, w: int, e: int,
                     specs: Sequence[HoroballSpec]) -> List[Fraction]:
    """s^e_Q = r_Q - lambda_w * b_{Q,w}(top of e relative to Q)

    Args:
        complex_: Product complex
        w: Factor index
        e: Edge of T_w, named by its lower endpoint
        specs: Horoball specs

    Returns:
        One fiber height per spec
    """
    _check_factor(complex_, w)
    bottom, top = complex_.factors[w].edge_endpoints(e)
    weight = complex_.weights[w]
    result = []
    for spec in specs:
        table = complex_.busemann(w, spec.ends[w])
        result.append(spec.r - weight * max(table[bottom], table[top]))
    return result


def exit_edge(complex_: ProductComplex, w: int, y: int, spec: HoroballSpec) -> Optional[int]:
    """e(y, Q): the edge at y whose other endpoint has the larger b_{Q,w}"""
    tree = complex_.factors[w]
    table = complex_.busemann(w, spec.ends[w])
    best = None
    for e in tree.incident_edges(y):
        bottom, top = tree.edge_endpoints(e)
        other = top if bottom == y else bottom
        if table[other] > table[y]:
            if best is not None:
                return None
            best = e
    return best


@dataclass
class FiberCover:
    """The sets F_e and F_y of one factor projection"""

    complex_: ProductComplex
    w: int
    specs: Tuple[HoroballSpec, ...]
    cells: FrozenSet[Cell]
    edge_fibers: Dict[int, FrozenSet[Cell]] = field(default_factory=dict)
    heights: Dict[int, List[Fraction]] = field(default_factory=dict)

    def _lift(self, code: int, fiber: FrozenSet[Cell]) -> Set[Cell]:
        w = self.w
        return {rest[:w] + (code,) + rest[w:] for rest in fiber}

    def edge_set(self, e: int) -> Set[Cell]:
        """F_e: the closed edge e times its fiber"""
        bottom, top = self.complex_.factors[self.w].edge_endpoints(e)
        fiber = self.edge_fibers[e]
        return self._lift(2 * e + 1, fiber) | self._lift(2 * bottom, fiber) | self._lift(2 * top, fiber)

    def vertex_set(self, y: int) -> Set[Cell]:
        """F_y: union of F_e over the edges at y"""
        result: Set[Cell] = set()
        for e in self.complex_.factors[self.w].incident_edges(y):
            result |= self.edge_set(e)
        return result


def fiber_cover(complex_: ProductComplex, w: int, region: MultiComplement) -> FiberCover:
    """Build the fiber cover of a multi-horoball complement over factor w"""
    _check_factor(complex_, w)
    specs = tuple(region.specs)
    cells = frozenset(region_cells(complex_, region))
    cover = FiberCover(complex_, w, specs, cells)
    by_edge: Dict[int, Set[Cell]] = defaultdict(set)
    for cell in cells:
        code = cell[w]
        if code & 1:
            by_edge[code >> 1].add(cell[:w] + cell[w + 1:])
    for e in complex_.factors[w].edges():
        cover.edge_fibers[e] = frozenset(by_edge.get(e, ()))
        cover.heights[e] = fiber_parameters(complex_, w, e, specs)
    logger.debug(f"fiber cover over factor {w}: {len(cells)} cells, {len(cover.edge_fibers)} edges")
    return cover


def fiber_identity(cover: FiberCover, reduced: Optional[ProductComplex] = None) -> Dict[str, Any]:
    """Compare every extracted edge fiber with W_{S-w,(s^e_Q)} built in the smaller complex"""
    reduced = reduced or cover.complex_.drop_factor(cover.w)
    mismatches = []
    for e, fiber in sorted(cover.edge_fibers.items()):
        specs = tuple(spec.without_factor(cover.w, s) for spec, s in zip(cover.specs, cover.heights[e]))
        expected = frozenset(region_cells(reduced, MultiComplement(specs)))
        if expected != fiber:
            mismatches.append(e)
    return {"passed": not mismatches, "edges": len(cover.edge_fibers), "mismatched_edges": mismatches[:10]}


def verify_cover(cover: FiberCover) -> Dict[str, Any]:
    """Check covering, F_y meet F_z = F_e, and the edge extension rule at interior vertices"""
    tree = cover.complex_.factors[cover.w]
    w = cover.w
    interior = [y for y in tree.vertices() if tree.has_full_valence(y)]
    uncovered: List[Cell] = []
    rule_failures: List[Dict[str, Any]] = []
    vertex_cells: Dict[int, List[Tuple[int, ...]]] = defaultdict(list)
    for cell in cover.cells:
        if not cell[w] & 1:
            vertex_cells[cell[w] >> 1].append(cell[:w] + cell[w + 1:])

    exits = {y: {exit_edge(cover.complex_, w, y, spec) for spec in cover.specs} for y in interior}
    for y in interior:
        edges = tree.incident_edges(y)
        for rest in sorted(vertex_cells.get(y, ())):
            if not any(rest in cover.edge_fibers[e] for e in edges):
                uncovered.append(rest[:w] + (2 * y,) + rest[w:])
            for e in edges:
                if e not in exits[y] and rest not in cover.edge_fibers[e]:
                    rule_failures.append({"vertex": y, "edge": e, "cell": list(rest)})

    intersection_failures = []
    for e in tree.edges():
        bottom, top = tree.edge_endpoints(e)
        if not (tree.has_full_valence(bottom) and tree.has_full_valence(top)):
            continue
        if cover.vertex_set(bottom) & cover.vertex_set(top) != cover.edge_set(e):
            intersection_failures.append(e)

    return {
        "passed": not uncovered and not rule_failures and not intersection_failures,
        "interior_vertices": len(interior),
        "uncovered": [list(c) for c in sorted(uncovered)[:10]],
        "rule_failures": rule_failures[:10],
        "intersection_failures": intersection_failures[:10],
    }


def dichotomy(complex_: ProductComplex, w: int, specs: Sequence[HoroballSpec]) -> Dict[str, Any]:
    """At each interior vertex y and each Q, the s-values over the edges at y
    take at most two values and the minimum sits on a unique edge"""
    _check_factor(complex_, w)
    tree = complex_.factors[w]
    failures = []
    checked = 0
    for y in tree.vertices():
        if not tree.has_full_valence(y):
            continue
        edges = tree.incident_edges(y)
        values = {e: fiber_parameters(complex_, w, e, specs) for e in edges}
        for q_index in range(len(specs)):
            column = [values[e][q_index] for e in edges]
            low = min(column)
            checked += 1
            if len(set(column)) > 2 or (len(set(column)) == 2 and column.count(low) != 1):
                failures.append({"vertex": y, "spec": q_index, "values": [str(s) for s in column]})
    return {"passed": not failures, "checked": checked, "failures": failures[:10]}

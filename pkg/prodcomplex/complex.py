"""
Product complexes for treecoh

ProductComplex is the cube complex X = T_1 x ... x T_d of truncated trees
with the weighted Busemann height beta = sum_i lambda_i h_i. Each tree edge
is oriented upward; the boundary of a cube with edge factors at positions
j_1 < ... < j_k gives its m-th pair of faces the sign (-1)^(m-1), top minus
bottom.
"""

import itertools
import logging
import threading
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from prodcomplex.cells import Cell, CellSet, cell_dimension, code_id, edge_code, vertex_code
from treegeo.ends import RayEnd, busemann_table
from treegeo.tree import TruncatedTree, build_regular
from utils.errors import InputError

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]


def as_fraction(value, name: str = "value") -> Fraction:
    """Parse an int, Fraction or "a/b" string into a Fraction"""
    if isinstance(value, bool):
        raise InputError(f"{name} must be rational, got {value!r}")
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError(f"{name} must be rational, got {value!r}")


class ProductComplex:
    """Cube complex of a product of truncated trees with weights"""

    def __init__(self, factors: Sequence[TruncatedTree], weights: Optional[Sequence[Number]] = None):
        if not factors:
            raise InputError("A product complex needs at least one factor")
        self.factors: Tuple[TruncatedTree, ...] = tuple(factors)
        self.d = len(self.factors)
        if weights is None:
            weights = [1] * self.d
        if len(weights) != self.d:
            raise InputError(f"{len(weights)} weights for {self.d} factors")
        self.weights: Tuple[Fraction, ...] = tuple(as_fraction(w, "weight") for w in weights)
        if any(w <= 0 for w in self.weights):
            raise InputError(f"Weights must be positive, got {[str(w) for w in self.weights]}")
        self.depth = min(t.depth for t in self.factors)
        self._tables: Dict[Tuple[int, RayEnd], List[int]] = {}
        self._lock = threading.RLock()

    @classmethod
    def regular(cls, d: int, q: Union[int, Sequence[int]], depth: int,
                weights: Optional[Sequence[Number]] = None) -> "ProductComplex":
        """Product of d regular trees of the same depth"""
        qs = [q] * d if isinstance(q, int) else list(q)
        if len(qs) != d:
            raise InputError(f"{len(qs)} branching numbers for {d} factors")
        return cls([build_regular(qi, depth) for qi in qs], weights)

    @property
    def weight_sum(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    # components

    def endpoints(self, i: int, code: int) -> Tuple[int, ...]:
        """Vertices of a component: (v,) or (bottom, top)"""
        v = code_id(code)
        if code & 1:
            return v, self.factors[i].parents[v]
        return (v,)

    def height_range(self, i: int, code: int) -> Tuple[int, int]:
        h = self.factors[i].heights[code_id(code)]
        return (h, h + 1) if code & 1 else (h, h)

    def all_components(self, i: int) -> List[int]:
        tree = self.factors[i]
        codes = [vertex_code(v) for v in tree.vertices()] + [edge_code(e) for e in tree.edges()]
        return sorted(codes)

    def stage_components(self, i: int, n: int) -> List[int]:
        """Components of factor i meeting the open stage box: vertices strictly
        below x_n with height > -n, and edges with such an endpoint"""
        tree = self.factors[i]
        inner = set(tree.interior(n))
        codes = {vertex_code(v) for v in inner}
        for v in inner:
            codes.add(edge_code(v))
            for c in tree.children(v):
                codes.add(edge_code(c))
        return sorted(codes)

    def block_components(self, i: int, top: int, min_height: int) -> List[int]:
        """Components of factor i inside the subtree of top down to min_height"""
        tree = self.factors[i]
        vertices = tree.subtree(top, min_height)
        codes = [vertex_code(v) for v in vertices]
        codes.extend(edge_code(v) for v in vertices if v != top)
        return sorted(codes)

    # cells

    def beta_range(self, cell: Cell) -> Tuple[Fraction, Fraction]:
        """(min, max) of beta over the corners of a cell"""
        low = Fraction(0)
        high = Fraction(0)
        for i, code in enumerate(cell):
            h = self.factors[i].heights[code >> 1]
            low += self.weights[i] * h
            high += self.weights[i] * (h + (code & 1))
        return low, high

    def beta_vertex(self, vertices: Sequence[int]) -> Fraction:
        return sum((self.weights[i] * self.factors[i].heights[v] for i, v in enumerate(vertices)), Fraction(0))

    def corners(self, cell: Cell) -> List[Tuple[int, ...]]:
        return list(itertools.product(*(self.endpoints(i, code) for i, code in enumerate(cell))))

    def faces(self, cell: Cell) -> List[Tuple[Cell, int]]:
        """Codimension-one faces with incidence signs"""
        result = []
        m = 0
        for j, code in enumerate(cell):
            if not code & 1:
                continue
            sign = 1 if m % 2 == 0 else -1
            m += 1
            bottom = code >> 1
            top = self.factors[j].parents[bottom]
            result.append((cell[:j] + (2 * top,) + cell[j + 1:], sign))
            result.append((cell[:j] + (2 * bottom,) + cell[j + 1:], -sign))
        return result

    def closure(self, cell: Cell) -> List[Cell]:
        """All faces of a cell, the cell included"""
        options = []
        for i, code in enumerate(cell):
            if code & 1:
                bottom = code >> 1
                options.append((code, 2 * bottom, 2 * self.factors[i].parents[bottom]))
            else:
                options.append((code,))
        return list(itertools.product(*options))

    def enumerate_cells(self, component_lists: Sequence[Sequence[int]],
                        predicate: Optional[Callable[[Cell], bool]] = None,
                        dimension: Optional[int] = None) -> List[Cell]:
        """Cells of the product of component lists passing a predicate"""
        if dimension is None:
            candidates = itertools.product(*component_lists)
        else:
            candidates = self._cells_of_dimension(component_lists, dimension)
        if predicate is None:
            return sorted(candidates)
        return sorted(c for c in candidates if predicate(c))

    def _cells_of_dimension(self, component_lists, k):
        split = [([c for c in codes if not c & 1], [c for c in codes if c & 1]) for codes in component_lists]
        for positions in itertools.combinations(range(self.d), k):
            chosen = set(positions)
            lists = [split[i][1] if i in chosen else split[i][0] for i in range(self.d)]
            yield from itertools.product(*lists)

    def cell_set(self, cells) -> CellSet:
        return CellSet(self.d, cells, faces_of=self.faces)

    def cell_count(self, k: int) -> int:
        """Number of k-cells in the whole truncation, from factor counts"""
        vertex_counts = [t.size for t in self.factors]
        edge_counts = [t.size - 1 for t in self.factors]
        total = 0
        for positions in itertools.combinations(range(self.d), k):
            product = 1
            for i in range(self.d):
                product *= edge_counts[i] if i in positions else vertex_counts[i]
            total += product
        return total

    # Busemann data of other ends

    def busemann(self, i: int, end: RayEnd) -> List[int]:
        """Cached Busemann table of factor i for an end"""
        key = (i, end)
        with self._lock:
            table = self._tables.get(key)
            if table is None:
                table = busemann_table(self.factors[i], end)
                self._tables[key] = table
            return table

    def function_range(self, cell: Cell, tables: Sequence[Sequence[int]]) -> Tuple[Fraction, Fraction]:
        """(min, max) of sum_i lambda_i f_i over the corners, for per-factor vertex tables f_i"""
        low = Fraction(0)
        high = Fraction(0)
        for i, code in enumerate(cell):
            values = [tables[i][v] for v in self.endpoints(i, code)]
            low += self.weights[i] * min(values)
            high += self.weights[i] * max(values)
        return low, high

    def ascend_all(self, vertices: Sequence[int]) -> Tuple[int, ...]:
        return tuple(self.factors[i].ascend(v) for i, v in enumerate(vertices))

    def drop_factor(self, w: int) -> "ProductComplex":
        """The complex of the remaining d-1 factors"""
        if self.d < 2:
            raise InputError("Cannot drop the only factor")
        factors = [t for i, t in enumerate(self.factors) if i != w]
        weights = [x for i, x in enumerate(self.weights) if i != w]
        return ProductComplex(factors, weights)

    def __repr__(self) -> str:
        return f"ProductComplex(d={self.d}, depth={self.depth}, weights={[str(w) for w in self.weights]})"


def region_cells(complex_: ProductComplex, region, k: Optional[int] = None,
                 stage: Optional[int] = None) -> List[Cell]:
    """Cells of a region, optionally only those meeting the stage-n open box"""
    if stage is None:
        lists = region.candidate_components(complex_)
    else:
        lists = [complex_.stage_components(i, stage) for i in range(complex_.d)]
    return complex_.enumerate_cells(lists, lambda c: region.contains(complex_, c), dimension=k)


def boundary_matrix(complex_: ProductComplex, region, k: int):
    """Cellular boundary of a region from k-cells to (k-1)-cells"""
    cells = complex_.cell_set(region_cells(complex_, region))
    return cells.boundary_matrix(k)


def is_face_closed(complex_: ProductComplex, cells: CellSet) -> bool:
    for cell in cells.all_cells():
        for face, _ in complex_.faces(cell):
            if face not in cells:
                return False
    return True

"""
Corner model of the top compactly supported cohomology

At stage n the classes of H^d(X, X'_n) are detected by their values on the
corner cubes F_v, v in Lambda_n = EC_{1,n} x ... x EC_{d,n}, where F_v is
the product of the geodesic segments from v(i) up to x_{i,n}. Passing to
stage n+1 corresponds to f_n(alpha)(w) = alpha(g(w)) when g(w) is in
Lambda_n and 0 otherwise, g ascending every coordinate once.
"""

import itertools
import logging
from functools import cached_property
from typing import Any, Dict, List, Tuple

from exactalg.cohomology import CohomologyBasis
from exactalg.rings import INTEGERS, CoefficientRing
from exactalg.smith import smith
from exactalg.sparse import SparseIntMatrix
from cohomo.pairs import ExhaustionTower, check_stage
from prodcomplex.cells import Cell, CellSet
from prodcomplex.complex import ProductComplex
from prodcomplex.regions import Whole
from utils.errors import InputError

logger = logging.getLogger(__name__)

VertexTuple = Tuple[int, ...]


def segment_edges(tree, v: int, top: int) -> List[int]:
    """Edges (by lower endpoint) of the geodesic from v up to top"""
    edges = []
    while v != top:
        edges.append(v)
        v = tree.ascend(v)
    return edges


class CornerModel:
    """Lambda_n, the corner cubes F_v and the transition f_n"""

    def __init__(self, complex_: ProductComplex, n: int):
        check_stage(complex_, n)
        self.complex = complex_
        self.n = n
        # K_0 is the single vertex (x_{1,0}, ..., x_{d,0})
        self.lambda_n: List[VertexTuple] = list(itertools.product(
            *((tree.ec_set(n) if n else [tree.spine(0)]) for tree in complex_.factors)))
        self.index: Dict[VertexTuple, int] = {v: i for i, v in enumerate(self.lambda_n)}

    def __len__(self) -> int:
        return len(self.lambda_n)

    def corner_cube(self, v: VertexTuple) -> List[Cell]:
        """The d-cells of F_v, each with coefficient +1"""
        segments = []
        for i, tree in enumerate(self.complex.factors):
            top = tree.spine(self.n)
            segments.append([2 * e + 1 for e in segment_edges(tree, v[i], top)])
        return list(itertools.product(*segments))

    def evaluation(self, cells: CellSet) -> SparseIntMatrix:
        """Rows Lambda_n, columns the d-cells of a cell set; entry 1 iff the cell lies in F_v"""
        d = self.complex.d
        column = cells.index[d]
        entries = {}
        for i, v in enumerate(self.lambda_n):
            for cell in self.corner_cube(v):
                j = column.get(cell)
                if j is not None:
                    entries[(i, j)] = 1
        return SparseIntMatrix(len(self.lambda_n), cells.count(d), entries)

    def ascend(self, w: VertexTuple) -> VertexTuple:
        return self.complex.ascend_all(w)

    def transition(self, following: "CornerModel") -> SparseIntMatrix:
        """f_n as a |Lambda_{n+1}| x |Lambda_n| matrix"""
        if following.n != self.n + 1:
            raise InputError(f"Transition needs consecutive stages, got {self.n} -> {following.n}")
        entries = {}
        for row, w in enumerate(following.lambda_n):
            column = self.index.get(self.ascend(w))
            if column is not None:
                entries[(row, column)] = 1
        return SparseIntMatrix(len(following), len(self), entries)

    def apply_transition(self, following: "CornerModel", alpha: Dict[VertexTuple, Any]) -> Dict[VertexTuple, Any]:
        """f_n(alpha)(w) = alpha(g(w)), written pointwise"""
        result = {}
        for w in following.lambda_n:
            value = alpha.get(self.ascend(w), 0)
            if value:
                result[w] = value
        return result


def corner_model(complex_: ProductComplex, n: int) -> CornerModel:
    return CornerModel(complex_, n)


class CornerCheck:
    """Evaluation isomorphism and transition coherence on the Whole tower"""

    def __init__(self, complex_: ProductComplex, ring: CoefficientRing = INTEGERS,
                 tower: ExhaustionTower = None):
        self.complex = complex_
        self.ring = ring
        self.tower = tower or ExhaustionTower(complex_, Whole(), ring)
        self._models: Dict[int, CornerModel] = {}

    def model(self, n: int) -> CornerModel:
        if n not in self._models:
            self._models[n] = CornerModel(self.complex, n)
        return self._models[n]

    def top_basis(self, n: int) -> CohomologyBasis:
        return self.tower.basis(n, self.complex.d)

    def evaluation_on_classes(self, n: int) -> SparseIntMatrix:
        """E_n applied to the generator lifts of H^d(X, X'_n)"""
        basis = self.top_basis(n)
        cells = self.tower.pair(n).cells
        lifts = SparseIntMatrix.from_columns(cells.count(self.complex.d), basis.generators)
        return (self.model(n).evaluation(cells) @ lifts).map_entries(self.ring.arithmetic.reduce)

    def isomorphism(self, n: int) -> Dict[str, Any]:
        """The evaluation matrix is square with all-unit Smith divisors"""
        matrix = self.evaluation_on_classes(n)
        basis = self.top_basis(n)
        decomposition = smith(matrix, self.ring)
        square = matrix.rows == matrix.cols and basis.descriptor.is_free
        unimodular = square and decomposition.rank == matrix.rows and not decomposition.nonunit_divisors
        return {"stage": n, "lambda": matrix.rows, "rank": basis.size, "passed": unimodular,
                "descriptor": basis.descriptor.to_dict()}

    def coherence(self, n: int) -> Dict[str, Any]:
        """E_{n+1} composed with the colimit map equals f_n composed with E_n"""
        left = self.evaluation_on_classes(n + 1) @ self.tower.colimit_map(n, n + 1, self.complex.d)
        right = self.model(n).transition(self.model(n + 1)) @ self.evaluation_on_classes(n)
        reduce = self.ring.arithmetic.reduce
        passed = left.map_entries(reduce) == right.map_entries(reduce)
        return {"stage": n, "passed": passed}

    def transition_report(self, n: int) -> Dict[str, Any]:
        """f_n is injective with free cokernel and q^d ones per column"""
        matrix = self.model(n).transition(self.model(n + 1))
        decomposition = smith(matrix, INTEGERS)
        column_sizes = sorted({len(col) for col in matrix.col_map().values()})
        injective = decomposition.rank == matrix.cols
        return {"stage": n, "injective": injective, "free_cokernel": not decomposition.nonunit_divisors,
                "ones_per_column": column_sizes,
                "passed": injective and not decomposition.nonunit_divisors}


def corner_crosscheck(complex_: ProductComplex, n: int, ring: CoefficientRing = INTEGERS,
                      check: CornerCheck = None) -> Dict[str, Any]:
    """Verify the corner isomorphism at stages n and n+1 and its coherence with f_n"""
    check = check or CornerCheck(complex_, ring)
    if n + 1 > complex_.depth:
        check_stage(complex_, n + 1)
    parts = {
        "isomorphism": [check.isomorphism(n), check.isomorphism(n + 1)],
        "coherence": check.coherence(n),
        "transition": check.transition_report(n),
    }
    parts["passed"] = (all(p["passed"] for p in parts["isomorphism"])
                       and parts["coherence"]["passed"] and parts["transition"]["passed"])
    logger.info(f"corner crosscheck at stage {n}: {'pass' if parts['passed'] else 'fail'}")
    return parts


class LevelSpace:
    """Tensor indicator coordinates on one level of the corner blocks

    Coordinates are the tuples of vertices at height `level` below the top
    spine vertices x_{i,N}. At level -N these are exactly Lambda_N. A
    vertex tuple b with every b_i at height >= level is sent to the tensor
    product of the indicators of the descendants of b_i on that level;
    refining to a lower level is injective on these vectors.
    """

    def __init__(self, complex_: ProductComplex, level: int, top: int = None):
        self.complex = complex_
        self.top = complex_.depth if top is None else top
        check_stage(complex_, self.top)
        if not -self.top <= level <= self.top:
            raise InputError(f"Level {level} outside [-{self.top}, {self.top}]", level=level)
        self.level = level
        self._positions: List[Dict[int, int]] = []
        for tree in complex_.factors:
            below = tree.descendants_at(tree.spine(self.top), level)
            self._positions.append({v: k for k, v in enumerate(below)})
        self.sizes = [len(p) for p in self._positions]

    @property
    def rank(self) -> int:
        total = 1
        for size in self.sizes:
            total *= size
        return total

    def flat_index(self, coords: VertexTuple) -> int:
        index = 0
        for i, v in enumerate(coords):
            index = index * self.sizes[i] + self._positions[i][v]
        return index

    def tensor(self, bottoms: VertexTuple) -> List[int]:
        """Sorted flat indices of the tensor indicator of a vertex tuple"""
        factors = []
        for i, b in enumerate(bottoms):
            tree = self.complex.factors[i]
            if tree.height(b) < self.level:
                raise InputError(f"Vertex {b} lies below level {self.level}", factor=i, vertex=b)
            factors.append(tree.descendants_at(b, self.level))
        return sorted(self.flat_index(coords) for coords in itertools.product(*factors))

    def vector(self, bottoms: VertexTuple) -> Dict[int, int]:
        return {index: 1 for index in self.tensor(bottoms)}

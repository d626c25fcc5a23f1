"""
Cells and cell sets for treecoh

A cell of a product of trees is a tuple of component codes, one per
factor: 2*v for the vertex v, 2*e+1 for the edge whose lower endpoint is e.
A CellSet indexes finitely many cells per dimension and assembles the
cellular boundary and coboundary matrices on them.
"""

import logging
from typing import Dict, Iterable, List, Sequence, Tuple

from exactalg.sparse import SparseIntMatrix
from utils.errors import ContractViolation

logger = logging.getLogger(__name__)

Cell = Tuple[int, ...]


def vertex_code(v: int) -> int:
    return 2 * v


def edge_code(e: int) -> int:
    return 2 * e + 1


def is_edge_code(code: int) -> bool:
    return bool(code & 1)


def code_id(code: int) -> int:
    return code >> 1


def cell_dimension(cell: Cell) -> int:
    return sum(code & 1 for code in cell)


def vertex_cell(vertices: Sequence[int]) -> Cell:
    return tuple(2 * v for v in vertices)


class CellSet:
    """Sorted cells per dimension with index maps"""

    def __init__(self, dimension: int, cells: Iterable[Cell], faces_of=None):
        """Index a finite set of cells

        Args:
            dimension: Number of factors d
            cells: Cells of any dimension
            faces_of: Callable cell -> [(face, sign)], needed for boundary matrices
        """
        self.dimension = dimension
        self.faces_of = faces_of
        by_dim: Dict[int, List[Cell]] = {k: [] for k in range(dimension + 1)}
        for cell in set(cells):
            by_dim[cell_dimension(cell)].append(cell)
        self.cells: Dict[int, List[Cell]] = {k: sorted(v) for k, v in by_dim.items()}
        self.index: Dict[int, Dict[Cell, int]] = {
            k: {cell: i for i, cell in enumerate(v)} for k, v in self.cells.items()
        }

    def count(self, k: int) -> int:
        return len(self.cells.get(k, ()))

    def counts(self) -> List[int]:
        return [self.count(k) for k in range(self.dimension + 1)]

    def all_cells(self) -> List[Cell]:
        return [cell for k in range(self.dimension + 1) for cell in self.cells[k]]

    def __contains__(self, cell: Cell) -> bool:
        return cell in self.index.get(cell_dimension(cell), {})

    def __len__(self) -> int:
        return sum(self.counts())

    def is_empty(self) -> bool:
        return len(self) == 0

    def boundary_matrix(self, k: int) -> SparseIntMatrix:
        """Boundary from k-cells to (k-1)-cells; faces outside the set are dropped

        Out-of-range k yields a zero matrix of the correct shape.
        """
        rows = self.count(k - 1)
        cols = self.count(k)
        if k < 1 or k > self.dimension or rows == 0 or cols == 0:
            return SparseIntMatrix.zeros(rows, cols)
        row_index = self.index[k - 1]
        entries = {}
        for j, cell in enumerate(self.cells[k]):
            for face, sign in self.faces_of(cell):
                i = row_index.get(face)
                if i is not None:
                    entries[(i, j)] = entries.get((i, j), 0) + sign
        return SparseIntMatrix(rows, cols, entries)

    def coboundary(self, k: int) -> SparseIntMatrix:
        """delta^k: C^k -> C^(k+1), the transpose of the boundary"""
        return self.boundary_matrix(k + 1).transpose()

    def extension_matrix(self, larger: "CellSet", k: int) -> SparseIntMatrix:
        """Extension by zero of k-cochains on self to cochains on a superset"""
        target = larger.index[k] if k in larger.index else {}
        entries = {}
        for j, cell in enumerate(self.cells.get(k, ())):
            i = target.get(cell)
            if i is None:
                raise ContractViolation(f"Cell {cell} missing from the larger cell set", reason="not_a_subset")
            entries[(i, j)] = 1
        return SparseIntMatrix(larger.count(k), self.count(k), entries)

    def restriction_matrix(self, smaller: "CellSet", k: int) -> SparseIntMatrix:
        """Restriction of k-cochains on self to a subset"""
        source = self.index.get(k, {})
        entries = {}
        for i, cell in enumerate(smaller.cells.get(k, ())):
            j = source.get(cell)
            if j is not None:
                entries[(i, j)] = 1
        return SparseIntMatrix(smaller.count(k), self.count(k), entries)

    def indicator(self, cells: Iterable[Cell], k: int, value: int = 1) -> Dict[int, int]:
        """Cochain taking value on each listed k-cell of the set"""
        index = self.index.get(k, {})
        return {index[c]: value for c in cells if c in index}

    def __repr__(self) -> str:
        return f"CellSet(counts={self.counts()})"

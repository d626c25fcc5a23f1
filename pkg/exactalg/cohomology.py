"""
Cohomology of cochain complexes for treecoh

Given two consecutive coboundary maps C^{k-1} -> C^k -> C^{k+1},
CohomologyBasis computes ker/im natively over the coefficient ring,
chooses deterministic generator lifts and maps cocycles to coordinates.
"""

import logging
from typing import Any, Dict, List, Sequence

from exactalg.descriptors import ModuleDescriptor
from exactalg.rings import INTEGERS, CoefficientRing
from exactalg.smith import kernel_basis, smith
from exactalg.sparse import SparseIntMatrix, Vector
from exactalg.submodule import Submodule
from utils.errors import ContractViolation, InputError

logger = logging.getLogger(__name__)


def _reduced(vector: Vector, ring: CoefficientRing) -> Vector:
    out = {}
    for i, x in vector.items():
        x = ring.reduce(x)
        if x:
            out[i] = x
    return out


class CohomologyBasis:
    """Generators and coordinates of ker(d_out) / im(d_in)

    d_in has shape (dim C^k) x (dim C^{k-1}), d_out has shape
    (dim C^{k+1}) x (dim C^k).
    """

    def __init__(self, d_in: SparseIntMatrix, d_out: SparseIntMatrix, ring: CoefficientRing = INTEGERS):
        if d_out.cols != d_in.rows:
            raise InputError(
                f"Incompatible coboundaries: d_out has {d_out.cols} columns, d_in has {d_in.rows} rows"
            )
        self.ring = ring
        self.arithmetic = ring.arithmetic
        self.dimension = d_in.rows
        self.d_in = d_in.map_entries(self.arithmetic.coerce)
        self.d_out = d_out.map_entries(self.arithmetic.coerce)

        composite = (self.d_out @ self.d_in).map_entries(self.arithmetic.reduce)
        if not composite.is_zero():
            raise ContractViolation("d_out composed with d_in is nonzero", reason="not_a_complex",
                                    nnz=composite.nnz)

        outer = smith(self.d_out, ring, transforms=True)
        self.cocycle_rank = self.dimension - outer.rank
        kernel_columns = list(range(outer.rank, self.dimension))
        self.kernel = outer.right.select_columns(kernel_columns)
        self.projection = outer.right_inverse.select_rows(kernel_columns)

        relations = (self.projection @ self.d_in).map_entries(self.arithmetic.reduce)
        inner = smith(relations, ring, transforms=True)
        self._inner = inner

        self.generators: List[Vector] = []
        self.orders: List[int] = []
        self._positions: List[int] = []
        for i in range(self.cocycle_rank):
            if i < inner.rank:
                order = 1 if ring.is_field else inner.divisors[i]
                if order == 1:
                    continue
            else:
                order = 0
            lift = self.kernel.matvec(inner.left_inverse.column(i))
            self.generators.append(_reduced(lift, self.arithmetic))
            self.orders.append(order)
            self._positions.append(i)

        free = sum(1 for o in self.orders if o == 0)
        self.descriptor = ModuleDescriptor(free, tuple(o for o in self.orders if o))
        logger.debug(f"cohomology of C^{self.dimension} over {ring}: {self.descriptor}")

    @property
    def size(self) -> int:
        return len(self.generators)

    def is_cocycle(self, cochain: Vector) -> bool:
        return not _reduced(self.d_out.matvec(cochain), self.arithmetic)

    def coordinates(self, cochain: Vector) -> List[Any]:
        """Coordinates of a cocycle's class on the generators

        Torsion coordinates are reduced modulo the generator order.
        """
        if not self.is_cocycle(cochain):
            raise ContractViolation("Cochain is not a cocycle", reason="not_a_cocycle")
        z = _reduced(self.projection.matvec(cochain), self.arithmetic)
        y = _reduced(self._inner.left.matvec(z), self.arithmetic)
        result = []
        for position, order in zip(self._positions, self.orders):
            value = y.get(position, 0)
            if order:
                value %= order
            result.append(value)
        return result

    def is_coboundary(self, cochain: Vector) -> bool:
        return self.is_cocycle(cochain) and not any(self.coordinates(cochain))

    def cocycle_submodule(self) -> Submodule:
        return Submodule(self.dimension, self.kernel, self.ring)


def cohomology_at(d_in: SparseIntMatrix, d_out: SparseIntMatrix,
                  ring: CoefficientRing = INTEGERS) -> ModuleDescriptor:
    """Descriptor of ker(d_out) / im(d_in) over the ring"""
    return CohomologyBasis(d_in, d_out, ring).descriptor


def induced_map(source: CohomologyBasis, target: CohomologyBasis, chain_map: SparseIntMatrix) -> SparseIntMatrix:
    """Matrix of the map on cohomology induced by a degree-k cochain map

    Args:
        source: Cohomology basis of the source complex in degree k
        target: Cohomology basis of the target complex in degree k
        chain_map: Matrix (dim target C^k) x (dim source C^k)

    Returns:
        Matrix with target.size rows and source.size columns
    """
    if chain_map.shape != (target.dimension, source.dimension):
        raise InputError(
            f"Chain map shape {chain_map.shape} does not match ({target.dimension}, {source.dimension})"
        )
    arithmetic = target.arithmetic
    for j in range(source.d_in.cols):
        image = _reduced(chain_map.matvec(source.d_in.column(j)), arithmetic)
        if image and not target.is_coboundary(image):
            raise ContractViolation("Chain map sends a coboundary to a nontrivial class",
                                    reason="not_a_chain_map", column=j)
    columns = []
    for j, lift in enumerate(source.generators):
        image = _reduced(chain_map.matvec(lift), arithmetic)
        if not target.is_cocycle(image):
            raise ContractViolation("Chain map sends a cocycle to a non-cocycle",
                                    reason="not_a_chain_map", generator=j)
        columns.append({i: x for i, x in enumerate(target.coordinates(image)) if x})
    return SparseIntMatrix.from_columns(target.size, columns)


def map_kernel(matrix: SparseIntMatrix, target_orders: Sequence[int],
               ring: CoefficientRing = INTEGERS) -> Submodule:
    """Kernel of a map from a free module into a sum of cyclic modules

    Args:
        matrix: Map R^n -> R^m written in target generator coordinates
        target_orders: Order of each target generator (0 for free)
        ring: Coefficient ring

    Returns:
        Kernel as a submodule of R^n
    """
    if len(target_orders) != matrix.rows:
        raise InputError(f"{len(target_orders)} target orders for {matrix.rows} rows")
    torsion_rows = [i for i, order in enumerate(target_orders) if order]
    relations = SparseIntMatrix(matrix.rows, len(torsion_rows),
                                {(i, k): target_orders[i] for k, i in enumerate(torsion_rows)})
    stacked = matrix.hstack(relations)
    vectors: List[Dict[int, Any]] = []
    for vector in kernel_basis(stacked, ring):
        head = {j: x for j, x in vector.items() if j < matrix.cols}
        if head:
            vectors.append(head)
    return Submodule.from_vectors(matrix.cols, vectors, ring)

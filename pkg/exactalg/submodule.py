"""
Submodule calculus for treecoh

Submodules of a free module R^n given by generator columns. Membership,
sums, intersections and quotients are all read off Smith decompositions of
generator matrices; nothing is computed over a field unless R is one.
"""

import logging
from functools import cached_property
from typing import Any, List, Optional, Sequence

from exactalg.descriptors import ModuleDescriptor
from exactalg.rings import INTEGERS, CoefficientRing
from exactalg.smith import SmithDecomposition, kernel_basis, smith
from exactalg.sparse import SparseIntMatrix, Vector
from utils.errors import ContractViolation, InputError

logger = logging.getLogger(__name__)


def _clean(vector: Vector, ring: CoefficientRing) -> Vector:
    arithmetic = ring.arithmetic
    out = {}
    for i, x in vector.items():
        x = arithmetic.coerce(x)
        if x:
            out[i] = x
    return out


class Submodule:
    """Span of the generator columns inside R^ambient_rank"""

    def __init__(self, ambient_rank: int, generators: SparseIntMatrix, ring: CoefficientRing = INTEGERS):
        if generators.rows != ambient_rank:
            raise InputError(
                f"Generators have {generators.rows} rows, ambient rank is {ambient_rank}",
                ambient_rank=ambient_rank,
            )
        self.ambient_rank = ambient_rank
        self.ring = ring
        self.generators = generators.map_entries(ring.arithmetic.coerce)

    @classmethod
    def from_vectors(cls, ambient_rank: int, vectors: Sequence[Vector],
                     ring: CoefficientRing = INTEGERS) -> "Submodule":
        return cls(ambient_rank, SparseIntMatrix.from_columns(ambient_rank, list(vectors)), ring)

    @classmethod
    def zero(cls, ambient_rank: int, ring: CoefficientRing = INTEGERS) -> "Submodule":
        return cls(ambient_rank, SparseIntMatrix.zeros(ambient_rank, 0), ring)

    @classmethod
    def full(cls, ambient_rank: int, ring: CoefficientRing = INTEGERS) -> "Submodule":
        return cls(ambient_rank, SparseIntMatrix.identity(ambient_rank), ring)

    @cached_property
    def decomposition(self) -> SmithDecomposition:
        return smith(self.generators, self.ring, transforms=True)

    @property
    def rank(self) -> int:
        return self.decomposition.rank

    def _scales(self) -> List[Any]:
        """Diagonal scale of each basis vector (localized over Z[1/p])"""
        decomposition = self.decomposition
        if self.ring.is_field:
            return [self.ring.one] * decomposition.rank
        return list(decomposition.divisors)

    def basis(self) -> List[Vector]:
        """A basis of the submodule: scale_i * U^-1 e_i for i < rank"""
        u_inv = self.decomposition.left_inverse
        arithmetic = self.ring.arithmetic
        result = []
        for i, scale in enumerate(self._scales()):
            result.append({k: arithmetic.reduce(scale * x) for k, x in u_inv.column(i).items()})
        return result

    def basis_matrix(self) -> SparseIntMatrix:
        return SparseIntMatrix.from_columns(self.ambient_rank, self.basis())

    def solve(self, vector: Vector) -> Optional[List[Any]]:
        """Coefficients of vector on basis(), or None when it is not a member

        Args:
            vector: Sparse vector in R^ambient_rank

        Returns:
            Coefficient list aligned with basis(), or None
        """
        self._check_vector(vector)
        arithmetic = self.ring.arithmetic
        image = self.decomposition.left.matvec(_clean(vector, self.ring))
        image = {i: arithmetic.reduce(x) for i, x in image.items()}
        scales = self._scales()
        coefficients = []
        for i, x in sorted(image.items()):
            if x and i >= len(scales):
                return None
        for i, scale in enumerate(scales):
            x = image.get(i, 0)
            if not arithmetic.divides(scale, x):
                return None
            coefficients.append(arithmetic.quo(x, scale) if x else arithmetic.zero)
        return coefficients

    def contains(self, vector: Vector) -> bool:
        return self.solve(vector) is not None

    def contains_submodule(self, other: "Submodule") -> bool:
        self._check_compatible(other)
        return all(self.contains(v) for v in other.basis())

    def equals(self, other: "Submodule") -> bool:
        return self.contains_submodule(other) and other.contains_submodule(self)

    def sum(self, other: "Submodule") -> "Submodule":
        self._check_compatible(other)
        return Submodule(self.ambient_rank, self.generators.hstack(other.generators), self.ring)

    def intersection(self, other: "Submodule") -> "Submodule":
        """Intersection via the kernel of [A | -B] on basis matrices"""
        self._check_compatible(other)
        a = self.basis_matrix()
        b = other.basis_matrix()
        if a.cols == 0 or b.cols == 0:
            return Submodule.zero(self.ambient_rank, self.ring)
        stacked = a.hstack(b.map_entries(lambda x: -x))
        vectors = []
        for kernel_vector in kernel_basis(stacked, self.ring):
            head = {j: x for j, x in kernel_vector.items() if j < a.cols}
            image = _clean(a.matvec(head), self.ring)
            if image:
                vectors.append(image)
        return Submodule.from_vectors(self.ambient_rank, vectors, self.ring)

    def scaled(self, factor: Any) -> "Submodule":
        return Submodule(self.ambient_rank, self.generators.map_entries(lambda x: x * factor), self.ring)

    def quotient_descriptor(self) -> ModuleDescriptor:
        """Isomorphism type of R^ambient_rank / self"""
        decomposition = self.decomposition
        if self.ring.is_field:
            return ModuleDescriptor(self.ambient_rank - decomposition.rank, ())
        return ModuleDescriptor.from_divisors(self.ambient_rank, decomposition.divisors)

    def coordinates_of(self, other: "Submodule") -> SparseIntMatrix:
        """Matrix whose columns express other's basis in self's basis"""
        columns = []
        for vector in other.basis():
            coefficients = self.solve(vector)
            if coefficients is None:
                raise ContractViolation("Submodule is not contained in the numerator",
                                        reason="not_contained")
            columns.append({i: x for i, x in enumerate(coefficients) if x})
        return SparseIntMatrix.from_columns(self.rank, columns)

    def _check_vector(self, vector: Vector) -> None:
        for i in vector:
            if not 0 <= i < self.ambient_rank:
                raise InputError(f"Vector index {i} out of range for rank {self.ambient_rank}")

    def _check_compatible(self, other: "Submodule") -> None:
        if other.ambient_rank != self.ambient_rank:
            raise InputError(
                f"Ambient rank mismatch: {self.ambient_rank} != {other.ambient_rank}",
                reason="rank_mismatch",
            )
        if other.ring != self.ring:
            raise InputError(f"Ring mismatch: {self.ring} != {other.ring}", reason="ring_mismatch")

    def __repr__(self) -> str:
        return f"Submodule(rank={self.rank} in {self.ring}^{self.ambient_rank})"


def subquotient_descriptor(numerator: Submodule, denominator: Submodule) -> ModuleDescriptor:
    """Isomorphism type of numerator / denominator, requiring denominator within numerator"""
    relations = numerator.coordinates_of(denominator)
    decomposition = smith(relations, numerator.ring)
    if numerator.ring.is_field:
        return ModuleDescriptor(numerator.rank - decomposition.rank, ())
    return ModuleDescriptor.from_divisors(numerator.rank, decomposition.divisors)


def submodule_ops(a: Submodule, b: Submodule, op: str, vector: Optional[Vector] = None):
    """Dispatch sum, intersection and membership

    Args:
        a: First submodule
        b: Second submodule (ignored for membership)
        op: "sum", "intersection" or "membership"
        vector: Vector tested for membership in a

    Returns:
        Submodule, or bool for membership
    """
    if op == "membership":
        if vector is None:
            raise InputError("membership needs a vector")
        return a.contains(vector)
    if op == "sum":
        return a.sum(b)
    if op == "intersection":
        return a.intersection(b)
    raise InputError(f"Unknown submodule operation: {op}", op=op)


def purity_check(submodule: Submodule) -> bool:
    """True iff R^n / submodule is torsion-free"""
    if submodule.ring.is_field:
        logger.warning(f"Purity over the field {submodule.ring} is automatic")
        return True
    return all(d == 1 for d in submodule.decomposition.divisors)

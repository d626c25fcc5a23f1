"""
Exact Linear Algebra Package for treecoh

Sparse matrices, Smith normal form, cohomology of cochain complexes and
submodule calculus over Z, Q, F_p and Z[1/p].
"""

from .cohomology import CohomologyBasis, cohomology_at, induced_map, map_kernel
from .descriptors import ModuleDescriptor
from .oracle import minors_divisors, snf_oracle_suite, sympy_reference
from .rings import INTEGERS, RATIONALS, CoefficientRing, integers_away_from, parse_ring, prime_field
from .smith import SmithDecomposition, kernel_basis, smith
from .sparse import SparseIntMatrix
from .submodule import Submodule, purity_check, submodule_ops, subquotient_descriptor

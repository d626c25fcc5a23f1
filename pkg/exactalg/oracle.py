"""
Independent oracles for Smith normal form

Two references for the invariant factors over Z: gcds of k x k minors for
small matrices and sympy's invariant factors for the rest. The oracle
suite compares both against smith() on seeded random sparse matrices.
"""

import logging
import random
from itertools import combinations
from math import gcd
from typing import Any, Dict, List, Sequence, Tuple

from sympy import Matrix
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors as sympy_invariant_factors

from exactalg.rings import INTEGERS
from exactalg.smith import smith
from exactalg.sparse import SparseIntMatrix

logger = logging.getLogger(__name__)

Dense = Sequence[Sequence[int]]


def bareiss_determinant(rows: Dense) -> int:
    """Fraction-free determinant of a square integer matrix"""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    previous = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // previous
        previous = m[k][k]
    return sign * m[n - 1][n - 1]


def minors_divisors(dense: Dense) -> Tuple[int, ...]:
    """Invariant factors from gcds of k x k minors"""
    rows = len(dense)
    cols = len(dense[0]) if dense else 0
    divisors = []
    previous = 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, bareiss_determinant([[dense[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        divisors.append(g // previous)
        previous = g
    return tuple(divisors)


def sympy_reference(dense: Dense) -> Tuple[int, Tuple[int, ...]]:
    """(rank, divisors > 1) computed by sympy"""
    if not dense or not dense[0]:
        return 0, ()
    rank = Matrix(dense).rank()
    factors = sympy_invariant_factors(DomainMatrix.from_list(list(map(list, dense)), ZZ))
    nonunit = sorted(abs(int(x)) for x in factors if abs(int(x)) > 1)
    return rank, tuple(nonunit)


def random_sparse(rng: random.Random, rows: int, cols: int, density: float = 0.5,
                  bound: int = 6) -> List[List[int]]:
    return [[rng.randint(-bound, bound) if rng.random() < density else 0 for _ in range(cols)]
            for _ in range(rows)]


def snf_oracle_suite(count: int = 500, max_size: int = 12, seed: int = 0, density: float = 0.4,
                     minors_limit: int = 5) -> Dict[str, Any]:
    """Compare smith() with both oracles on seeded random matrices

    Args:
        count: Number of matrices
        max_size: Largest number of rows and of columns
        seed: Random seed
        density: Probability of a nonzero entry
        minors_limit: Largest dimension for the minors oracle

    Returns:
        Report with the number of matrices per oracle and the first mismatches
    """
    rng = random.Random(seed)
    mismatches = []
    by_minors = 0
    for index in range(count):
        rows = rng.randint(1, max_size)
        cols = rng.randint(1, max_size)
        dense = random_sparse(rng, rows, cols, density)
        result = smith(SparseIntMatrix.from_dense(dense, cols), INTEGERS)
        expected = sympy_reference(dense)
        if (result.rank, tuple(sorted(result.nonunit_divisors))) != expected:
            mismatches.append({"index": index, "oracle": "sympy", "shape": [rows, cols]})
        if max(rows, cols) <= minors_limit:
            by_minors += 1
            if tuple(result.divisors) != minors_divisors(dense):
                mismatches.append({"index": index, "oracle": "minors", "shape": [rows, cols]})
    if mismatches:
        logger.error(f"smith disagrees with an oracle on {len(mismatches)} of {count} matrices")
    return {"passed": not mismatches, "matrices": count, "minors_checked": by_minors,
            "max_size": max_size, "mismatches": mismatches[:5]}

"""
Sigma families, branch swaps and the alternating zero-chain identity

A family fixes v in Lambda_n, a deep tuple w in Lambda_N above which v sits
(g^{N-n}(w) = v), and detour vertices e_i at height -N below x_{i,n+1} but
not below x_{i,n}. Swapping the branch of w(i) with the branch of e_i in
each factor of a subset sigma gives the tuples w_sigma. The block-model
chain sum_sigma (-1)^|sigma| [F_{w_sigma} meet Yhat_m] vanishes for every
height m strictly between beta on K_{n+1} and the top of F_w.
"""

import itertools
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from cohomo.corner import CornerModel, segment_edges
from cohomo.pairs import check_stage
from prodcomplex.cells import Cell
from prodcomplex.complex import ProductComplex, as_fraction
from treegeo.tree import TruncatedTree
from utils.errors import InputError

logger = logging.getLogger(__name__)

VertexTuple = Tuple[int, ...]


@dataclass(frozen=True)
class SigmaFamily:
    n: int
    top: int
    v: VertexTuple
    w: VertexTuple
    e: VertexTuple

    @property
    def d(self) -> int:
        return len(self.w)

    def subsets(self) -> List[Tuple[int, ...]]:
        """All sigma, ordered by size and then lexicographically"""
        return [s for k in range(self.d + 1) for s in itertools.combinations(range(self.d), k)]

    def tuple_for(self, sigma: Sequence[int]) -> VertexTuple:
        chosen = set(sigma)
        return tuple(self.e[i] if i in chosen else self.w[i] for i in range(self.d))

    def validate(self, complex_: ProductComplex) -> None:
        """Raise InputError unless the family is admissible in the complex"""
        check_stage(complex_, self.top)
        if not 0 <= self.n < self.top - 1:
            raise InputError(f"Families need 0 <= n < N - 1, got n={self.n}, N={self.top}")
        if not len(self.v) == len(self.w) == len(self.e) == complex_.d:
            raise InputError("Family tuples must have one entry per factor")
        if self.v not in CornerModel(complex_, self.n).index:
            raise InputError(f"{list(self.v)} is not a corner tuple at stage {self.n}")
        for i, tree in enumerate(complex_.factors):
            low = tree.spine(self.n)
            if tree.height(self.w[i]) != -self.top or not tree.is_below(self.w[i], self.v[i]):
                raise InputError(f"w({i}) is not at height -{self.top} below v({i})", factor=i)
            if tree.height(self.e[i]) != -self.top:
                raise InputError(f"e({i}) is not at height -{self.top}", factor=i)
            if not tree.is_below(self.e[i], tree.spine(self.n + 1)) or tree.is_below(self.e[i], low):
                raise InputError(f"e({i}) must lie below x_(n+1) and off the branch of x_n", factor=i)

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "N": self.top, "v": list(self.v), "w": list(self.w), "e": list(self.e)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SigmaFamily":
        try:
            return cls(int(data["n"]), int(data["N"]), tuple(data["v"]), tuple(data["w"]), tuple(data["e"]))
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"Malformed family: {str(e)}")


class BranchSwap:
    """Order-2 automorphism exchanging the branch below x_n with the branch holding e

    The branch roots are x_n and the child y of x_{n+1} above e. Matching
    descends both branches together: the children on the paths to w and e
    are paired, and the remaining children in id order.
    """

    def __init__(self, tree: TruncatedTree, n: int, w: int, e: int):
        self.tree = tree
        self.n = n
        left = tree.spine(n)
        right = tree.ascend_times(e, tree.height(tree.spine(n + 1)) - tree.height(e) - 1)
        if right == left:
            raise InputError(f"Vertex {e} lies on the branch of x_{n}", vertex=e)
        self.roots = (left, right)
        self.mapping: Dict[int, int] = {}
        pairs = [(left, right)]
        while pairs:
            a, b = pairs.pop()
            self.mapping[a] = b
            self.mapping[b] = a
            first = self._ordered_children(a, w)
            second = self._ordered_children(b, e)
            if len(first) != len(second):
                raise InputError(f"Branches below {left} and {right} are not isomorphic")
            pairs.extend(zip(first, second))

    def _ordered_children(self, a: int, target: int) -> List[int]:
        children = sorted(self.tree.children(a))
        path = [c for c in children if self.tree.is_below(target, c)]
        return path + [c for c in children if c not in path]

    def __call__(self, vertex: int) -> int:
        return self.mapping.get(vertex, vertex)

    def edge(self, e: int) -> int:
        """Image of the edge named by its lower endpoint"""
        return self(e)

    def code(self, code: int) -> int:
        return 2 * self(code >> 1) + (code & 1)

    def is_involution(self) -> bool:
        return all(self(self(v)) == v for v in self.mapping)

    def preserves_height(self) -> bool:
        heights = self.tree.heights
        return all(heights[a] == heights[b] for a, b in self.mapping.items())

    def preserves_adjacency(self) -> bool:
        for a, b in self.mapping.items():
            parent = self.tree.parents[a]
            if parent is not None and self(parent) != self.tree.parents[b]:
                return False
        return True


def swap_cell(swaps: Sequence[BranchSwap], sigma: Sequence[int], cell: Cell) -> Cell:
    """u_sigma applied to a cell"""
    chosen = set(sigma)
    return tuple(swaps[i].code(c) if i in chosen else c for i, c in enumerate(cell))


def corner_cube(complex_: ProductComplex, top: int, w: VertexTuple) -> List[Cell]:
    segments = []
    for i, tree in enumerate(complex_.factors):
        segments.append([2 * e + 1 for e in segment_edges(tree, w[i], tree.spine(top))])
    return list(itertools.product(*segments))


def admissible_heights(complex_: ProductComplex, family: SigmaFamily) -> List[Fraction]:
    """Levels m in (sum lambda (n+1), sum lambda (N-1)] reached by corner-cube bottoms"""
    low = complex_.weight_sum * (family.n + 1)
    high = complex_.weight_sum * (family.top - 1)
    values = {complex_.beta_range(c)[0] for c in corner_cube(complex_, family.top, family.w)}
    return sorted(m for m in values if low < m <= high)


def zero_chain_identity(complex_: ProductComplex, family: SigmaFamily, m) -> Dict[str, Any]:
    """Verify sum_sigma (-1)^|sigma| [F_{w_sigma} meet Yhat_m] = 0 with its bookkeeping"""
    family.validate(complex_)
    m = as_fraction(m, "m")
    low = complex_.weight_sum * (family.n + 1)
    high = complex_.weight_sum * (family.top - 1)
    if not low < m <= high:
        raise InputError(f"Height {m} outside ({low}, {high}]", m=str(m))

    swaps = [BranchSwap(tree, family.n, family.w[i], family.e[i]) for i, tree in enumerate(complex_.factors)]
    swap_checks = {
        "involution": all(s.is_involution() for s in swaps),
        "height": all(s.preserves_height() for s in swaps),
        "adjacency": all(s.preserves_adjacency() for s in swaps),
        "sends_w_to_e": all(s(family.w[i]) == family.e[i] for i, s in enumerate(swaps)),
    }

    def on_level(cell: Cell) -> bool:
        return complex_.beta_range(cell)[0] == m

    base = corner_cube(complex_, family.top, family.w)
    base_level = [c for c in base if on_level(c)]
    chain: Dict[Cell, int] = {}
    checksum = 0
    images_match = True
    for sigma in family.subsets():
        sign = -1 if len(sigma) % 2 else 1
        cube = corner_cube(complex_, family.top, family.tuple_for(sigma))
        if {swap_cell(swaps, sigma, c) for c in base} != set(cube):
            images_match = False
        level = [c for c in cube if on_level(c)]
        checksum += sign * len(level)
        for cell in level:
            chain[cell] = chain.get(cell, 0) + sign
    residue = {c: x for c, x in chain.items() if x}

    partition_ok = True
    for cell in base_level:
        tau = {i for i, code in enumerate(cell) if complex_.factors[i].height(code >> 1) <= family.n}
        if len(tau) == complex_.d:
            partition_ok = False
            break
        for sigma in family.subsets():
            restricted = tuple(i for i in sigma if i in tau)
            if swap_cell(swaps, sigma, cell) != swap_cell(swaps, restricted, cell):
                partition_ok = False
                break

    passed = not residue and checksum == 0 and images_match and partition_ok and all(swap_checks.values())
    result = {
        "family": family.to_dict(),
        "m": str(m),
        "passed": passed,
        "cells": len(base_level),
        "checksum": checksum,
        "images_match": images_match,
        "partition": partition_ok,
        **swap_checks,
    }
    if residue:
        result["residue"] = [[list(c), x] for c, x in sorted(residue.items())[:5]]
    return result


def _detours(complex_: ProductComplex, n: int, top: int) -> List[List[int]]:
    result = []
    for tree in complex_.factors:
        below = tree.descendants_at(tree.spine(n + 1), -top)
        result.append([u for u in below if not tree.is_below(u, tree.spine(n))])
    return result


def enumerate_families(complex_: ProductComplex, n: int, top: Optional[int] = None) -> Iterator[SigmaFamily]:
    """All admissible families at (n, N), lazily in lexicographic order"""
    top = complex_.depth if top is None else top
    check_stage(complex_, top)
    if not 0 <= n < top - 1:
        raise InputError(f"Families need 0 <= n < N - 1, got n={n}, N={top}")
    detours = _detours(complex_, n, top)
    for v in CornerModel(complex_, n).lambda_n:
        deep = [tree.descendants_at(v[i], -top) for i, tree in enumerate(complex_.factors)]
        for w in itertools.product(*deep):
            for e in itertools.product(*detours):
                yield SigmaFamily(n, top, v, w, e)


def sample_families(complex_: ProductComplex, n: int, count: int, seed: int = 0,
                    top: Optional[int] = None) -> List[SigmaFamily]:
    """count families drawn uniformly per coordinate, reproducible from the seed"""
    top = complex_.depth if top is None else top
    check_stage(complex_, top)
    if not 0 <= n < top - 1:
        raise InputError(f"Families need 0 <= n < N - 1, got n={n}, N={top}")
    rng = random.Random(seed)
    corners = CornerModel(complex_, n).lambda_n
    detours = _detours(complex_, n, top)
    result = []
    for _ in range(count):
        v = rng.choice(corners)
        w = tuple(rng.choice(tree.descendants_at(v[i], -top)) for i, tree in enumerate(complex_.factors))
        e = tuple(rng.choice(options) for options in detours)
        result.append(SigmaFamily(n, top, v, w, e))
    return result


def zero_chain_suite(complex_: ProductComplex, families: Sequence[SigmaFamily]) -> Dict[str, Any]:
    """Run the identity for every family at every admissible height"""
    checked = 0
    failures = []
    for family in families:
        for m in admissible_heights(complex_, family):
            result = zero_chain_identity(complex_, family, m)
            checked += 1
            if not result["passed"]:
                failures.append(result)
    if failures:
        logger.error(f"zero-chain identity failed for {len(failures)} of {checked} cases")
    return {"passed": not failures, "families": len(families), "checked": checked, "failures": failures[:5]}

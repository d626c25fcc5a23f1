"""
Smith normal form for treecoh

Sparse elimination over a principal ideal domain with unimodular row and
column operations. Pivots are chosen by (norm, fill-in estimate, row, col);
non-divisible entries are merged into the pivot with the extended gcd
2x2 transform, so every step is exact. The transforms U, U^-1, V, V^-1 are
tracked on request and satisfy U A V = diag(diagonal).
"""

import heapq
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Set, Tuple

from exactalg.rings import INTEGERS, CoefficientRing
from exactalg.sparse import SparseIntMatrix
from utils.errors import InputError

logger = logging.getLogger(__name__)

Lines = Dict[int, Dict[int, Any]]


@dataclass(frozen=True)
class SmithDecomposition:
    """Invariant factors of a matrix and optional unimodular transforms"""

    rows: int
    cols: int
    ring: CoefficientRing
    divisors: Tuple[int, ...]
    diagonal: Tuple[Any, ...]
    left: Optional[SparseIntMatrix] = None
    left_inverse: Optional[SparseIntMatrix] = None
    right: Optional[SparseIntMatrix] = None
    right_inverse: Optional[SparseIntMatrix] = None

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def nonunit_divisors(self) -> Tuple[int, ...]:
        return tuple(d for d in self.divisors if d != 1)

    @property
    def has_transforms(self) -> bool:
        return self.left is not None


def _line_axpy(lines: Lines, target: int, source: int, k: Any, ring: CoefficientRing) -> None:
    src = lines.get(source)
    if not src or not k:
        return
    tgt = lines.setdefault(target, {})
    for idx, x in list(src.items()):
        value = ring.reduce(tgt.get(idx, 0) + k * x)
        if value:
            tgt[idx] = value
        else:
            tgt.pop(idx, None)


def _line_combine(lines: Lines, i: int, a: int, s: Any, t: Any, c: Any, e: Any,
                  ring: CoefficientRing) -> None:
    li = lines.get(i, {})
    la = lines.get(a, {})
    new_i: Dict[int, Any] = {}
    new_a: Dict[int, Any] = {}
    for idx in set(li) | set(la):
        x = li.get(idx, 0)
        y = la.get(idx, 0)
        u = ring.reduce(s * x + t * y)
        w = ring.reduce(c * x + e * y)
        if u:
            new_i[idx] = u
        if w:
            new_a[idx] = w
    lines[i] = new_i
    lines[a] = new_a


def _line_scale(lines: Lines, i: int, unit: Any, ring: CoefficientRing) -> None:
    lines[i] = {idx: ring.reduce(unit * x) for idx, x in lines.get(i, {}).items()}


class _Elimination:
    """Mutable working state of one SNF computation"""

    def __init__(self, matrix: SparseIntMatrix, ring: CoefficientRing, transforms: bool):
        self.ring = ring
        self.transforms = transforms
        self.rows: Lines = {}
        self.cols: Lines = {}
        for (i, j), value in matrix.items():
            value = ring.coerce(value)
            if value:
                self.rows.setdefault(i, {})[j] = value
                self.cols.setdefault(j, {})[i] = value
        self.active_rows: Set[int] = set(range(matrix.rows))
        self.active_cols: Set[int] = set(range(matrix.cols))
        self.touched_rows: Set[int] = set()
        self.touched_cols: Set[int] = set()
        self.heap: List[Tuple[int, int, int, int]] = []
        one = ring.one
        if transforms:
            self.u_rows: Lines = {i: {i: one} for i in range(matrix.rows)}
            self.u_inv_cols: Lines = {i: {i: one} for i in range(matrix.rows)}
            self.v_cols: Lines = {j: {j: one} for j in range(matrix.cols)}
            self.v_inv_rows: Lines = {j: {j: one} for j in range(matrix.cols)}

    # entry-level operations on A, mirrored between row and column maps

    def _axpy(self, lines: Lines, mirror: Lines, target: int, source: int, k: Any) -> None:
        src = lines.get(source, {})
        tgt = lines.setdefault(target, {})
        for idx, x in list(src.items()):
            value = self.ring.reduce(tgt.get(idx, 0) + k * x)
            if value:
                tgt[idx] = value
                mirror.setdefault(idx, {})[target] = value
            else:
                tgt.pop(idx, None)
                mirror.get(idx, {}).pop(target, None)

    def _combine(self, lines: Lines, mirror: Lines, i: int, a: int, s: Any, t: Any, c: Any, e: Any) -> None:
        keys = set(lines.get(i, {})) | set(lines.get(a, {}))
        _line_combine(lines, i, a, s, t, c, e, self.ring)
        new_i = lines[i]
        new_a = lines[a]
        for idx in keys:
            line = mirror.setdefault(idx, {})
            if idx in new_i:
                line[i] = new_i[idx]
            else:
                line.pop(i, None)
            if idx in new_a:
                line[a] = new_a[idx]
            else:
                line.pop(a, None)

    def _inverse_coefficients(self, s: Any, t: Any, c: Any, e: Any) -> Tuple[Any, Any, Any, Any]:
        det_inv = self.ring.inverse(self.ring.reduce(s * e - t * c))
        return (self.ring.reduce(e * det_inv), self.ring.reduce(-c * det_inv),
                self.ring.reduce(-t * det_inv), self.ring.reduce(s * det_inv))

    def row_axpy(self, target: int, source: int, k: Any) -> None:
        """row_target += k * row_source"""
        self._axpy(self.rows, self.cols, target, source, k)
        self.touched_rows.add(target)
        if self.transforms:
            _line_axpy(self.u_rows, target, source, k, self.ring)
            _line_axpy(self.u_inv_cols, source, target, -k, self.ring)

    def col_axpy(self, target: int, source: int, k: Any) -> None:
        """col_target += k * col_source"""
        self._axpy(self.cols, self.rows, target, source, k)
        self.touched_cols.add(target)
        if self.transforms:
            _line_axpy(self.v_cols, target, source, k, self.ring)
            _line_axpy(self.v_inv_rows, source, target, -k, self.ring)

    def row_combine(self, i: int, a: int, s: Any, t: Any, c: Any, e: Any) -> None:
        """(row_i, row_a) <- (s row_i + t row_a, c row_i + e row_a)"""
        self._combine(self.rows, self.cols, i, a, s, t, c, e)
        self.touched_rows.update((i, a))
        if self.transforms:
            _line_combine(self.u_rows, i, a, s, t, c, e, self.ring)
            _line_combine(self.u_inv_cols, i, a, *self._inverse_coefficients(s, t, c, e), self.ring)

    def col_combine(self, j: int, b: int, s: Any, t: Any, c: Any, e: Any) -> None:
        """(col_j, col_b) <- (s col_j + t col_b, c col_j + e col_b)"""
        self._combine(self.cols, self.rows, j, b, s, t, c, e)
        self.touched_cols.update((j, b))
        if self.transforms:
            _line_combine(self.v_cols, j, b, s, t, c, e, self.ring)
            _line_combine(self.v_inv_rows, j, b, *self._inverse_coefficients(s, t, c, e), self.ring)

    # pivot selection

    def _key(self, i: int, j: int, value: Any) -> Tuple[int, int, int, int]:
        fill = (len(self.rows.get(i, ())) - 1) * (len(self.cols.get(j, ())) - 1)
        return (self.ring.norm(value), fill, i, j)

    def _push_lines(self, rows, cols) -> None:
        for i in rows:
            if i in self.active_rows:
                for j, value in self.rows.get(i, {}).items():
                    if j in self.active_cols:
                        heapq.heappush(self.heap, self._key(i, j, value))
        for j in cols:
            if j in self.active_cols:
                for i, value in self.cols.get(j, {}).items():
                    if i in self.active_rows:
                        heapq.heappush(self.heap, self._key(i, j, value))

    def next_pivot(self) -> Optional[Tuple[int, int]]:
        while self.heap:
            key = heapq.heappop(self.heap)
            _, _, i, j = key
            if i not in self.active_rows or j not in self.active_cols:
                continue
            value = self.rows.get(i, {}).get(j)
            if not value:
                continue
            current = self._key(i, j, value)
            if current != key:
                heapq.heappush(self.heap, current)
                continue
            return i, j
        return None

    def eliminate(self, i: int, j: int) -> Any:
        """Clear row i and column j except for the pivot; return the pivot"""
        ring = self.ring
        while True:
            for a in sorted(self.cols.get(j, {})):
                if a == i:
                    continue
                x = self.cols[j].get(a)
                if not x:
                    continue
                p = self.rows[i][j]
                if ring.divides(p, x):
                    self.row_axpy(a, i, -ring.quo(x, p))
                else:
                    s, t, g = ring.gcdex(p, x)
                    self.row_combine(i, a, s, t, -ring.quo(x, g), ring.quo(p, g))
            merged = False
            for b in sorted(self.rows.get(i, {})):
                if b == j:
                    continue
                y = self.rows[i].get(b)
                if not y:
                    continue
                p = self.rows[i][j]
                if ring.divides(p, y):
                    self.col_axpy(b, j, -ring.quo(y, p))
                else:
                    s, t, g = ring.gcdex(p, y)
                    self.col_combine(j, b, s, t, -ring.quo(y, g), ring.quo(p, g))
                    merged = True
            if not merged:
                return self.rows[i][j]

    def run(self) -> List[Tuple[int, int, Any]]:
        self._push_lines(sorted(self.rows), [])
        pivots = []
        while True:
            found = self.next_pivot()
            if found is None:
                break
            i, j = found
            self.touched_rows = set()
            self.touched_cols = set()
            value = self.eliminate(i, j)
            self.active_rows.discard(i)
            self.active_cols.discard(j)
            pivots.append((i, j, value))
            self._push_lines(sorted(self.touched_rows), sorted(self.touched_cols))
        return pivots

    def scale_row(self, i: int, unit: Any) -> None:
        if self.transforms:
            _line_scale(self.u_rows, i, unit, self.ring)
            _line_scale(self.u_inv_cols, i, self.ring.inverse(unit), self.ring)


def _divisibility_pass(state: _Elimination, pivots: List[Tuple[int, int, Any]]) -> List[Tuple[int, int, Any]]:
    """Turn the pivot diagonal into a divisibility chain with gcd/lcm swaps"""
    ring = state.ring
    units = [p for p in pivots if ring.is_unit(p[2])]
    rest = [list(p) for p in pivots if not ring.is_unit(p[2])]
    for k in range(len(rest)):
        for l in range(k + 1, len(rest)):
            ik, jk, a = rest[k]
            il, jl, b = rest[l]
            if ring.divides(a, b):
                continue
            s, t, g = ring.gcdex(a, b)
            if state.transforms:
                _line_axpy(state.v_cols, jk, jl, 1, ring)
                _line_axpy(state.v_inv_rows, jl, jk, -1, ring)
                bg = ring.quo(b, g)
                ag = ring.quo(a, g)
                _line_combine(state.u_rows, ik, il, s, t, -bg, ag, ring)
                _line_combine(state.u_inv_cols, ik, il, *state._inverse_coefficients(s, t, -bg, ag), ring)
                shift = t * bg
                _line_axpy(state.v_cols, jl, jk, -shift, ring)
                _line_axpy(state.v_inv_rows, jk, jl, shift, ring)
            rest[k][2] = g
            rest[l][2] = ring.quo(a * b, g)
    return units + [tuple(p) for p in rest]


def _assemble(lines: Lines, order: List[int], size: int, by_rows: bool) -> SparseIntMatrix:
    entries = {}
    for k, line_id in enumerate(order):
        for idx, value in lines.get(line_id, {}).items():
            if by_rows:
                entries[(k, idx)] = value
            else:
                entries[(idx, k)] = value
    return SparseIntMatrix(size, size, entries, allow_fractions=True)


def smith(matrix: SparseIntMatrix, ring: CoefficientRing = INTEGERS,
          transforms: bool = False) -> SmithDecomposition:
    """Compute the Smith normal form of a sparse matrix

    Args:
        matrix: Input matrix; entries must lie in the ring
        ring: Coefficient ring
        transforms: Also return U, U^-1, V, V^-1 with U A V diagonal

    Returns:
        SmithDecomposition
    """
    if not isinstance(matrix, SparseIntMatrix):
        raise InputError(f"smith expects a SparseIntMatrix, got {type(matrix).__name__}")

    arithmetic = ring.arithmetic
    state = _Elimination(matrix, arithmetic, transforms)
    pivots = state.run()
    pivots = _divisibility_pass(state, pivots)

    normalized = []
    for i, j, value in pivots:
        canonical = arithmetic.canonical(value)
        if arithmetic.is_field:
            unit = arithmetic.inverse(value)
        else:
            unit = 1 if value > 0 else -1
        if unit != 1:
            state.scale_row(i, unit)
        normalized.append((i, j, arithmetic.reduce(value * unit) if arithmetic.is_field else canonical))

    diagonal = tuple(v for _, _, v in normalized)
    if ring.is_field:
        divisors = tuple(1 for _ in diagonal)
    else:
        divisors = tuple(ring.localize(v) for v in diagonal)

    logger.debug(f"smith {matrix.rows}x{matrix.cols} nnz={matrix.nnz} over {ring}: rank {len(diagonal)}")

    if not transforms:
        return SmithDecomposition(matrix.rows, matrix.cols, ring, divisors, diagonal)

    pivot_rows = [i for i, _, _ in normalized]
    pivot_cols = [j for _, j, _ in normalized]
    used_rows = set(pivot_rows)
    used_cols = set(pivot_cols)
    row_order = pivot_rows + [i for i in range(matrix.rows) if i not in used_rows]
    col_order = pivot_cols + [j for j in range(matrix.cols) if j not in used_cols]

    return SmithDecomposition(
        matrix.rows,
        matrix.cols,
        ring,
        divisors,
        diagonal,
        left=_assemble(state.u_rows, row_order, matrix.rows, by_rows=True),
        left_inverse=_assemble(state.u_inv_cols, row_order, matrix.rows, by_rows=False),
        right=_assemble(state.v_cols, col_order, matrix.cols, by_rows=False),
        right_inverse=_assemble(state.v_inv_rows, col_order, matrix.cols, by_rows=True),
    )


def invariant_factors(matrix: SparseIntMatrix, ring: CoefficientRing = INTEGERS) -> Tuple[int, ...]:
    """Divisors greater than one (the torsion part of the cokernel)"""
    return smith(matrix, ring).nonunit_divisors


def kernel_basis(matrix: SparseIntMatrix, ring: CoefficientRing = INTEGERS) -> List[Dict[int, Any]]:
    """Basis of the kernel of a matrix as sparse column vectors

    The trailing columns of V span the kernel because U A V is diagonal.
    """
    decomposition = smith(matrix, ring, transforms=True)
    right = decomposition.right
    return [right.column(j) for j in range(decomposition.rank, matrix.cols)]

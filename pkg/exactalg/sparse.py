"""
Sparse exact matrices for treecoh

SparseIntMatrix stores only nonzero entries, keyed by (row, col). Entries
are Python ints (arbitrary precision) or Fractions when working over the
rationals. Matrices are treated as immutable values.
"""

import json
from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from utils.errors import InputError

Vector = Dict[int, Any]


def _check_entry(value: Any, allow_fractions: bool) -> None:
    if isinstance(value, bool):
        raise InputError(f"Boolean entry {value!r} is not allowed")
    if isinstance(value, int):
        return
    if isinstance(value, Fraction):
        if allow_fractions or value.denominator == 1:
            return
        raise InputError(f"Non-integral entry {value}; fractions need allow_fractions")
    raise InputError(f"Entry {value!r} is neither int nor Fraction")


class SparseIntMatrix:
    """Exact sparse matrix with rows x cols shape"""

    __slots__ = ("rows", "cols", "_entries", "_by_row", "_by_col")

    def __init__(self, rows: int, cols: int, entries: Optional[Mapping[Tuple[int, int], Any]] = None,
                 allow_fractions: bool = False):
        if not isinstance(rows, int) or not isinstance(cols, int) or rows < 0 or cols < 0:
            raise InputError(f"Invalid shape ({rows}, {cols})")
        self.rows = rows
        self.cols = cols
        clean: Dict[Tuple[int, int], Any] = {}
        for (i, j), value in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise InputError(f"Index ({i}, {j}) out of range for shape ({rows}, {cols})")
            _check_entry(value, allow_fractions)
            if value:
                if isinstance(value, Fraction) and value.denominator == 1 and not allow_fractions:
                    value = value.numerator
                clean[(i, j)] = value
        self._entries = clean
        self._by_row: Optional[Dict[int, Dict[int, Any]]] = None
        self._by_col: Optional[Dict[int, Dict[int, Any]]] = None

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "SparseIntMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, size: int) -> "SparseIntMatrix":
        return cls(size, size, {(i, i): 1 for i in range(size)})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[Any]], cols: Optional[int] = None,
                   allow_fractions: bool = False) -> "SparseIntMatrix":
        """Build from a list of rows

        Args:
            rows: Dense row lists
            cols: Column count, needed when there are no rows
            allow_fractions: Permit rational entries

        Returns:
            SparseIntMatrix
        """
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != width:
                raise InputError(f"Row {i} has length {len(row)}, expected {width}")
            for j, value in enumerate(row):
                if value:
                    entries[(i, j)] = value
        return cls(len(rows), width, entries, allow_fractions=allow_fractions)

    @classmethod
    def from_triples(cls, rows: int, cols: int, triples: Iterable[Sequence[Any]],
                     allow_fractions: bool = False) -> "SparseIntMatrix":
        entries = {}
        for triple in triples:
            if len(triple) != 3:
                raise InputError(f"Malformed triple {triple!r}")
            i, j, value = triple
            if (i, j) in entries:
                raise InputError(f"Duplicate entry at ({i}, {j})")
            entries[(i, j)] = value
        return cls(rows, cols, entries, allow_fractions=allow_fractions)

    @classmethod
    def from_json(cls, text: str) -> "SparseIntMatrix":
        """Parse the {rows, cols, entries:[[i,j,v],...]} fixture format

        Rational values are written as "a/b" strings.
        """
        try:
            data = json.loads(text)
            rows, cols, triples = data["rows"], data["cols"], data["entries"]
        except (ValueError, KeyError, TypeError) as e:
            raise InputError(f"Malformed matrix JSON: {str(e)}")
        parsed = []
        fractional = False
        for i, j, value in triples:
            if isinstance(value, str):
                value = Fraction(value)
                fractional = fractional or value.denominator != 1
            parsed.append((i, j, value))
        return cls.from_triples(rows, cols, parsed, allow_fractions=fractional)

    def to_json(self) -> str:
        triples = []
        for (i, j), value in self.items():
            if isinstance(value, Fraction):
                value = str(value) if value.denominator != 1 else value.numerator
            triples.append([i, j, value])
        return json.dumps({"rows": self.rows, "cols": self.cols, "entries": triples})

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def items(self) -> Iterator[Tuple[Tuple[int, int], Any]]:
        """Entries in (row, col) order"""
        for key in sorted(self._entries):
            yield key, self._entries[key]

    def get(self, i: int, j: int) -> Any:
        return self._entries.get((i, j), 0)

    def is_zero(self) -> bool:
        return not self._entries

    def row_map(self) -> Dict[int, Dict[int, Any]]:
        if self._by_row is None:
            by_row: Dict[int, Dict[int, Any]] = {}
            for (i, j), value in self._entries.items():
                by_row.setdefault(i, {})[j] = value
            self._by_row = by_row
        return self._by_row

    def col_map(self) -> Dict[int, Dict[int, Any]]:
        if self._by_col is None:
            by_col: Dict[int, Dict[int, Any]] = {}
            for (i, j), value in self._entries.items():
                by_col.setdefault(j, {})[i] = value
            self._by_col = by_col
        return self._by_col

    def column(self, j: int) -> Vector:
        return dict(self.col_map().get(j, {}))

    def row(self, i: int) -> Vector:
        return dict(self.row_map().get(i, {}))

    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self._entries.items()},
                               allow_fractions=True)

    def matvec(self, vector: Mapping[int, Any]) -> Vector:
        """Multiply by a sparse column vector {index: value}"""
        result: Vector = {}
        cols = self.col_map()
        for j, x in vector.items():
            if not x:
                continue
            for i, a in cols.get(j, {}).items():
                result[i] = result.get(i, 0) + a * x
        return {i: v for i, v in result.items() if v}

    def matmul(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.cols != other.rows:
            raise InputError(f"Shape mismatch {self.shape} x {other.shape}")
        product: Dict[Tuple[int, int], Any] = {}
        left_rows = self.row_map()
        right_rows = other.row_map()
        for i, row in left_rows.items():
            acc: Dict[int, Any] = {}
            for k, a in row.items():
                for j, b in right_rows.get(k, {}).items():
                    acc[j] = acc.get(j, 0) + a * b
            for j, v in acc.items():
                if v:
                    product[(i, j)] = v
        return SparseIntMatrix(self.rows, other.cols, product, allow_fractions=True)

    def __matmul__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        return self.matmul(other)

    def map_entries(self, fn) -> "SparseIntMatrix":
        return SparseIntMatrix(self.rows, self.cols, {k: fn(v) for k, v in self._entries.items()},
                               allow_fractions=True)

    def hstack(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.rows != other.rows:
            raise InputError(f"Row mismatch {self.rows} != {other.rows}")
        entries = dict(self._entries)
        for (i, j), v in other._entries.items():
            entries[(i, j + self.cols)] = v
        return SparseIntMatrix(self.rows, self.cols + other.cols, entries, allow_fractions=True)

    def vstack(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.cols != other.cols:
            raise InputError(f"Column mismatch {self.cols} != {other.cols}")
        entries = dict(self._entries)
        for (i, j), v in other._entries.items():
            entries[(i + self.rows, j)] = v
        return SparseIntMatrix(self.rows + other.rows, self.cols, entries, allow_fractions=True)

    def select_columns(self, columns: Sequence[int]) -> "SparseIntMatrix":
        index = {c: k for k, c in enumerate(columns)}
        entries = {(i, index[j]): v for (i, j), v in self._entries.items() if j in index}
        return SparseIntMatrix(self.rows, len(columns), entries, allow_fractions=True)

    def select_rows(self, rows: Sequence[int]) -> "SparseIntMatrix":
        index = {r: k for k, r in enumerate(rows)}
        entries = {(index[i], j): v for (i, j), v in self._entries.items() if i in index}
        return SparseIntMatrix(len(rows), self.cols, entries, allow_fractions=True)

    def to_dense(self) -> List[List[Any]]:
        dense = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            dense[i][j] = v
        return dense

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, Any]]) -> "SparseIntMatrix":
        entries = {}
        for j, column in enumerate(columns):
            for i, v in column.items():
                if v:
                    entries[(i, j)] = v
        return cls(rows, len(columns), entries, allow_fractions=True)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(sorted(self._entries.items()))))

    def __repr__(self) -> str:
        return f"SparseIntMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

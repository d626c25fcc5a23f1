"""
Cell dumps for debugging
"""

import csv
import io
from typing import Iterable, Optional, TextIO

from prodcomplex.cells import Cell, cell_dimension
from prodcomplex.complex import ProductComplex

HEADER = ["cell", "dim", "beta_min", "beta_max"]


def write_cells(complex_: ProductComplex, cells: Iterable[Cell], stream: Optional[TextIO] = None) -> str:
    """Write cells as CSV rows (cell id tuple, dim, beta min/max)

    Returns the CSV text when no stream is given, otherwise an empty string.
    """
    target = stream if stream is not None else io.StringIO()
    writer = csv.writer(target, lineterminator="\n")
    writer.writerow(HEADER)
    for cell in sorted(cells):
        low, high = complex_.beta_range(cell)
        writer.writerow([" ".join(str(c) for c in cell), cell_dimension(cell), str(low), str(high)])
    if stream is None:
        return target.getvalue()
    return ""

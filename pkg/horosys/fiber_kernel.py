"""
Kernel of the Cech degree-0 map on a fiber cover

For W = MultiComplement(specs) projected to factor w, the map
d: sum_y H^{d-1}(F_y) -> sum_e H^{d-1}(F_e) sends (x_y) to
x_top|F_e - x_bottom|F_e on every edge e. Classes are taken at stage n and
pushed to stage n' = n + window before d is applied; the check passes when
every stage-n class killed by d already dies in the colimit.
"""

import logging
from typing import Any, Dict, List, Set

from exactalg.cohomology import CohomologyBasis, induced_map, map_kernel
from exactalg.rings import INTEGERS, CoefficientRing
from exactalg.sparse import SparseIntMatrix
from cohomo.pairs import check_stage
from prodcomplex.cells import Cell, CellSet
from prodcomplex.complex import ProductComplex
from prodcomplex.fibers import fiber_cover
from prodcomplex.regions import MultiComplement
from utils.errors import InputError

logger = logging.getLogger(__name__)


def stage_part(complex_: ProductComplex, cells: Set[Cell], n: int) -> CellSet:
    """Cells of a set meeting the open stage-n box"""
    allowed = [set(complex_.stage_components(i, n)) for i in range(complex_.d)]
    inside = [c for c in cells if all(code in allowed[i] for i, code in enumerate(c))]
    return complex_.cell_set(inside)


class _FiberClasses:
    """Degree d-1 stage cohomology of one cover set at stages n and n'"""

    def __init__(self, complex_: ProductComplex, cells: Set[Cell], n: int, n_prime: int,
                 ring: CoefficientRing):
        k = complex_.d - 1
        self.low = stage_part(complex_, cells, n)
        self.high = stage_part(complex_, cells, n_prime)
        self.low_basis = CohomologyBasis(self.low.coboundary(k - 1), self.low.coboundary(k), ring)
        self.high_basis = CohomologyBasis(self.high.coboundary(k - 1), self.high.coboundary(k), ring)
        self.colimit = induced_map(self.low_basis, self.high_basis, self.low.extension_matrix(self.high, k))


def _place(entries: Dict, block: SparseIntMatrix, row: int, col: int, sign: int = 1) -> None:
    for (i, j), value in block.items():
        key = (row + i, col + j)
        entries[key] = entries.get(key, 0) + sign * value


def fiber_kernel_check(complex_: ProductComplex, w: int, region: MultiComplement, n: int,
                       window: int = 1, ring: CoefficientRing = INTEGERS,
                       sample_limit: int = 50) -> Dict[str, Any]:
    """Injectivity of the Cech map on the image of stage-n fiber classes

    Args:
        complex_: Product complex with d >= 2
        w: Projection factor
        region: Multi-horoball complement
        n: Source stage
        window: Stage gap to the target stage
        ring: Coefficient ring
        sample_limit: Number of generator images tested for the single-zero property

    Returns:
        Report with the kernel ranks, the single-zero samples and the verdict
    """
    record: Dict[str, Any] = {"factor": w, "stage": n, "window": window}
    if not region.specs:
        logger.warning("fiber kernel check skipped: the region has no horoballs")
        return {**record, "applicable": False, "passed": True}
    if complex_.d < 2:
        raise InputError("The fiber kernel check needs at least two factors")
    if window < 1:
        raise InputError(f"Window must be at least 1, got {window}")
    check_stage(complex_, n)
    check_stage(complex_, n + window)

    n_prime = n + window
    k = complex_.d - 1
    cover = fiber_cover(complex_, w, region)
    tree = complex_.factors[w]
    vertices = [y for y in tree.vertices() if tree.has_full_valence(y)]
    classes = {y: _FiberClasses(complex_, cover.vertex_set(y), n, n_prime, ring) for y in vertices}
    vertices = [y for y in vertices if classes[y].low_basis.size]
    edges = sorted({e for y in vertices for e in tree.incident_edges(y)})

    column_offsets: Dict[int, int] = {}
    columns = 0
    for y in vertices:
        column_offsets[y] = columns
        columns += classes[y].low_basis.size
    if not columns:
        logger.warning(f"fiber kernel check over factor {w} at stage {n} has no stage-{n} fiber classes")
        return {**record, "applicable": False, "passed": True, "source_rank": 0}

    colimit_entries: Dict = {}
    colimit_orders: List[int] = []
    rows = 0
    for y in vertices:
        _place(colimit_entries, classes[y].colimit, rows, column_offsets[y])
        colimit_orders.extend(classes[y].high_basis.orders)
        rows += classes[y].high_basis.size
    colimit = SparseIntMatrix(rows, columns, colimit_entries)

    cech_entries: Dict = {}
    cech_orders: List[int] = []
    restrictions: Dict[tuple, tuple] = {}
    rows = 0
    for e in edges:
        bottom, top = tree.edge_endpoints(e)
        edge_cells = stage_part(complex_, cover.edge_set(e), n_prime)
        edge_basis = CohomologyBasis(edge_cells.coboundary(k - 1), edge_cells.coboundary(k), ring)
        for y, sign in ((top, 1), (bottom, -1)):
            if y not in column_offsets:
                continue
            source = classes[y]
            chain_map = source.high.restriction_matrix(edge_cells, k)
            rho = induced_map(source.high_basis, edge_basis, chain_map)
            restrictions[(y, e)] = (rho, edge_basis.orders)
            _place(cech_entries, rho @ source.colimit, rows, column_offsets[y], sign)
        cech_orders.extend(edge_basis.orders)
        rows += edge_basis.size
    cech = SparseIntMatrix(rows, columns, cech_entries)

    cech_kernel = map_kernel(cech, cech_orders, ring)
    dead = map_kernel(colimit, colimit_orders, ring)
    passed = dead.contains_submodule(cech_kernel)

    single_zero = _single_zero_samples(classes, vertices, restrictions, tree, ring, sample_limit)
    if not passed:
        logger.error(f"fiber kernel check failed over factor {w} at stage {n}")
    return {
        **record,
        "applicable": True,
        "passed": passed,
        "vertices": len(vertices),
        "edges": len(edges),
        "source_rank": columns,
        "kernel_rank": cech_kernel.rank,
        "dead_rank": dead.rank,
        "single_zero": single_zero,
    }


def _single_zero_samples(classes, vertices, restrictions, tree, ring, limit: int) -> Dict[str, Any]:
    """For generator images x at y, count edges e at y with rho_{y,e}(x) = 0"""
    arithmetic = ring.arithmetic
    sampled = 0
    violations = []
    for y in vertices:
        colimit = classes[y].colimit
        for j in range(colimit.cols):
            if sampled >= limit:
                break
            image = colimit.column(j)
            if _vanishes(image, classes[y].high_basis.orders, arithmetic):
                continue
            sampled += 1
            zeros = 0
            for e in tree.incident_edges(y):
                if (y, e) not in restrictions:
                    continue
                rho, orders = restrictions[(y, e)]
                if _vanishes(rho.matvec(image), orders, arithmetic):
                    zeros += 1
            if zeros > 1:
                violations.append({"vertex": y, "generator": j, "zero_edges": zeros})
    return {"sampled": sampled, "passed": not violations, "violations": violations[:5]}


def _vanishes(vector: Dict[int, Any], orders: List[int], arithmetic) -> bool:
    for i, x in vector.items():
        x = arithmetic.reduce(x)
        if not x:
            continue
        order = orders[i]
        if order == 0 or not arithmetic.divides(order, x):
            return False
    return True

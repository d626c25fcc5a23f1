"""
Product Complex Package for treecoh

Cube complexes of products of truncated trees, regions, horoballs and
fiber covers.
"""

from .cells import CellSet, cell_dimension, edge_code, vertex_cell, vertex_code
from .complex import ProductComplex, boundary_matrix, is_face_closed, region_cells
from .dump import write_cells
from .fibers import FiberCover, dichotomy, fiber_cover, fiber_identity, fiber_parameters, verify_cover
from .horoballs import DisjointnessReport, HoroballSpec, check_disjointness, product_distance
from .regions import CornerBlock, KBlock, MultiComplement, Region, Sublevel, Superlevel, Whole, YHat, parse_region

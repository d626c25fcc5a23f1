"""
Tree Geometry Package for treecoh

Finite truncations of locally finite trees with a distinguished end,
heights, ascent maps, boundary strata and Busemann functions of other ends.
"""

from .ends import RayEnd, busemann_table, busemann_value, distinguished_end
from .tree import TreeVertex, TruncatedTree, build_explicit, build_regular

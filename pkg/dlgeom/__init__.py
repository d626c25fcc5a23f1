"""
Diestel-Leader Package for treecoh

Horocyclic coding of regular trees, DL(q, q) from the coding and from Y_0,
the lamplighter action and its orbits on beta slabs.
"""

from .coding import CodedTree, DLVertex
from .graph import action_check, degree_profile, dl_graph, dl_isomorphism, write_edge_list, y0_graph
from .lamplighter import LampElement, LampState, LamplighterCoding, lamplighter_act, transitivity_sample
from .slabs import element_between, expected_orbits, level_pairs, orbit_invariant, slab_cocompactness

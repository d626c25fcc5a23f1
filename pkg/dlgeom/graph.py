"""
Diestel-Leader graphs from the coding and from the product complex

Vertices of DL(q, q) are pairs (u, v) with h(u) + h(v) = 0. The pair is
joined to (parent(u), child of v) and to (child of u, parent(v)), so
interior vertices have degree 2q. The same graph is the zero level set Y_0
of beta on a product of two (q+1)-regular trees: its vertices are the
product vertices with beta = 0 and its edges are the diagonals of the
squares whose bottom corner sits at beta = -1. On more factors the same
rule gives the one-skeleton of the horosphere Y_0.
"""

import itertools
import logging
import random
from pathlib import Path
from typing import Any, Dict, Optional, Union

import networkx as nx

from dlgeom.coding import CodedTree
from dlgeom.lamplighter import LampElement, LamplighterCoding, random_state
from prodcomplex.complex import ProductComplex
from utils.errors import DeepenTruncationError, InputError

logger = logging.getLogger(__name__)


def _window(budget: int, window: Optional[int]) -> int:
    window = budget if window is None else window
    if not 0 <= window <= budget:
        raise InputError(f"Height window {window} outside [0, {budget}]", window=window)
    return window


def dl_graph(q: int, budget: int, window: Optional[int] = None) -> nx.Graph:
    """DL(q, q) on the coded truncation, nodes named by tree-id pairs

    Args:
        q: Alphabet size
        budget: Label budget L, the depth of both coded trees
        window: Largest |h(u)| kept; defaults to the budget

    Returns:
        Undirected graph with node attribute "height" holding h(u)
    """
    coded = CodedTree(q, budget)
    window = _window(budget, window)
    graph = nx.Graph(q=q, budget=budget, window=window)
    for h in range(-window, window + 1):
        lower = coded.at_height(-h)
        for u in coded.at_height(h):
            for v in lower:
                graph.add_node((coded.to_id(u), coded.to_id(v)), height=h)
    for h in range(-window, window):
        for u in coded.at_height(h):
            up = coded.to_id(u.parent())
            for v in coded.at_height(-h):
                for child in v.children(q):
                    graph.add_edge((coded.to_id(u), coded.to_id(v)), (up, coded.to_id(child)))
    logger.debug(f"built DL({q},{q}) with {graph.number_of_nodes()} vertices")
    return graph


def y0_graph(complex_: ProductComplex, window: Optional[int] = None) -> nx.Graph:
    """The one-skeleton of Y_0 = beta^{-1}(0) for unit weights

    Vertices are the product vertices whose heights sum to zero, each within
    the window. Two of them are joined when they are opposite corners of a
    square in factors i and j, coordinate i one edge higher and coordinate j
    one edge lower. For two factors these are the Diestel-Leader edges; for
    d > 2 they span the one-skeleton of the (d-1)-dimensional horosphere.
    """
    if any(w != 1 for w in complex_.weights):
        raise InputError("Y_0 extraction needs unit weights")
    factors = complex_.factors
    budget = complex_.depth
    window = _window(budget, window)
    graph = nx.Graph(d=complex_.d, budget=budget, window=window)
    for heights in itertools.product(range(-window, window + 1), repeat=complex_.d):
        if sum(heights):
            continue
        layers = [tree.at_height(h) for tree, h in zip(factors, heights)]
        for node in itertools.product(*layers):
            graph.add_node(node, height=heights[0], heights=heights)
    for node in list(graph.nodes):
        for i, j in itertools.permutations(range(complex_.d), 2):
            up = factors[i].parents[node[i]]
            if up is None:
                continue
            for child in factors[j].children(node[j]):
                other = list(node)
                other[i], other[j] = up, child
                other = tuple(other)
                if other in graph:
                    graph.add_edge(node, other)
    logger.debug(f"extracted Y_0 of a {complex_.d}-fold product with {graph.number_of_nodes()} vertices")
    return graph


def degree_profile(graph: nx.Graph) -> Dict[int, Dict[int, int]]:
    """height -> degree -> count"""
    profile: Dict[int, Dict[int, int]] = {}
    for node, degree in graph.degree():
        h = graph.nodes[node]["height"]
        bucket = profile.setdefault(h, {})
        bucket[degree] = bucket.get(degree, 0) + 1
    return profile


def dl_isomorphism(q: int, budget: int, window: Optional[int] = None,
                   certify_limit: int = 400) -> Dict[str, Any]:
    """Compare the coded DL graph with Y_0 of the product complex

    The coding names vertices by tree ids, so the explicit map is the
    identity on ids and the edge sets must coincide. Weisfeiler-Lehman
    hashes compare the graphs up to relabeling, and networkx certifies an
    isomorphism outright for graphs up to certify_limit vertices.
    """
    coded = dl_graph(q, budget, window)
    complex_ = ProductComplex.regular(2, q, budget)
    extracted = y0_graph(complex_, window)
    explicit = set(coded.nodes) == set(extracted.nodes) and \
        {frozenset(e) for e in coded.edges} == {frozenset(e) for e in extracted.edges}
    hashes = nx.weisfeiler_lehman_graph_hash(coded) == nx.weisfeiler_lehman_graph_hash(extracted)
    certified: Optional[bool] = None
    if coded.number_of_nodes() <= certify_limit:
        certified = nx.is_isomorphic(coded, extracted)
    window = coded.graph["window"]
    interior = [n for n, data in coded.nodes(data=True) if abs(data["height"]) < window]
    interior_regular = all(coded.degree(n) == 2 * q for n in interior)
    passed = explicit and hashes and certified is not False and interior_regular
    if not passed:
        logger.error(f"DL({q},{q}) and Y_0 differ at budget {budget}")
    return {
        "q": q,
        "budget": budget,
        "window": window,
        "passed": passed,
        "vertices": coded.number_of_nodes(),
        "edges": coded.number_of_edges(),
        "explicit_map": explicit,
        "wl_hash_equal": hashes,
        "isomorphic": certified,
        "interior_degree": 2 * q,
        "interior_regular": interior_regular,
        "connected": nx.is_connected(coded),
        "height_zero_vertices": sum(1 for _, h in coded.nodes(data="height") if h == 0),
    }


def write_edge_list(graph: nx.Graph, path: Union[str, Path]) -> int:
    """Write "u1-v1,u2-v2" rows, one id per factor; returns the number of edges written"""
    named = nx.relabel_nodes(graph, {node: "-".join(str(x) for x in node) for node in graph.nodes})
    nx.write_edgelist(named, str(path), delimiter=",", data=False)
    return named.number_of_edges()


def action_check(q: int, budget: int, count: int = 200, seed: int = 0) -> Dict[str, Any]:
    """Random lamplighter elements keep DL edges as edges and beta at zero"""
    graph = dl_graph(q, budget)
    coding = LamplighterCoding(q, budget)
    coded = coding.coded
    rng = random.Random(seed)
    edges = sorted(graph.edges)
    moved = skipped = 0
    failures = []
    for _ in range(count):
        state = random_state(rng, q, budget)
        shift = rng.randint(-1, 1)
        element = LampElement.make(q, state.f, shift)
        a, b = rng.choice(edges)
        try:
            images = [coding.act(element, (coded.from_id(x), coded.from_id(y))) for x, y in (a, b)]
        except DeepenTruncationError:
            skipped += 1
            continue
        moved += 1
        ends = [(coded.to_id(u), coded.to_id(v)) for u, v in images]
        if any(u.height + v.height for u, v in images) or not graph.has_edge(*ends):
            failures.append({"edge": [list(a), list(b)], "element": element.to_dict()})
    if failures:
        logger.error(f"lamplighter action broke {len(failures)} of {moved} edges")
    return {"q": q, "budget": budget, "passed": not failures, "moved": moved, "skipped": skipped,
            "failures": failures[:5]}

"""
Truncated trees for treecoh

A TruncatedTree is the part of a locally finite tree lying below the spine
vertex x_N and at height >= -N. Vertices are numbered breadth-first from
x_N; every vertex remembers its path of child indices from x_N, so
ancestry is a prefix test. Child 0 of each spine vertex continues the spine.
"""

import json
import logging
from collections import deque
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from utils.errors import BoundaryError, InputError

logger = logging.getLogger(__name__)

Path = Tuple[int, ...]


@dataclass(frozen=True)
class TreeVertex:
    """Read-only view of one vertex"""

    id: int
    height: int
    parent: Optional[int]
    children: Tuple[int, ...]
    path: Path

    def to_dict(self) -> Dict:
        return {"id": self.id, "h": self.height, "parent": self.parent, "children": list(self.children)}


class TruncatedTree:
    """Finite truncation C_N of a tree with a distinguished end"""

    def __init__(self, depth: int, child_count: Callable[[int, Path], int], q: Optional[int] = None):
        """Build the truncation breadth-first from the top spine vertex

        Args:
            depth: Truncation depth N; heights range over [-N, N]
            child_count: Number of children of the vertex at (height, path)
            q: Branching number when the tree is regular
        """
        if not isinstance(depth, int) or depth < 1:
            raise InputError(f"Depth must be a positive integer, got {depth}", depth=depth)
        self.depth = depth
        self.q = q
        self.heights: List[int] = []
        self.parents: List[Optional[int]] = []
        self.child_ids: List[Tuple[int, ...]] = []
        self.paths: List[Path] = []
        self._by_path: Dict[Path, int] = {}
        self._by_height: Dict[int, List[int]] = {}

        queue = deque([((), depth, None)])
        pending_children: Dict[int, List[int]] = {}
        while queue:
            path, height, parent = queue.popleft()
            vid = len(self.heights)
            self.heights.append(height)
            self.parents.append(parent)
            self.paths.append(path)
            self._by_path[path] = vid
            self._by_height.setdefault(height, []).append(vid)
            pending_children[vid] = []
            if parent is not None:
                pending_children[parent].append(vid)
            if height > -depth:
                count = child_count(height, path)
                if not isinstance(count, int) or count < 1:
                    raise InputError(f"Vertex at height {height} needs at least one child, got {count}",
                                     path=list(path))
                for k in range(count):
                    queue.append((path + (k,), height - 1, vid))
        self.child_ids = [tuple(pending_children[v]) for v in range(len(self.heights))]
        self._spine = {n: self._by_path[(0,) * (depth - n)] for n in range(-depth, depth + 1)}
        logger.debug(f"built tree of depth {depth} with {len(self.heights)} vertices")

    @property
    def size(self) -> int:
        return len(self.heights)

    def vertices(self) -> range:
        return range(len(self.heights))

    def vertex(self, v: int) -> TreeVertex:
        self._check(v)
        return TreeVertex(v, self.heights[v], self.parents[v], self.child_ids[v], self.paths[v])

    def height(self, v: int) -> int:
        return self.heights[v]

    def children(self, v: int) -> Tuple[int, ...]:
        return self.child_ids[v]

    def path(self, v: int) -> Path:
        return self.paths[v]

    def find(self, path: Iterable[int]) -> int:
        path = tuple(path)
        if path not in self._by_path:
            raise InputError(f"No vertex with path {list(path)}")
        return self._by_path[path]

    def spine(self, n: int) -> int:
        """The spine vertex x_n"""
        if n not in self._spine:
            raise InputError(f"Spine index {n} outside [-{self.depth}, {self.depth}]")
        return self._spine[n]

    def ascend(self, v: int) -> int:
        """The unique vertex above v"""
        self._check(v)
        parent = self.parents[v]
        if parent is None:
            raise BoundaryError(f"Vertex {v} is the top of the truncation", vertex=v)
        return parent

    def ascend_times(self, v: int, steps: int) -> int:
        for _ in range(steps):
            v = self.ascend(v)
        return v

    def descend(self, v: int, index: int = 0) -> int:
        children = self.child_ids[v]
        if not 0 <= index < len(children):
            raise BoundaryError(f"Vertex {v} has no child {index}", vertex=v, index=index)
        return children[index]

    def is_below(self, u: int, v: int) -> bool:
        """True iff u lies in the subtree rooted at v (u == v included)"""
        pv = self.paths[v]
        return self.paths[u][:len(pv)] == pv

    def distance(self, u: int, v: int) -> int:
        pu = self.paths[u]
        pv = self.paths[v]
        common = 0
        for a, b in zip(pu, pv):
            if a != b:
                break
            common += 1
        return len(pu) + len(pv) - 2 * common

    def at_height(self, height: int) -> List[int]:
        return list(self._by_height.get(height, []))

    def descendants_at(self, u: int, height: int) -> List[int]:
        """Vertices below u at the given height, in id order"""
        frontier = [u]
        for _ in range(self.heights[u] - height):
            frontier = [c for w in frontier for c in self.child_ids[w]]
        return frontier if height <= self.heights[u] else []

    def subtree(self, u: int, min_height: int) -> List[int]:
        """Vertices below u with height >= min_height"""
        result = []
        frontier = [u]
        height = self.heights[u]
        while frontier and height >= min_height:
            result.extend(frontier)
            frontier = [c for w in frontier for c in self.child_ids[w]]
            height -= 1
        return sorted(result)

    def _check_stage(self, n: int, low: int = 0) -> None:
        if not low <= n <= self.depth:
            raise InputError(f"Stage {n} outside [{low}, {self.depth}]", stage=n)

    def c_set(self, n: int) -> List[int]:
        """C_n: vertices below x_n with height >= -n"""
        self._check_stage(n)
        return self.subtree(self.spine(n), -n)

    def interior(self, n: int) -> List[int]:
        """Vertices strictly below x_n with height > -n"""
        self._check_stage(n)
        return [v for v in self.subtree(self.spine(n), -n + 1) if v != self.spine(n)]

    def ec_set(self, n: int) -> List[int]:
        """EC_n: vertices of C_n at height -n"""
        self._check_stage(n, low=1)
        return self.descendants_at(self.spine(n), -n)

    def edges(self) -> List[int]:
        """Edges, each named by its lower endpoint"""
        return [v for v in self.vertices() if self.parents[v] is not None]

    def edge_endpoints(self, e: int) -> Tuple[int, int]:
        """(bottom, top) of the edge named by its lower endpoint"""
        top = self.parents[e]
        if top is None:
            raise InputError(f"Vertex {e} does not name an edge")
        return e, top

    def incident_edges(self, v: int) -> List[int]:
        edges = list(self.child_ids[v])
        if self.parents[v] is not None:
            edges.append(v)
        return sorted(edges)

    def has_full_valence(self, v: int) -> bool:
        """True iff v is neither at the top nor on the bottom frontier"""
        return -self.depth < self.heights[v] < self.depth

    def to_json(self) -> str:
        data = {
            "q": self.q,
            "N": self.depth,
            "vertices": [self.vertex(v).to_dict() for v in self.vertices()],
            "spine": [self.spine(n) for n in range(-self.depth, self.depth + 1)],
        }
        return json.dumps(data)

    @classmethod
    def from_json(cls, text: str) -> "TruncatedTree":
        """Rebuild a tree from its JSON form; child counts are read back from the vertex list"""
        try:
            data = json.loads(text)
            depth = data["N"]
            q = data.get("q")
            counts = {}
            records = data["vertices"]
            by_id = {r["id"]: r for r in records}
            for record in records:
                counts[record["id"]] = len(record["children"])
        except (ValueError, KeyError, TypeError) as e:
            raise InputError(f"Malformed tree JSON: {str(e)}")

        id_paths: Dict[int, Path] = {0: ()}
        for record in sorted(records, key=lambda r: r["id"]):
            path = id_paths[record["id"]]
            for k, child in enumerate(record["children"]):
                id_paths[child] = path + (k,)
        lookup = {path: counts[vid] for vid, path in id_paths.items()}
        tree = cls(depth, lambda height, path: lookup.get(path, 0), q=q)
        if [tree.heights[v] for v in tree.vertices()] != [by_id[v]["h"] for v in sorted(by_id)]:
            raise InputError("Tree JSON heights are inconsistent with breadth-first numbering")
        return tree

    def _check(self, v: int) -> None:
        if not 0 <= v < len(self.heights):
            raise InputError(f"Unknown vertex {v}", vertex=v)

    def __repr__(self) -> str:
        return f"TruncatedTree(N={self.depth}, q={self.q}, vertices={self.size})"


def build_regular(q: int, depth: int) -> TruncatedTree:
    """Truncation of the (q+1)-regular tree"""
    if not isinstance(q, int) or q < 2:
        raise InputError(f"Regular trees need q >= 2, got {q}", q=q)
    return TruncatedTree(depth, lambda height, path: q, q=q)


def build_explicit(depth: int, child_count: Callable[[int, Path], int]) -> TruncatedTree:
    """Truncation of a locally finite tree with per-vertex child counts"""
    return TruncatedTree(depth, child_count)

"""
Ends and Busemann functions for treecoh

An end is given by an anchor vertex and a descent rule. The distinguished
end (ascending along the spine) has the height function as its Busemann
function; descending ends follow an explicit branch of child indices and
then keep taking child 0.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

from treegeo.tree import TruncatedTree
from utils.errors import DeepenTruncationError, InputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RayEnd:
    """A geodesic ray from anchor, ascending or descending by branch"""

    anchor: int
    ascending: bool = False
    branch: Tuple[int, ...] = field(default_factory=tuple)

    def step_index(self, k: int) -> int:
        """Child index taken at step k of a descending ray"""
        return self.branch[k] if k < len(self.branch) else 0

    def validate(self, tree: TruncatedTree) -> None:
        """Check the ray is realizable inside the truncation"""
        tree.vertex(self.anchor)
        if self.ascending:
            if self.branch:
                raise InputError("An ascending end takes no branch")
            return
        available = tree.height(self.anchor) + tree.depth
        if len(self.branch) > available:
            raise DeepenTruncationError(
                f"Branch of length {len(self.branch)} leaves the truncation below the anchor",
                required=len(self.branch) - tree.height(self.anchor),
                available=tree.depth,
            )
        v = self.anchor
        for k, index in enumerate(self.branch):
            if not 0 <= index < len(tree.children(v)):
                raise InputError(f"Branch index {index} at step {k} is not a child", step=k)
            v = tree.children(v)[index]

    def ray(self, tree: TruncatedTree) -> List[int]:
        """Vertices of the ray inside the truncation, starting at the anchor"""
        self.validate(tree)
        vertices = [self.anchor]
        v = self.anchor
        if self.ascending:
            while tree.parents[v] is not None:
                v = tree.parents[v]
                vertices.append(v)
            return vertices
        k = 0
        while tree.children(v):
            v = tree.children(v)[self.step_index(k)]
            vertices.append(v)
            k += 1
        return vertices

    def to_dict(self) -> Dict[str, Any]:
        return {"anchor": self.anchor, "ascending": self.ascending, "branch": list(self.branch)}


def distinguished_end(tree: TruncatedTree, anchor_height: int = 0) -> RayEnd:
    """The end xi of the spine, anchored at x_{anchor_height}"""
    return RayEnd(tree.spine(anchor_height), ascending=True)


def busemann_value(tree: TruncatedTree, v: int, end: RayEnd) -> int:
    """b(v) = lim_t (t - d(v, ray(t))), normalized so b(anchor) = 0

    Args:
        tree: Truncated tree
        v: Vertex
        end: Ray end

    Returns:
        Exact integer Busemann value
    """
    end.validate(tree)
    return _busemann(tree, v, end)


def _busemann(tree: TruncatedTree, v: int, end: RayEnd) -> int:
    anchor = end.anchor
    if end.ascending:
        return tree.height(v) - tree.height(anchor)
    if not tree.is_below(v, anchor):
        return -tree.distance(v, anchor)
    tail = tree.path(v)[len(tree.path(anchor)):]
    confluence = 0
    for k, index in enumerate(tail):
        if index != end.step_index(k):
            break
        confluence += 1
    return 2 * confluence - tree.height(anchor) + tree.height(v)


def busemann_table(tree: TruncatedTree, end: RayEnd) -> List[int]:
    """Busemann values of every vertex, indexed by vertex id"""
    end.validate(tree)
    return [_busemann(tree, v, end) for v in tree.vertices()]

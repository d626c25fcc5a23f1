"""
Orbits of the lamplighter group on the slabs beta^{-1}([a, b])

On a level j = h(u) + h(v) the labels of u cover the lamp positions
p >= h(u) and the labels of v cover p <= h(u) - j - 1. For j >= 0 the two
ranges are disjoint and the group moves any pair to any other, so the level
is a single orbit. For j < 0 they overlap on |j| positions and the
differences a_p - b_{-p-1} there are invariant, giving q^|j| orbits.
"""

import logging
import random
from typing import Any, Dict, List, Optional, Sequence, Tuple

from dlgeom.lamplighter import LampElement, LamplighterCoding, VertexPair
from utils.errors import DeepenTruncationError, InputError

logger = logging.getLogger(__name__)


def orbit_invariant(q: int, pair: VertexPair) -> Tuple[int, ...]:
    """Lamp differences on the overlap, read from h(u) upward"""
    u, v = pair
    j = u.height + v.height
    if j >= 0:
        return ()
    return tuple((u.value(u.height + t) - v.value(-(u.height + t) - 1)) % q for t in range(-j))


def expected_orbits(q: int, level: int) -> int:
    return 1 if level >= 0 else q ** (-level)


def level_pairs(coding: LamplighterCoding, level: int) -> List[VertexPair]:
    budget = coding.budget
    pairs = []
    for h in range(max(-budget, level - budget), min(budget, level + budget) + 1):
        lower = coding.coded.at_height(level - h)
        for u in coding.coded.at_height(h):
            pairs.extend((u, v) for v in lower)
    return pairs


def element_between(coding: LamplighterCoding, x: VertexPair, y: VertexPair) -> Optional[LampElement]:
    """The element sending x to y on one level, or None when the invariants differ"""
    (u, v), (u2, v2) = x, y
    if u.height + v.height != u2.height + v2.height:
        return None
    if orbit_invariant(coding.q, x) != orbit_invariant(coding.q, y):
        return None
    q = coding.q
    k = u2.height - u.height
    phi: Dict[int, int] = {}
    for p in range(u2.height, u2.budget):
        phi[p] = (u2.value(p) - u.value(p - k)) % q
    for j in range(v2.height, v2.budget):
        phi[-j - 1] = (v2.value(j) - v.value(j + k)) % q
    return LampElement.make(q, {p: x for p, x in phi.items() if -coding.budget <= p < coding.budget}, k)


def slab_cocompactness(q: int, levels: Sequence[int], budget: int, sample_limit: int = 200,
                       seed: int = 0) -> Dict[str, Any]:
    """Count lamplighter orbits on the given beta levels of the coded product

    Args:
        q: Alphabet size
        levels: Integer levels of beta making up the slab
        budget: Label budget of both coded trees
        sample_limit: Pairs per level joined to a representative by an explicit element
        seed: Seed for the sampled pairs

    Returns:
        Per-level orbit counts with the expected values and the total
    """
    levels = sorted(set(levels))
    for level in levels:
        if not -2 * budget <= level <= 2 * budget:
            raise InputError(f"Level {level} outside [-{2 * budget}, {2 * budget}]", level=level)
    coding = LamplighterCoding(q, budget)
    rng = random.Random(seed)
    per_level = []
    total = 0
    passed = True
    for level in levels:
        pairs = level_pairs(coding, level)
        classes: Dict[Tuple[int, ...], VertexPair] = {}
        for pair in pairs:
            classes.setdefault(orbit_invariant(q, pair), pair)
        witnessed, skipped, mismatched = _witness(coding, pairs, classes, rng, sample_limit)
        expected = expected_orbits(q, level)
        ok = len(classes) == expected and not mismatched
        passed = passed and ok
        total += len(classes)
        per_level.append({"level": level, "vertices": len(pairs), "orbits": len(classes),
                          "expected": expected, "witnessed": witnessed, "skipped": skipped,
                          "passed": ok})
    if not passed:
        logger.error(f"slab orbit count differs from the expected value on levels {levels}")
    return {"q": q, "budget": budget, "levels": levels, "passed": passed, "orbits": total,
            "per_level": per_level}


def _witness(coding: LamplighterCoding, pairs: List[VertexPair], classes: Dict[Tuple[int, ...], VertexPair],
             rng: random.Random, limit: int) -> Tuple[int, int, int]:
    """Join sampled pairs to their class representative; returns (witnessed, skipped, mismatched)"""
    sample = pairs if len(pairs) <= limit else rng.sample(pairs, limit)
    witnessed = skipped = mismatched = 0
    for pair in sample:
        representative = classes[orbit_invariant(coding.q, pair)]
        element = element_between(coding, representative, pair)
        if element is None:
            mismatched += 1
            continue
        try:
            image = coding.act(element, representative)
        except DeepenTruncationError:
            skipped += 1
            continue
        if image == pair and orbit_invariant(coding.q, image) == orbit_invariant(coding.q, representative):
            witnessed += 1
        else:
            mismatched += 1
    return witnessed, skipped, mismatched

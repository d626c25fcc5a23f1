"""
The lamplighter group F_q wr Z acting on pairs of coded trees

A state (f, s) is a finitely supported lamp configuration f: Z -> F_q and a
lighter position s. It corresponds to the Diestel-Leader vertex
u = (s, f restricted to [s, oo)) and v = (-s, p -> f(-p - 1) on [-s, oo)).
Group elements multiply by (phi, k)(psi, l) = (phi + tau_k psi, k + l) with
(tau_k psi)(p) = psi(p - k), and act on states by left multiplication.
"""

import logging
import random
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, Tuple

from dlgeom.coding import CodedTree, DLVertex
from utils.errors import DeepenTruncationError, InputError

logger = logging.getLogger(__name__)

VertexPair = Tuple[DLVertex, DLVertex]


def _freeze(lamps: Mapping[int, int], q: int) -> Tuple[Tuple[int, int], ...]:
    return tuple(sorted((int(p), int(x) % q) for p, x in lamps.items() if int(x) % q))


@dataclass(frozen=True)
class LampState:
    q: int
    lamps: Tuple[Tuple[int, int], ...] = field(default_factory=tuple)
    position: int = 0

    @classmethod
    def make(cls, q: int, lamps: Mapping[int, int], position: int) -> "LampState":
        return cls(q, _freeze(lamps, q), position)

    @property
    def f(self) -> Dict[int, int]:
        return dict(self.lamps)

    @property
    def support(self) -> List[int]:
        return [p for p, _ in self.lamps]


@dataclass(frozen=True)
class LampElement:
    """Group element (phi, k)"""

    q: int
    lamps: Tuple[Tuple[int, int], ...] = field(default_factory=tuple)
    shift: int = 0

    @classmethod
    def make(cls, q: int, lamps: Mapping[int, int], shift: int = 0) -> "LampElement":
        if q < 2:
            raise InputError(f"The lamp group needs q >= 2, got {q}")
        return cls(q, _freeze(lamps, q), shift)

    @classmethod
    def identity(cls, q: int) -> "LampElement":
        return cls(q)

    @property
    def phi(self) -> Dict[int, int]:
        return dict(self.lamps)

    def is_identity(self) -> bool:
        return not self.lamps and self.shift == 0

    def __mul__(self, other: "LampElement") -> "LampElement":
        if other.q != self.q:
            raise InputError("Cannot multiply elements over different lamp groups")
        lamps = self.phi
        for p, x in other.lamps:
            lamps[p + self.shift] = lamps.get(p + self.shift, 0) + x
        return LampElement.make(self.q, lamps, self.shift + other.shift)

    def inverse(self) -> "LampElement":
        return LampElement.make(self.q, {p - self.shift: -x for p, x in self.lamps}, -self.shift)

    def act_state(self, state: LampState) -> LampState:
        lamps = self.phi
        for p, x in state.lamps:
            lamps[p + self.shift] = lamps.get(p + self.shift, 0) + x
        return LampState.make(self.q, lamps, state.position + self.shift)

    def to_dict(self) -> Dict[str, Any]:
        return {"lamps": {str(p): x for p, x in self.lamps}, "shift": self.shift}


class LamplighterCoding:
    """State <-> vertex-pair translation with a label budget"""

    def __init__(self, q: int, budget: int):
        self.coded = CodedTree(q, budget)
        self.q = q
        self.budget = budget

    def check_state(self, state: LampState) -> None:
        budget = self.budget
        if abs(state.position) > budget:
            raise DeepenTruncationError(f"Lighter at {state.position} outside the budget {budget}",
                                        required=abs(state.position), available=budget)
        for p in state.support:
            if not -budget <= p < budget:
                raise DeepenTruncationError(f"Lamp at {p} outside [-{budget}, {budget})",
                                            required=max(p + 1, -p), available=budget)

    def to_pair(self, state: LampState) -> VertexPair:
        self.check_state(state)
        f = state.f
        s = state.position
        u = self.coded.make(s, {p: x for p, x in f.items() if p >= s})
        v = self.coded.make(-s, {-p - 1: x for p, x in f.items() if p < s})
        return u, v

    def to_state(self, pair: VertexPair) -> LampState:
        u, v = pair
        if u.height + v.height != 0:
            raise InputError(f"Pair at heights {u.height}, {v.height} is not on the zero horosphere")
        lamps = {}
        for j, x in enumerate(u.label):
            lamps[u.height + j] = x
        for j, x in enumerate(v.label):
            lamps[-(v.height + j) - 1] = x
        return LampState.make(self.q, lamps, u.height)

    def act(self, element: LampElement, pair: VertexPair) -> VertexPair:
        """Action on any pair of coded vertices, at any level of beta

        u' has height h(u) + k with a'_p = phi(p) + a_{p-k}; v' has height
        h(v) - k with b'_j = phi(-j - 1) + b_{j+k}.
        """
        if element.q != self.q:
            raise InputError("Element and coding use different alphabets")
        u, v = pair
        k = element.shift
        phi = element.phi
        q = self.q
        hu = u.height + k
        hv = v.height - k
        self.coded.check_height(hu)
        self.coded.check_height(hv)
        a = {p: (phi.get(p, 0) + u.value(p - k)) % q for p in range(hu, self.budget)}
        b = {j: (phi.get(-j - 1, 0) + v.value(j + k)) % q for j in range(hv, self.budget)}
        self._check_lamps(element, u, v)
        return DLVertex(hu, tuple(a[p] for p in range(hu, self.budget))), \
            DLVertex(hv, tuple(b[j] for j in range(hv, self.budget)))

    def _check_lamps(self, element: LampElement, u: DLVertex, v: DLVertex) -> None:
        k = element.shift
        for p in range(self.budget - k, self.budget):
            if p >= u.height and u.value(p):
                raise DeepenTruncationError(f"Shift by {k} pushes lamp {p} past the budget",
                                            required=p + k + 1, available=self.budget)
        for j in range(self.budget + k, self.budget):
            if j >= v.height and v.value(j):
                raise DeepenTruncationError(f"Shift by {k} pushes lamp {-j - 1} past the budget",
                                            required=j - k + 1, available=self.budget)
        for p, _ in element.lamps:
            if not -self.budget <= p < self.budget:
                raise DeepenTruncationError(f"Lamp at {p} outside [-{self.budget}, {self.budget})",
                                            required=max(p + 1, -p), available=self.budget)


def lamplighter_act(q: int, budget: int, lamps: Mapping[int, int], shift: int,
                    pair: VertexPair) -> VertexPair:
    """Apply (phi, k) to a vertex pair of the coded product"""
    return LamplighterCoding(q, budget).act(LampElement.make(q, lamps, shift), pair)


def random_state(rng: random.Random, q: int, budget: int) -> LampState:
    position = rng.randint(-budget, budget)
    lamps = {p: rng.randrange(q) for p in range(-budget, budget)}
    return LampState.make(q, lamps, position)


def transitivity_sample(q: int, budget: int, count: int = 1000, seed: int = 0) -> Dict[str, Any]:
    """Sampled check that the action on the zero horosphere is simply transitive

    For each sampled (x, y) the element g = y x^-1 must send x to y and must
    be the only one doing so: g x = x forces g to be the identity.
    """
    coding = LamplighterCoding(q, budget)
    rng = random.Random(seed)
    failures = []
    paired = 0
    for _ in range(count):
        x = random_state(rng, q, budget)
        y = random_state(rng, q, budget)
        g = LampElement(q, y.lamps, y.position) * LampElement(q, x.lamps, x.position).inverse()
        moved = g.act_state(x)
        if moved != y:
            failures.append({"kind": "transitive", "element": g.to_dict()})
            continue
        if (x == y) != g.is_identity():
            failures.append({"kind": "free", "element": g.to_dict()})
        try:
            image = coding.act(g, coding.to_pair(x))
        except DeepenTruncationError:
            continue
        paired += 1
        if image != coding.to_pair(y):
            failures.append({"kind": "coding", "element": g.to_dict()})
    if failures:
        logger.error(f"lamplighter transitivity failed in {len(failures)} of {count} samples")
    return {"q": q, "budget": budget, "sampled": count, "paired": paired, "passed": not failures,
            "failures": failures[:5]}


def beta_preserved(coding: LamplighterCoding, elements: Iterable[LampElement],
                   pairs: Iterable[VertexPair]) -> bool:
    """Every element keeps h(u) + h(v) on every pair it can move"""
    pairs = list(pairs)
    for element in elements:
        for u, v in pairs:
            try:
                x, y = coding.act(element, (u, v))
            except DeepenTruncationError:
                continue
            if x.height + y.height != u.height + v.height:
                return False
    return True

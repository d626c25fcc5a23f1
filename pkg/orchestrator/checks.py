"""
Verification checks for treecoh

Each check takes the shared SuiteContext and returns a CheckOutcome with
its parameters, a verdict and the supporting data. Checks that share
cached cohomology (the corner evaluation and the horosphere submodules)
declare dependencies so that the cache is filled once.
"""

import itertools
import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Any, Callable, Dict, List, Optional, Tuple

from cohomo.assembly import hcu_assemble, sublevel_tower
from cohomo.corner import CornerCheck, corner_crosscheck
from cohomo.pairs import ExhaustionTower, corner_block_cohomology, eventual_death_check, persistence_check
from cohomo.tower import TowerWindow
from dlgeom.graph import action_check, dl_isomorphism
from dlgeom.lamplighter import transitivity_sample
from dlgeom.slabs import slab_cocompactness
from exactalg.descriptors import ModuleDescriptor
from exactalg.oracle import snf_oracle_suite
from exactalg.rings import INTEGERS, PRIME_FIELD_KIND, CoefficientRing
from exactalg.sparse import SparseIntMatrix
from horosys.division import division_spanning_check
from horosys.fiber_kernel import fiber_kernel_check
from horosys.sigma import enumerate_families, sample_families, zero_chain_suite
from horosys.ysystem import YSystem, window_lim_check
from orchestrator.models import FAIL, NOT_APPLICABLE, PASS, Config
from prodcomplex.complex import ProductComplex
from prodcomplex.fibers import dichotomy, fiber_cover, fiber_identity, verify_cover
from prodcomplex.horoballs import HoroballSpec, check_disjointness
from prodcomplex.regions import MultiComplement, Sublevel, Superlevel, corner_block_depth

logger = logging.getLogger(__name__)


@dataclass
class CheckOutcome:
    result: str
    params: Dict[str, Any] = field(default_factory=dict)
    data: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def verdict(cls, passed: bool, params: Dict[str, Any], data: Dict[str, Any]) -> "CheckOutcome":
        return cls(PASS if passed else FAIL, params, data)

    @classmethod
    def not_applicable(cls, params: Dict[str, Any], reason: str,
                       data: Optional[Dict[str, Any]] = None) -> "CheckOutcome":
        logger.warning(f"check not applicable: {reason}")
        return cls(NOT_APPLICABLE, params, {"reason": reason, **(data or {})})


class SuiteContext:
    """Objects shared by the checks of one run, built on first use"""

    def __init__(self, config: Config):
        self.config = config
        self._lock = threading.RLock()
        self._complex: Optional[ProductComplex] = None
        self._ring: Optional[CoefficientRing] = None
        self._specs: Optional[List[HoroballSpec]] = None
        self._corner_check: Optional[CornerCheck] = None
        self._system: Optional[YSystem] = None
        self._deepened: Dict[int, ProductComplex] = {}

    @property
    def complex(self) -> ProductComplex:
        with self._lock:
            if self._complex is None:
                self._complex = self.config.build_complex()
            return self._complex

    @property
    def ring(self) -> CoefficientRing:
        with self._lock:
            if self._ring is None:
                self._ring = self.config.coefficient_ring()
            return self._ring

    @property
    def specs(self) -> List[HoroballSpec]:
        with self._lock:
            if self._specs is None:
                self._specs = self.config.horoball_specs(self.complex)
            return self._specs

    @property
    def corner_check(self) -> CornerCheck:
        with self._lock:
            if self._corner_check is None:
                self._corner_check = CornerCheck(self.complex, self.ring)
            return self._corner_check

    @property
    def system(self) -> YSystem:
        with self._lock:
            if self._system is None:
                self._system = YSystem(self.complex, ring=self.ring, check=self.corner_check)
            return self._system

    def deepened(self, depth: int) -> ProductComplex:
        """The configured trees truncated at a larger depth"""
        if depth <= self.config.depth:
            return self.complex
        with self._lock:
            if depth not in self._deepened:
                self._deepened[depth] = self.config.build_complex(depth)
            return self._deepened[depth]

    def base_params(self) -> Dict[str, Any]:
        config = self.config
        return {"d": config.d, "q": config.qs, "depth": config.depth, "weights": config.weights,
                "ring": self.ring.name}


def snf_oracle(context: SuiteContext) -> CheckOutcome:
    config = context.config
    params = {"matrices": config.oracle_matrices, "max_size": config.oracle_max_size, "seed": config.seed}
    report = snf_oracle_suite(config.oracle_matrices, config.oracle_max_size, config.seed)
    return CheckOutcome.verdict(report["passed"], params, report)


def _death_table(tower: ExhaustionTower, degrees: List[int], window: int, persist: Tuple[int, ...] = ()):
    reports = []
    for k in degrees:
        if k in persist:
            reports.append(persistence_check(tower, k, window))
        else:
            reports.append(eventual_death_check(tower, k, window))
    return all(r.passed for r in reports), [r.to_dict() for r in reports]


def horoball_vanishing(context: SuiteContext) -> CheckOutcome:
    """Classes of every superlevel set die, and every corner block is acyclic

    Corner blocks reaching below the truncation are computed on the same
    trees built deep enough to hold them, up to corner_depth when it is set.
    Blocks beyond that cap are listed as unreached and corner_levels records
    the blocks actually checked for each radius.
    """
    config = context.config
    complex_ = context.complex
    window = config.death_window
    cap = config.corner_depth
    passed = True
    towers = []
    for r in config.radius_values:
        tower = ExhaustionTower(complex_, Superlevel(r), context.ring)
        ok, deaths = _death_table(tower, list(range(complex_.d + 1)), window)
        passed = passed and ok
        towers.append({"r": str(r), "passed": ok, "death": deaths})

    blocks = []
    unreached = []
    levels: Dict[str, List[int]] = {}
    for r in config.radius_values:
        levels[str(r)] = []
        for m in range(complex_.depth + 1):
            depth = max(complex_.depth, corner_block_depth(complex_.weights, r, m))
            if cap is not None and depth > max(cap, complex_.depth):
                unreached.append({"r": str(r), "m": m, "depth": depth})
                continue
            descriptor = corner_block_cohomology(context.deepened(depth), r, m, context.ring)
            passed = passed and descriptor.is_zero()
            levels[str(r)].append(m)
            blocks.append({"r": str(r), "m": m, "depth": depth, "zero": descriptor.is_zero(),
                           "cohomology": descriptor.to_dict()})
    if unreached:
        logger.warning(f"{len(unreached)} corner blocks need more than corner_depth={cap} and were not checked")
    params = {**context.base_params(), "radii": config.radii, "death_window": window,
              "block_depth": config.corner_block_depth(), "corner_depth": cap, "corner_levels": levels}
    return CheckOutcome.verdict(passed, params, {"towers": towers, "corner_blocks": blocks,
                                                 "unreached_blocks": unreached})


def sublevel_vanishing(context: SuiteContext) -> CheckOutcome:
    """Below degree d the sublevel classes die; degree d persists"""
    config = context.config
    complex_ = context.complex
    window = config.death_window
    d = complex_.d
    params = {**context.base_params(), "radii": config.radii, "death_window": window}
    passed = True
    towers = []
    for r in config.radius_values:
        tower = ExhaustionTower(complex_, Sublevel(r), context.ring)
        ok, deaths = _death_table(tower, list(range(d + 1)), window, persist=(d,))
        passed = passed and ok
        towers.append({"r": str(r), "passed": ok, "death": deaths})
    return CheckOutcome.verdict(passed, params, {"towers": towers})


def multi_horoball_complement(context: SuiteContext) -> CheckOutcome:
    config = context.config
    complex_ = context.complex
    params = {**context.base_params(), "margin": config.margin, "death_window": config.death_window,
              "horoballs": [h.model_dump(mode="json") for h in config.horoballs]}
    if not config.horoballs:
        return CheckOutcome.not_applicable(params, "no horoballs configured")
    specs = context.specs
    data: Dict[str, Any] = {}
    passed = True
    if len(specs) >= 2:
        disjoint = check_disjointness(complex_, specs, config.margin)
        data["disjointness"] = disjoint.to_dict()
        passed = disjoint.passed
    tower = ExhaustionTower(complex_, MultiComplement(tuple(specs)), context.ring)
    d = complex_.d
    ok, deaths = _death_table(tower, list(range(d + 1)), config.death_window, persist=(d,))
    data["death"] = deaths
    return CheckOutcome.verdict(passed and ok, params, data)


def corner_model(context: SuiteContext) -> CheckOutcome:
    config = context.config
    params = {**context.base_params(), "stages": config.stages}
    stages = [n for n in config.stages if n + 1 <= context.complex.depth]
    if not stages:
        return CheckOutcome.not_applicable(params, "no stage n with n + 1 <= depth")
    reports = [corner_crosscheck(context.complex, n, context.ring, check=context.corner_check)
               for n in stages]
    return CheckOutcome.verdict(all(r["passed"] for r in reports), params, {"stages": reports})


def _window_heights(weight_sum: Fraction, n: int, top: int) -> List[Fraction]:
    """Heights m with weight_sum * (n + 1) < m <= weight_sum * top: the first integer and the top"""
    bound = weight_sum * (n + 1)
    ceiling = weight_sum * top
    return sorted({m for m in (Fraction(floor(bound) + 1), ceiling) if bound < m <= ceiling})


def horosphere_tower(context: SuiteContext) -> CheckOutcome:
    """Nesting, agreement of both derivations, closed-form ranks and the window intersections"""
    config = context.config
    complex_ = context.complex
    system = context.system
    top = system.top
    levels = list(range(top + 1))
    params = {**context.base_params(), "levels": levels, "stages": config.stages}

    nesting = system.nesting(levels)
    agreement = [system.agreement(n) for n in levels]
    compare_ranks = context.ring.kind != PRIME_FIELD_KIND
    ranks = []
    for n in levels:
        oracle = system.rank_oracle(n) if compare_ranks else None
        ranks.append({"n": n, "rank": system.s(n).rank, "oracle": oracle})
    ranks_ok = all(r["oracle"] is None or r["oracle"] == r["rank"] for r in ranks)

    windows = []
    for n in range(top):
        for m in _window_heights(complex_.weight_sum, n, top):
            windows.append(window_lim_check(complex_, n, m, top, context.ring))

    passed = (nesting["passed"] and all(a["passed"] for a in agreement) and ranks_ok
              and all(w["passed"] for w in windows))
    data = {"nesting": nesting, "agreement": agreement, "ranks": ranks, "windows": windows}
    return CheckOutcome.verdict(passed, params, data)


def zero_chain(context: SuiteContext) -> CheckOutcome:
    """Every sigma family yields the zero chain, exhaustively when the count allows"""
    config = context.config
    complex_ = context.complex
    params = {**context.base_params(), "max_families": config.max_families,
              "sample_size": config.sample_size, "seed": config.seed}
    passed = True
    per_stage = []
    # admissible heights lie in (weight_sum * (n + 1), weight_sum * (N - 1)]
    for n in range(max(0, complex_.depth - 2)):
        families = list(itertools.islice(enumerate_families(complex_, n), config.max_families + 1))
        mode = "exhaustive"
        if len(families) > config.max_families:
            families = sample_families(complex_, n, config.sample_size, config.seed)
            mode = "sampled"
        report = zero_chain_suite(complex_, families)
        passed = passed and report["passed"]
        per_stage.append({"n": n, "mode": mode, **report})
    return CheckOutcome.verdict(passed, params, {"stages": per_stage})


DIVISORS = (2, 3)


def purity_division(context: SuiteContext) -> CheckOutcome:
    system = context.system
    levels = list(range(system.top + 1))
    params = {**context.base_params(), "levels": levels, "divisors": list(DIVISORS)}
    purity = [{"m": m, "pure": system.purity(m)} for m in levels]
    divisions = []
    if context.ring.is_field:
        logger.warning(f"division witnesses are trivial over the field {context.ring.name}")
    else:
        divisions = [division_spanning_check(system, m, r) for r in DIVISORS for m in levels]
    passed = all(p["pure"] for p in purity) and all(x["passed"] for x in divisions)
    return CheckOutcome.verdict(passed, params, {"purity": purity, "division": divisions})


def fiber_machinery(context: SuiteContext) -> CheckOutcome:
    """Fiber cover, fiber identity, the dichotomy and the Cech kernel over every factor"""
    config = context.config
    complex_ = context.complex
    params = {**context.base_params(), "stages": config.stages,
              "horoballs": [h.model_dump(mode="json") for h in config.horoballs]}
    if complex_.d < 2:
        return CheckOutcome.not_applicable(params, "fiber covers need at least two factors")
    if not config.horoballs:
        return CheckOutcome.not_applicable(params, "no horoballs configured")
    specs = context.specs
    region = MultiComplement(tuple(specs))
    stages = [n for n in config.stages if n + 1 <= complex_.depth]
    passed = True
    factors = []
    for w in range(complex_.d):
        cover = fiber_cover(complex_, w, region)
        part = {
            "factor": w,
            "cover": verify_cover(cover),
            "identity": fiber_identity(cover),
            "dichotomy": dichotomy(complex_, w, specs),
            "kernel": [fiber_kernel_check(complex_, w, region, n, 1, context.ring,
                                          sample_limit=config.sample_size) for n in stages],
        }
        ok = (part["cover"]["passed"] and part["identity"]["passed"] and part["dichotomy"]["passed"]
              and all(k["passed"] for k in part["kernel"]))
        part["passed"] = ok
        passed = passed and ok
        factors.append(part)
    if passed and not any(k["applicable"] for part in factors for k in part["kernel"]):
        reason = "no stage carries fiber classes; use a stage n with n + 1 = depth"
        return CheckOutcome.not_applicable(params, reason, {"factors": factors})
    return CheckOutcome.verdict(passed, params, {"factors": factors})


def diestel_leader(context: SuiteContext) -> CheckOutcome:
    config = context.config
    q = config.qs[0]
    budget = config.dl_budget or config.depth
    params = {"q": q, "budget": budget, "samples": config.dl_samples, "slab_levels": config.slab_levels,
              "seed": config.seed}
    data = {
        "isomorphism": dl_isomorphism(q, budget),
        "transitivity": transitivity_sample(q, budget, config.dl_samples, config.seed),
        "action": action_check(q, budget, config.sample_size, config.seed),
        "slabs": slab_cocompactness(q, config.slab_levels, budget, seed=config.seed),
    }
    return CheckOutcome.verdict(all(part["passed"] for part in data.values()), params, data)


def _oracle_towers() -> Dict[str, Tuple[TowerWindow, Dict[str, Any], ModuleDescriptor]]:
    """Hand-computed towers: (window, expected lim-window, expected lim^1-window)"""
    identity = SparseIntMatrix.identity(2)
    two = SparseIntMatrix.from_dense([[2]])
    return {
        "identity": (TowerWindow.free([2, 2, 2], [identity, identity], INTEGERS),
                     {"image": {"free_rank": 2, "invariant_factors": []},
                      "cokernel": {"free_rank": 0, "invariant_factors": []}},
                     ModuleDescriptor.zero()),
        "doubling": (TowerWindow.free([1, 1, 1], [two, two], INTEGERS),
                     {"image": {"free_rank": 1, "invariant_factors": []},
                      "cokernel": {"free_rank": 0, "invariant_factors": [4]}},
                     ModuleDescriptor(0, (2, 2))),
    }


def hcu_assembly(context: SuiteContext) -> CheckOutcome:
    """Assemble the W-space tower and compare the hand-built towers with their known windows

    Degrees below d are the sublevel towers of classes surviving from stage
    N - death_window to stage N; they must vanish for the assembly to pass.
    """
    system = context.system
    d = context.complex.d
    top = system.top
    source = top - context.config.death_window
    levels = list(range(top + 1))
    params = {**context.base_params(), "levels": levels, "source_stage": source}
    windows = {d: system.w_space_tower(levels)}
    for k in range(d):
        windows[k] = sublevel_tower(context.complex, levels, k, source, top, context.ring)
    computed = hcu_assemble(windows, d)
    if not computed["inputs_concentrated"]:
        logger.error(f"sublevel towers below degree {d} do not vanish from stage {source}")
    oracles = []
    for name, (window, lim, lim1) in _oracle_towers().items():
        got_lim = window.lim_window()
        got_lim1 = window.lim1_window()
        oracles.append({"tower": name, "lim": got_lim, "lim1": got_lim1.to_dict(),
                        "passed": got_lim == lim and got_lim1 == lim1})
    passed = computed["passed"] and all(o["passed"] for o in oracles)
    return CheckOutcome.verdict(passed, params, {"computed": computed, "oracles": oracles})


@dataclass(frozen=True)
class CheckDefinition:
    id: str
    run: Callable[[SuiteContext], CheckOutcome]
    depends_on: Tuple[str, ...] = ()


CHECKS: Dict[str, CheckDefinition] = {
    definition.id: definition
    for definition in (
        CheckDefinition("snf_oracle", snf_oracle),
        CheckDefinition("horoball_vanishing", horoball_vanishing),
        CheckDefinition("sublevel_vanishing", sublevel_vanishing),
        CheckDefinition("multi_horoball_complement", multi_horoball_complement),
        CheckDefinition("corner_model", corner_model),
        CheckDefinition("horosphere_tower", horosphere_tower, ("corner_model",)),
        CheckDefinition("zero_chain", zero_chain),
        CheckDefinition("purity_division", purity_division, ("horosphere_tower",)),
        CheckDefinition("fiber_machinery", fiber_machinery),
        CheckDefinition("diestel_leader", diestel_leader),
        CheckDefinition("hcu_assembly", hcu_assembly, ("horosphere_tower",)),
    )
}

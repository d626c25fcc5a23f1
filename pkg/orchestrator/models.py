"""
Configuration and report models for treecoh

The run configuration is a single pydantic document. Rationals (weights,
horoball heights, margins, radii) may be given as ints or "a/b" strings and
are stored in canonical string form so that the configuration hash does
not depend on how a value was written.
"""

from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from exactalg.rings import CoefficientRing, parse_ring
from prodcomplex.complex import ProductComplex, as_fraction
from prodcomplex.horoballs import HoroballSpec
from prodcomplex.regions import corner_block_depth
from treegeo.ends import RayEnd
from treegeo.tree import TruncatedTree
from utils.errors import ConfigError

REPORT_VERSION = "1.0"

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not_applicable"

CHECK_IDS = (
    "corner_model",
    "diestel_leader",
    "fiber_machinery",
    "hcu_assembly",
    "horoball_vanishing",
    "horosphere_tower",
    "multi_horoball_complement",
    "purity_division",
    "snf_oracle",
    "sublevel_vanishing",
    "zero_chain",
)

Rational = Union[int, str]


def _canonical(value: Any, name: str) -> str:
    return str(as_fraction(value, name))


class EndConfig(BaseModel):
    """One end of a horoball: the spine vertex x_anchor_height and a descent rule"""

    model_config = ConfigDict(extra="forbid")

    anchor_height: int = 0
    ascending: bool = False
    branch: List[int] = Field(default_factory=list)

    def to_end(self, tree: TruncatedTree) -> RayEnd:
        return RayEnd(tree.spine(self.anchor_height), self.ascending, tuple(self.branch))


class HoroballConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    ends: List[EndConfig]
    r: Rational = "0"

    @field_validator("r")
    @classmethod
    def _height(cls, value: Rational) -> str:
        return _canonical(value, "horoball height")

    def to_spec(self, complex_: ProductComplex) -> HoroballSpec:
        if len(self.ends) != complex_.d:
            raise ConfigError(f"Horoball has {len(self.ends)} ends for {complex_.d} factors",
                              reason="horoball")
        ends = tuple(end.to_end(tree) for end, tree in zip(self.ends, complex_.factors))
        return HoroballSpec(ends, self.r)


class Config(BaseModel):
    """A verification run"""

    model_config = ConfigDict(extra="forbid")

    d: int = Field(2, ge=1)
    q: Union[int, List[int]] = 2
    depth: int = Field(2, ge=1)
    weights: Optional[List[Rational]] = None
    ring: str = "Z"
    p: Optional[int] = None
    horoballs: List[HoroballConfig] = Field(default_factory=list)
    margin: Rational = "2"
    death_window: int = Field(2, ge=1)
    stages: List[int] = Field(default_factory=lambda: [1])
    radii: List[Rational] = Field(default_factory=lambda: ["-1", "0", "1"])
    checks: List[str] = Field(default_factory=list)
    output: Optional[str] = None
    seed: int = 0
    threads: int = Field(1, ge=1)
    sample_size: int = Field(50, ge=1)
    max_families: int = Field(2000, ge=0)
    record_timing: bool = False
    oracle_matrices: int = Field(500, ge=0)
    oracle_max_size: int = Field(12, ge=1)
    dl_budget: Optional[int] = Field(None, ge=1)
    dl_samples: int = Field(10000, ge=0)
    slab_levels: List[int] = Field(default_factory=lambda: [0, 1, 2])
    corner_depth: Optional[int] = Field(None, ge=1)

    @field_validator("margin")
    @classmethod
    def _margin(cls, value: Rational) -> str:
        margin = as_fraction(value, "margin")
        if margin < 0:
            raise ValueError(f"margin must be nonnegative, got {margin}")
        return str(margin)

    @field_validator("radii")
    @classmethod
    def _radii(cls, values: List[Rational]) -> List[str]:
        return [_canonical(v, "radius") for v in values]

    @field_validator("stages")
    @classmethod
    def _stages(cls, values: List[int]) -> List[int]:
        if any(n < 0 for n in values):
            raise ValueError(f"stages must be nonnegative, got {values}")
        return sorted(set(values))

    @field_validator("checks")
    @classmethod
    def _checks(cls, values: List[str]) -> List[str]:
        unknown = [c for c in values if c not in CHECK_IDS]
        if unknown:
            raise ValueError(f"unknown checks {unknown}; known checks are {list(CHECK_IDS)}")
        return sorted(set(values))

    @model_validator(mode="after")
    def _factors(self) -> "Config":
        if isinstance(self.q, int):
            self.q = [self.q] * self.d
        if len(self.q) != self.d:
            raise ValueError(f"{len(self.q)} branching numbers for d={self.d}")
        if any(qi < 2 for qi in self.q):
            raise ValueError(f"branching numbers must be >= 2, got {self.q}")
        weights = self.weights if self.weights is not None else [1] * self.d
        if len(weights) != self.d:
            raise ValueError(f"{len(weights)} weights for d={self.d}")
        self.weights = [_canonical(w, "weight") for w in weights]
        if any(Fraction(w) <= 0 for w in self.weights):
            raise ValueError(f"weights must be positive, got {self.weights}")
        for index, horoball in enumerate(self.horoballs):
            if len(horoball.ends) != self.d:
                raise ValueError(f"horoball {index} has {len(horoball.ends)} ends for d={self.d}")
        parse_ring(self.ring, self.p)
        return self

    @property
    def qs(self) -> List[int]:
        return list(self.q) if isinstance(self.q, list) else [self.q] * self.d

    @property
    def weight_values(self) -> List[Fraction]:
        return [Fraction(w) for w in self.weights or [1] * self.d]

    @property
    def radius_values(self) -> List[Fraction]:
        return [Fraction(r) for r in self.radii]

    def coefficient_ring(self) -> CoefficientRing:
        return parse_ring(self.ring, self.p)

    def build_complex(self, depth: Optional[int] = None) -> ProductComplex:
        depth = self.depth if depth is None else depth
        return ProductComplex.regular(self.d, self.qs, depth, self.weight_values)

    def corner_block_depth(self) -> int:
        """Depth holding every corner block C(m), m <= depth, of every radius"""
        return max([self.depth] + [corner_block_depth(self.weight_values, r, m)
                                   for r in self.radius_values for m in range(self.depth + 1)])

    def horoball_specs(self, complex_: ProductComplex) -> List[HoroballSpec]:
        return [horoball.to_spec(complex_) for horoball in self.horoballs]

    def required_depth(self, check: str) -> int:
        """Smallest tree depth N at which a check can run

        Args:
            check: Check identifier

        Returns:
            Minimal depth
        """
        top_stage = max(self.stages, default=0)
        if check in ("snf_oracle", "diestel_leader"):
            return 0
        if check in ("horoball_vanishing", "sublevel_vanishing", "multi_horoball_complement"):
            return self.death_window
        if check in ("corner_model", "horosphere_tower", "fiber_machinery"):
            return top_stage + 1
        if check == "zero_chain":
            return 3
        if check == "purity_division":
            return 1
        if check == "hcu_assembly":
            return self.death_window + 1
        raise ConfigError(f"Unknown check {check}", reason="unknown_check", check=check)

    def validate_depths(self) -> None:
        """Raise ConfigError naming the first check the depth cannot serve"""
        for check in self.checks:
            required = self.required_depth(check)
            if required > self.depth:
                raise ConfigError(
                    f"Check {check} needs depth >= {required}, got depth {self.depth}",
                    reason="depth",
                    check=check,
                    required_depth=required,
                    depth=self.depth,
                )


class CheckRecord(BaseModel):
    id: str
    params: Dict[str, Any] = Field(default_factory=dict)
    result: str
    data: Dict[str, Any] = Field(default_factory=dict)
    ms: int = 0


class Report(BaseModel):
    """Per-check records, sorted by check id"""

    version: str = REPORT_VERSION
    config_hash: str
    records: List[CheckRecord] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(record.result != FAIL for record in self.records)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def summary(self) -> Dict[str, int]:
        counts = {PASS: 0, FAIL: 0, NOT_APPLICABLE: 0}
        for record in self.records:
            counts[record.result] = counts.get(record.result, 0) + 1
        return counts

    def record(self, check: str) -> Optional[CheckRecord]:
        return next((r for r in self.records if r.id == check), None)

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")

    @classmethod
    def from_records(cls, config_hash: str, records: Sequence[CheckRecord]) -> "Report":
        return cls(config_hash=config_hash, records=sorted(records, key=lambda r: r.id))

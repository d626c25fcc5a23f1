"""
Module descriptors for treecoh

Isomorphism types of finitely generated modules over the coefficient rings:
a free rank plus the invariant factors of the torsion part.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Tuple

from utils.errors import InputError


@dataclass(frozen=True)
class ModuleDescriptor:
    """R^free_rank + R/(t_1) + ... + R/(t_k) with t_1 | t_2 | ... | t_k"""

    free_rank: int = 0
    invariant_factors: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.free_rank < 0:
            raise InputError(f"Negative free rank {self.free_rank}")
        factors = tuple(sorted(int(t) for t in self.invariant_factors))
        for t in factors:
            if t <= 1:
                raise InputError(f"Invariant factor {t} must be > 1")
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise InputError(f"Invariant factors {factors} do not form a divisibility chain")
        object.__setattr__(self, "invariant_factors", factors)

    @classmethod
    def zero(cls) -> "ModuleDescriptor":
        return cls(0, ())

    @classmethod
    def from_divisors(cls, rank: int, divisors: Iterable[int]) -> "ModuleDescriptor":
        """Cokernel type of a map onto R^rank with the given (localized) divisors"""
        divisors = list(divisors)
        return cls(rank - len(divisors), tuple(d for d in divisors if d != 1))

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def is_free(self) -> bool:
        return not self.invariant_factors

    def to_dict(self) -> Dict[str, Any]:
        return {"free_rank": self.free_rank, "invariant_factors": list(self.invariant_factors)}

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("R" if self.free_rank == 1 else f"R^{self.free_rank}")
        parts.extend(f"R/{t}" for t in self.invariant_factors)
        return " + ".join(parts) if parts else "0"

"""
Coefficient rings for treecoh

The four principal ideal domains used throughout: the integers, the
rationals, prime fields and the localization Z[1/p]. Elements are plain
Python ints (Integers, IntegersAwayFrom, PrimeField reduced mod p) or
fractions.Fraction (Rationals).
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Tuple

from sympy import isprime

try:
    from sympy import igcdex
except ImportError:  # sympy >= 1.13 no longer re-exports igcdex at top level
    from sympy.core.intfunc import igcdex

from utils.errors import InputError

INTEGERS_KIND = "integers"
RATIONALS_KIND = "rationals"
PRIME_FIELD_KIND = "prime_field"
AWAY_FROM_KIND = "integers_away_from"

_KINDS = (INTEGERS_KIND, RATIONALS_KIND, PRIME_FIELD_KIND, AWAY_FROM_KIND)


@dataclass(frozen=True)
class CoefficientRing:
    """A coefficient ring R; p is required for prime fields and Z[1/p]"""

    kind: str
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise InputError(f"Unknown ring kind: {self.kind}", kind=self.kind)
        if self.kind in (PRIME_FIELD_KIND, AWAY_FROM_KIND):
            if self.p is None or not isinstance(self.p, int) or not isprime(self.p):
                raise InputError(f"Ring {self.kind} needs a prime p, got {self.p}", p=self.p)
        elif self.p is not None:
            raise InputError(f"Ring {self.kind} takes no p", p=self.p)

    @property
    def name(self) -> str:
        if self.kind == INTEGERS_KIND:
            return "Z"
        if self.kind == RATIONALS_KIND:
            return "Q"
        if self.kind == PRIME_FIELD_KIND:
            return f"F_{self.p}"
        return f"Z[1/{self.p}]"

    @property
    def is_field(self) -> bool:
        return self.kind in (RATIONALS_KIND, PRIME_FIELD_KIND)

    @property
    def zero(self) -> Any:
        return Fraction(0) if self.kind == RATIONALS_KIND else 0

    @property
    def one(self) -> Any:
        return Fraction(1) if self.kind == RATIONALS_KIND else 1

    @property
    def arithmetic(self) -> "CoefficientRing":
        """Ring in which matrix arithmetic is carried out

        Z[1/p] computes over Z and localizes divisors afterwards.
        """
        if self.kind == AWAY_FROM_KIND:
            return INTEGERS
        return self

    def coerce(self, value: Any) -> Any:
        """Convert an entry into the arithmetic ring

        Args:
            value: int or Fraction

        Returns:
            Canonical element
        """
        if isinstance(value, bool):
            raise InputError(f"Boolean is not a ring element: {value}")
        if self.kind == RATIONALS_KIND:
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            raise InputError(f"Not a rational: {value!r}")
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise InputError(f"Non-integral entry {value} over {self.name}")
            value = value.numerator
        if not isinstance(value, int):
            raise InputError(f"Not an integer: {value!r}")
        if self.kind == PRIME_FIELD_KIND:
            return value % self.p
        return value

    def reduce(self, value: Any) -> Any:
        if self.kind == PRIME_FIELD_KIND:
            return value % self.p
        return value

    def norm(self, value: Any) -> int:
        """Euclidean size used for pivot selection"""
        if not value:
            return 0
        if self.is_field:
            return 1
        return abs(value)

    def is_unit(self, value: Any) -> bool:
        if not value:
            return False
        if self.is_field:
            return True
        if self.kind == AWAY_FROM_KIND:
            return self.localize(value) == 1
        return abs(value) == 1

    def inverse(self, value: Any) -> Any:
        """Inverse of a unit of the arithmetic ring"""
        if self.kind == RATIONALS_KIND:
            return 1 / Fraction(value)
        if self.kind == PRIME_FIELD_KIND:
            return pow(value, -1, self.p)
        if abs(value) != 1:
            raise InputError(f"{value} is not a unit of Z")
        return value

    def divides(self, a: Any, b: Any) -> bool:
        """True iff a | b in the arithmetic ring"""
        if not a:
            return not b
        if self.is_field:
            return True
        return b % a == 0

    def quo(self, b: Any, a: Any) -> Any:
        """Exact quotient b / a, assuming a | b"""
        if self.kind == RATIONALS_KIND:
            return Fraction(b) / a
        if self.kind == PRIME_FIELD_KIND:
            return (b * pow(a, -1, self.p)) % self.p
        return b // a

    def gcdex(self, a: Any, b: Any) -> Tuple[Any, Any, Any]:
        """Return (s, t, g) with s*a + t*b = g a gcd of a and b"""
        if self.is_field:
            if a:
                return self.inverse(a), self.zero, self.one
            return self.zero, self.inverse(b), self.one
        s, t, g = igcdex(a, b)
        return int(s), int(t), int(g)

    def gcd(self, a: Any, b: Any) -> Any:
        return self.gcdex(a, b)[2]

    def canonical(self, value: Any) -> Any:
        """Associate representative: 1 for field units, |value| over Z"""
        if self.is_field:
            return 1 if value else 0
        if self.kind == AWAY_FROM_KIND:
            return self.localize(value)
        return abs(value)

    def localize(self, value: int) -> int:
        """Strip every power of p from a nonzero integer (absolute value)"""
        value = abs(value)
        if self.kind != AWAY_FROM_KIND or value == 0:
            return value
        while value % self.p == 0:
            value //= self.p
        return value

    def __str__(self) -> str:
        return self.name


INTEGERS = CoefficientRing(INTEGERS_KIND)
RATIONALS = CoefficientRing(RATIONALS_KIND)


def prime_field(p: int) -> CoefficientRing:
    return CoefficientRing(PRIME_FIELD_KIND, p)


def integers_away_from(p: int) -> CoefficientRing:
    return CoefficientRing(AWAY_FROM_KIND, p)


def parse_ring(name: str, p: Optional[int] = None) -> CoefficientRing:
    """Parse a ring name as used in configuration files

    Args:
        name: One of "Z", "Q", "F_p", "Z[1/p]" (p may be inlined, e.g. "F_3")
        p: Prime, when not inlined

    Returns:
        CoefficientRing
    """
    text = name.strip()
    if text == "Z":
        return INTEGERS
    if text == "Q":
        return RATIONALS
    if text.startswith("F_"):
        suffix = text[2:]
        prime = int(suffix) if suffix.isdigit() else p
        return prime_field(prime)
    if text.startswith("Z[1/") and text.endswith("]"):
        suffix = text[4:-1]
        prime = int(suffix) if suffix.isdigit() else p
        return integers_away_from(prime)
    raise InputError(f"Unknown ring name: {name}", name=name)

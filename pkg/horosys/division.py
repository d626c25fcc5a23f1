"""
Division witnesses inside the horosphere submodules

If r * phi lands in S_m, the class phi itself must lie in S_m for the
quotient R^{Lambda_N} / S_m to be torsion-free. A witness is the
coordinate vector of phi on the basis of S_m.
"""

import logging
from typing import Any, Dict

from exactalg.rings import AWAY_FROM_KIND
from exactalg.sparse import Vector
from exactalg.submodule import Submodule
from horosys.ysystem import YSystem
from utils.errors import ContractViolation, InputError

logger = logging.getLogger(__name__)


def _clean(vector: Vector, system: YSystem) -> Vector:
    arithmetic = system.ring.arithmetic
    out = {}
    for i, x in vector.items():
        x = arithmetic.reduce(arithmetic.coerce(x))
        if x:
            out[i] = x
    return out


def division_witness(system: YSystem, m, psi: Vector, r: Any, phi: Vector) -> Dict[str, Any]:
    """Find phi-tilde in S_m with r * phi-tilde = psi

    Args:
        system: Horosphere system at stage N
        m: Level of the submodule S_m
        psi: Class in S_m
        r: Nonzero ring element
        phi: Class with r * phi = psi

    Returns:
        Witness record with the coordinates of phi-tilde on the basis of S_m
    """
    arithmetic = system.ring.arithmetic
    r = arithmetic.reduce(arithmetic.coerce(r))
    if not r:
        raise InputError("Division by zero is not defined")
    span = system.s(m)
    psi = _clean(psi, system)
    phi = _clean(phi, system)
    if not span.contains(psi):
        raise InputError(f"psi is not in S_{m}", m=str(m))
    scaled = {i: arithmetic.reduce(r * x) for i, x in phi.items()}
    if {i: x for i, x in scaled.items() if x} != psi:
        raise InputError("r * phi does not equal psi", r=str(r))

    # the ambient module is torsion-free, so phi is the only candidate
    witness = phi
    coefficients = span.solve(witness)
    if coefficients is None:
        raise ContractViolation(f"No division witness in S_{m} for r={r}", reason="purity", m=str(m), r=str(r))
    return {
        "m": str(m),
        "r": str(r),
        "witness": {str(i): str(x) for i, x in sorted(witness.items())},
        "coordinates": [str(x) for x in coefficients],
    }


def division_spanning_check(system: YSystem, m, r: Any) -> Dict[str, Any]:
    """Run division_witness on a basis of S_m meet r R^{Lambda_N}

    Over Z[1/p] the powers of p in r are units, so the submodule
    r R^{Lambda_N} equals r' R^{Lambda_N} for the p-free part r'.
    Division is carried out by r'; when r' is 1 the witness is psi itself.
    """
    ring = system.ring
    arithmetic = ring.arithmetic
    r = arithmetic.coerce(r)
    if not arithmetic.reduce(r):
        raise InputError("Division by zero is not defined")
    divisor = ring.localize(r) if ring.kind == AWAY_FROM_KIND else r
    span = system.s(m)
    multiples = Submodule.full(span.ambient_rank, ring).scaled(divisor)
    meet = span.intersection(multiples)
    failures = []
    checked = 0
    for psi in meet.basis():
        phi = {}
        for i, x in psi.items():
            if not arithmetic.divides(divisor, x):
                raise ContractViolation("Intersection vector is not divisible by r", reason="not_divisible",
                                        r=str(r), divisor=str(divisor))
            phi[i] = arithmetic.quo(x, divisor)
        checked += 1
        try:
            division_witness(system, m, psi, divisor, phi)
        except ContractViolation as e:
            failures.append(e.to_dict())
    if failures:
        logger.error(f"{len(failures)} division witnesses missing at m={m}, r={r}")
    return {"m": str(m), "r": str(r), "divisor": str(divisor), "unit": ring.is_unit(r),
            "passed": not failures, "checked": checked, "failures": failures[:5]}

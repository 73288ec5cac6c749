"""Relator claims for the presentation of Out(W_n) and for candidate assignments on it."""
from __future__ import annotations

from typing import Any, Dict

from .. import gilbert_presentation as gp
from ..errors import ClaimFailed, require


def check_relators(n: int) -> Dict[str, Any]:
    return gp.verify_presentation(n)


def check_relators_split(n: int) -> Dict[str, Any]:
    """Family (g) separately from the rest, as the two halves of the presentation."""
    rest = gp.verify_presentation(n, families=[f for f in gp.FAMILIES if f != "g"])
    braid = gp.verify_presentation(n, families=["g"])
    return {"n": n, "without_g": rest["total"], "g": braid["total"]}


def check_mutation_detected(n: int) -> Dict[str, Any]:
    r = gp.mutated_relator(n)
    require(not gp.relator_holds(r, n), "mutation-detected", f"mutated relator {r} evaluates to 1")
    return {"n": n, "relator": str(r)}


def check_injected_failure() -> Dict[str, Any]:
    """Deliberately false: the mutated relator is claimed to hold."""
    r = gp.mutated_relator(4)
    require(gp.relator_holds(r, 4), "injected", f"mutated relator {r} does not evaluate to 1")
    return {"relator": str(r)}


def check_negative_controls() -> Dict[str, Any]:
    """Assignments that must or must not extend over the relators at n = 4."""
    gp.check_assignment_extends(gp.identity_assignment(4))
    gp.check_assignment_extends(gp.reflected_twist_assignment(4))
    try:
        gp.check_assignment_extends(gp.mismatched_twist_assignment())
    except ClaimFailed as exc:
        violated = exc.details.get("violated", [])
        require(bool(violated), "mismatch-rejected", "rejection carried no violated relators")
        return {"identity": "extends", "reflected": "extends", "mismatched_violations": len(violated)}
    raise ClaimFailed("mismatch-rejected", "[s1,4] -> [s2,4] was accepted by every relator")

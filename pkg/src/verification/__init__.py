# src/verification/__init__.py
"""
Claim registry and runner for the verification suite.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

from ..errors import ClaimFailed
from ..report import ClaimReport, SuiteReport
from . import gilbert_claims, rank3_claims, s6_claims, spine_claims, subgroup_claims, w4_claims, word_claims

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Claim:
    name: str
    scope: str
    reference: str
    check: Callable[..., Dict[str, Any]]
    # inclusive rank range for rank-parameterized claims; None runs once
    ranks: Optional[Tuple[int, int]] = None

    def claim_id(self, n: Optional[int] = None) -> str:
        base = f"{self.scope}.{self.name}"
        return base if n is None else f"{base}.n{n}"


SCOPES = ("core", "gilbert", "w4", "s6", "subgroups", "spine", "rank3")

# Claim registry - one list per scope
CLAIM_REGISTRY: Dict[str, List[Claim]] = {
    "core": [
        Claim("word-laws", "core", "Reduced words multiply associatively; cyclic cores and involution decompositions rebuild their words.",
              word_claims.check_word_laws, (2, 6)),
        Claim("conjugacy-oracle", "core", "Cyclic-reduction conjugacy agrees with a bounded conjugator search.",
              word_claims.check_conjugacy_oracle, (3, 4)),
        Claim("outer-oracle", "core", "Outer-class equality agrees with a bounded search for an inner link.",
              word_claims.check_outer_oracle, (3, 4)),
        Claim("traces", "core", "Automorphism traces replay, invert and act multiplicatively.",
              word_claims.check_traces, (2, 6)),
    ],
    "gilbert": [
        Claim("relators", "gilbert", "Every relator of the presentation of Out(W_n) evaluates to the identity class.",
              gilbert_claims.check_relators, (3, 5)),
        Claim("relators-split", "gilbert", "Family (g) and the remaining families hold independently.",
              gilbert_claims.check_relators_split, (4, 5)),
        Claim("mutation-detected", "gilbert", "A relator with one factor removed does not evaluate to the identity.",
              gilbert_claims.check_mutation_detected, (3, 6)),
        Claim("negative-controls", "gilbert", "Identity-like assignments extend over the relators; [s1,4] -> [s2,4] does not.",
              gilbert_claims.check_negative_controls),
    ],
    "w4": [
        Claim("exceptional-automorphism", "w4",
              "The exceptional assignment on Out(W_4) preserves all relators, is an involution, is not inner and exchanges A_4 and U_4.",
              w4_claims.check_exceptional_automorphism),
    ],
    "s6": [
        Claim("exceptional-subgroup", "s6", "Sym(6) contains a transitive subgroup isomorphic to S_5.",
              s6_claims.check_exceptional_subgroup),
        Claim("symmetric-subgroups", "s6", "Subgroups of Sym(n) satisfying the symmetric-group relations of degree n - 1 are point stabilizers.",
              s6_claims.check_symmetric_subgroups, (4, 5)),
    ],
    "subgroups": [
        Claim("orders", "subgroups", "|A_n| = n!, |B_n| = (n-1)!, |U_n| = 2^(n-2)(n-1)! and the centre of the lift of U_n has order 2.",
              subgroup_claims.check_orders, (3, 6)),
        Claim("aut-rigidity", "subgroups", "The reflected twist map on Aut(W_n) sends x_1 to two different words.",
              subgroup_claims.check_aut_rigidity, (4, 6)),
    ],
    "spine": [
        Claim("shape-bounds", "spine", "Twist rank is at most n - 2 (n - 1 pointed) with equality exactly on n-vertex shapes; stabilizers are bounded by 2^(n-2)(n-1)!.",
              spine_claims.check_shape_bounds, (2, 6)),
        Claim("star-stabilizers", "spine", "A_n fixes the standard zero-star and U_n fixes the standard F-star.",
              spine_claims.check_star_stabilizers, (3, 6)),
        Claim("star-adjacency", "spine", "Zero-stars adjacent to the standard F-star form the two-coloured family; B_n fixes exactly one.",
              spine_claims.check_star_adjacency, (3, 6)),
        Claim("twist-structure", "spine", "Twists at the standard F-star generate 2^(n-2) outer classes and, with B_n, all of U_n.",
              spine_claims.check_twist_structure, (3, 6)),
        Claim("action", "spine", "Out(W_n) acts on marked graphs independently of representatives.",
              spine_claims.check_action, (3, 5)),
    ],
    "rank3": [
        Claim("free-rewriting", "rank3", "Even words of W_3 rewrite into the free group on x1x2, x2x3 and back.",
              rank3_claims.check_free_rewriting),
        Claim("pgl2", "rank3", "Out(W_3) maps to PGL(2, Z): multiplicative, inner classes trivial, relators to the identity.",
              rank3_claims.check_pgl2),
    ],
}

INJECTED_CLAIM = Claim(
    "injected-mutated-relator",
    "gilbert",
    "Deliberately false: a mutated relator is claimed to hold.",
    gilbert_claims.check_injected_failure,
)


def get_claims(scope: str) -> List[Claim]:
    if scope == "all":
        return [c for s in SCOPES for c in CLAIM_REGISTRY[s]]
    if scope not in CLAIM_REGISTRY:
        raise KeyError(f"Unknown scope: {scope}")
    return list(CLAIM_REGISTRY[scope])


def execute_claim(claim: Claim, n: Optional[int] = None) -> ClaimReport:
    """Run one claim; failures and crashes become reports"""
    claim_id = claim.claim_id(n)
    start = time.perf_counter()
    try:
        details = claim.check(n) if n is not None else claim.check()
        status = "pass"
    except ClaimFailed as e:
        status = "fail"
        details = {"clause": e.clause, "message": e.message, **e.details}
    except Exception as e:
        status = "fail"
        details = {"error": f"error: {type(e).__name__}: {e}"}
        logger.debug("claim %s crashed", claim_id, exc_info=True)
    elapsed = (time.perf_counter() - start) * 1000.0
    return ClaimReport(
        claim_id=claim_id,
        reference=claim.reference,
        status=status,
        details=details or {},
        elapsed_ms=int(round(elapsed)),
    )


def skipped_claim(claim: Claim, n: int) -> ClaimReport:
    lo, hi = claim.ranks
    return ClaimReport(
        claim_id=claim.claim_id(n),
        reference=claim.reference,
        status="skipped",
        details={"reason": f"supported for {lo} <= n <= {hi}"},
    )


def run_suite(
    scope: str,
    n_min: int,
    n_max: int,
    seed: int,
    inject_failure: bool = False,
    on_result: Optional[Callable[[ClaimReport], None]] = None,
) -> SuiteReport:
    """Run every claim of the scope over the rank range; reports are sorted by claim_id"""
    claims = get_claims(scope)
    if inject_failure:
        claims.append(INJECTED_CLAIM)
    reports: List[ClaimReport] = []

    def record(r: ClaimReport) -> None:
        reports.append(r)
        if on_result is not None:
            on_result(r)

    for claim in claims:
        if claim.ranks is None:
            record(execute_claim(claim))
            continue
        lo, hi = claim.ranks
        for n in range(n_min, n_max + 1):
            if lo <= n <= hi:
                record(execute_claim(claim, n))
            else:
                record(skipped_claim(claim, n))

    reports.sort(key=lambda r: r.claim_id)
    suite = SuiteReport(scope=scope, n_min=n_min, n_max=n_max, seed=seed, claims=reports)
    return suite.tally()


def get_available_claims() -> list[str]:
    """All registered claim names"""
    return sorted(c.claim_id() for s in SCOPES for c in CLAIM_REGISTRY[s])


__all__ = [
    'CLAIM_REGISTRY',
    'SCOPES',
    'Claim',
    'execute_claim',
    'get_available_claims',
    'get_claims',
    'run_suite',
]

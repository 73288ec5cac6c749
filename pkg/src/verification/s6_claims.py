"""Transitive S_5 inside S_6 and point-stabilizer recognition of symmetric subgroups."""
from __future__ import annotations

from typing import Any, Dict

from sympy.combinatorics import PermutationGroup

from .. import finite_subgroup as fs
from ..errors import require


def check_exceptional_subgroup() -> Dict[str, Any]:
    result = fs.verify_s6_exceptional()
    # independent order and transitivity from sympy's Schreier-Sims
    group = PermutationGroup(fs.s6_exceptional_generators())
    require(group.order() == 120, "schreier-sims-order", f"sympy reports order {group.order()}")
    require(group.is_transitive(), "schreier-sims-transitive", "sympy reports an intransitive group")
    return result


def check_symmetric_subgroups(n: int) -> Dict[str, Any]:
    return fs.verify_point_stabilizers(n)

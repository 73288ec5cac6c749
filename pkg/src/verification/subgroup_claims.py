"""Orders and structure of the finite subgroups A_n, B_n, U_n and their lifts to Aut(W_n)."""
from __future__ import annotations

from typing import Any, Dict

from .. import finite_subgroup as fs
from ..config import get_settings


def check_orders(n: int) -> Dict[str, Any]:
    return fs.verify_subgroup_orders(n, cap=get_settings().max_closure)


def check_aut_rigidity(n: int) -> Dict[str, Any]:
    return fs.verify_aut_rigidity(n, cap=get_settings().max_closure)

"""Shape bounds, star stabilizers, adjacency and the action on marked graphs."""
from __future__ import annotations

import random
from typing import Any, Dict

from .. import automorphism as aut
from .. import spine as sp
from .. import word_core as wc
from ..config import get_settings
from ..errors import require


def check_shape_bounds(n: int) -> Dict[str, Any]:
    return sp.verify_shape_bounds(n)


def check_star_stabilizers(n: int) -> Dict[str, Any]:
    return sp.verify_star_stabilizers(n)


def check_star_adjacency(n: int) -> Dict[str, Any]:
    return sp.verify_star_adjacency(n)


def check_twist_structure(n: int) -> Dict[str, Any]:
    return sp.verify_twist_structure(n)


def check_action(n: int) -> Dict[str, Any]:
    """Action axiom and independence of the chosen representative, on the standard stars."""
    rng = random.Random(get_settings().seed)
    samples = min(get_settings().samples, 25)
    stars = [sp.standard_zero_star(n), sp.standard_f_star(n)]
    for _ in range(samples):
        v = rng.choice(stars)
        a = aut.random_automorphism(n, rng.randint(1, 3), rng)
        b = aut.random_automorphism(n, rng.randint(1, 3), rng)
        ca, cb = aut.outer(a), aut.outer(b)
        require(sp.act(ca, sp.act(cb, v)) == sp.act(ca * cb, v), "action-axiom",
                "acting twice differs from acting by the product", a=str(a), b=str(b))
        g = wc.random_word(n, rng.randint(1, 4), rng)
        require(sp.act(aut.compose(aut.ad(g), a), v) == sp.act(ca, v), "representative",
                f"inner perturbation by {g} changes the action")
    return {"n": n, "samples": samples}

"""Rank 3: the free subgroup of even words and Out(W_3) -> PGL(2, Z)."""
from __future__ import annotations

import random
from typing import Any, Dict

from .. import rank3_bridge as r3
from .. import word_core as wc
from ..config import get_settings
from ..errors import require

ROUND_TRIP_LENGTH = 8


def check_free_rewriting() -> Dict[str, Any]:
    even = [u for u in wc.words_up_to(3, ROUND_TRIP_LENGTH) if r3.epsilon(u) == 0]
    for u in even:
        require(r3.from_free(r3.to_free(u)) == u, "round-trip", f"{u} does not survive the rewrite")
    rng = random.Random(get_settings().seed)
    samples = get_settings().samples
    for _ in range(samples):
        u = wc.random_word(3, 2 * rng.randint(0, 5), rng)
        v = wc.random_word(3, 2 * rng.randint(0, 5), rng)
        require(r3.to_free(u * v) == r3.to_free(u) * r3.to_free(v), "homomorphism",
                f"rewrite is not multiplicative on {u}, {v}")
    return {"even_words": len(even), "samples": samples}


def check_pgl2() -> Dict[str, Any]:
    return r3.verify_pgl2_map()

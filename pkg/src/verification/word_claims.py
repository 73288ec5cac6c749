"""
Oracle claims for words and automorphisms: algebraic laws on random samples
and agreement of the decision procedures with bounded brute-force searches.
"""
from __future__ import annotations

import random
from typing import Any, Dict, List, Optional

from .. import automorphism as aut
from .. import word_core as wc
from ..config import get_settings
from ..errors import require
from ..word_core import GroupWord

# conjugator length searched by the brute-force oracles
ORACLE_LENGTH = 5


def _rng() -> random.Random:
    return random.Random(get_settings().seed)


def find_conjugator(u: GroupWord, v: GroupWord, words: List[GroupWord]) -> Optional[GroupWord]:
    for g in words:
        if wc.conjugate(u, g) == v:
            return g
    return None


def find_inner_link(a: aut.CoxAutomorphism, b: aut.CoxAutomorphism, words: List[GroupWord]) -> Optional[GroupWord]:
    for g in words:
        if aut.compose(aut.ad(g), a) == b:
            return g
    return None


def check_word_laws(n: int) -> Dict[str, Any]:
    rng = _rng()
    samples = get_settings().samples
    for _ in range(samples):
        u, v, w = (wc.random_word(n, rng.randint(0, 8), rng) for _ in range(3))
        require((u * v) * w == u * (v * w), "associative", "product is not associative",
                u=str(u), v=str(v), w=str(w))
        require((u * wc.invert(u)).is_identity, "inverse", f"{u} times its inverse is not e")
        core, conj = wc.cyclic_reduce(u)
        require(wc.conjugate(core, conj) == u, "cyclic-reduce", f"cyclic core of {u} does not rebuild it")
        i = rng.randint(1, n)
        y = wc.conjugate(wc.generator(i, n), w)
        g, j = wc.involution_decompose(y)
        require(j == i and wc.conjugate(wc.generator(j, n), g) == y, "decompose",
                f"bad decomposition of {y}")
    return {"n": n, "samples": samples}


def check_conjugacy_oracle(n: int) -> Dict[str, Any]:
    rng = _rng()
    samples = get_settings().samples
    words = wc.words_up_to(n, ORACLE_LENGTH)
    conjugate_pairs = 0
    for k in range(samples):
        u = wc.random_word(n, rng.randint(0, 4), rng)
        if k % 2:
            v = wc.conjugate(u, wc.random_word(n, rng.randint(0, 3), rng))
        else:
            # both of length <= 4, so a conjugator of length <= 5 exists when one exists at all
            v = wc.random_word(n, rng.randint(0, 4), rng)
        decided = wc.are_conjugate(u, v)
        found = find_conjugator(u, v, words) is not None
        require(decided == found, "agreement", f"are_conjugate({u}, {v}) = {decided}, search found {found}")
        conjugate_pairs += decided
    return {"n": n, "samples": samples, "conjugate": conjugate_pairs}


def check_outer_oracle(n: int) -> Dict[str, Any]:
    rng = _rng()
    samples = get_settings().samples
    words = wc.words_up_to(n, ORACLE_LENGTH)
    moves = [aut.tau(i, n) for i in range(1, n)] + [aut.sigma(1, 2, n)]
    for k in range(samples):
        a = aut.random_automorphism(n, rng.randint(0, 3), rng)
        g = wc.random_word(n, rng.randint(0, ORACLE_LENGTH), rng)
        related = k % 2 == 0
        b = aut.compose(aut.ad(g), a) if related else aut.compose(aut.ad(g), a, rng.choice(moves))
        decided = aut.outer_equal(a, b)
        found = find_inner_link(a, b, words) is not None
        require(decided == found == related, "agreement",
                f"outer_equal = {decided}, search = {found}, constructed related = {related}",
                a=str(a), b=str(b))
    return {"n": n, "samples": samples}


def check_traces(n: int) -> Dict[str, Any]:
    rng = _rng()
    samples = min(get_settings().samples, 200)
    for _ in range(samples):
        a = aut.random_automorphism(n, rng.randint(0, 6), rng)
        require(aut.trace_consistent(a), "trace", f"trace of {a} does not replay to it")
        inv = aut.invert(a)
        require(aut.compose(a, inv).is_identity, "invert", f"{a} o inverse is not the identity")
        rebuilt = aut.from_images(a.images(), inv.images())
        require(rebuilt == a, "from-images", f"images of {a} do not rebuild it")
        u = wc.random_word(n, rng.randint(0, 6), rng)
        v = wc.random_word(n, rng.randint(0, 6), rng)
        require(aut.apply(a, u * v) == aut.apply(a, u) * aut.apply(a, v), "homomorphism",
                f"{a} is not multiplicative on {u}, {v}")
    return {"n": n, "samples": samples}

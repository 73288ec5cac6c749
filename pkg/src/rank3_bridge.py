"""
Rank 3: the even-length subgroup of W_3 as a free group on a = x1x2, b = x2x3,
and the 2x2 integer matrices automorphisms of W_3 induce on its abelianization.
"""
from __future__ import annotations

import logging
import random
from collections import deque
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Tuple

import numpy as np

from . import automorphism as aut
from . import gilbert_presentation as gp
from . import word_core as wc
from .automorphism import CoxAutomorphism
from .config import get_settings
from .errors import OddLength, RankMismatch, require
from .report import MatrixRecord
from .word_core import GroupWord

logger = logging.getLogger(__name__)

A, B = 1, 2

_LETTER_TEXT = {1: "a", -1: "A", 2: "b", -2: "B"}

# consecutive letter pairs of an even word, as free words
_PAIRS: Dict[Tuple[int, int], Tuple[int, ...]] = {
    (1, 2): (A,),
    (2, 3): (B,),
    (1, 3): (A, B),
    (2, 1): (-A,),
    (3, 2): (-B,),
    (3, 1): (-B, -A),
}

_BACK: Dict[int, Tuple[int, int]] = {A: (1, 2), -A: (2, 1), B: (2, 3), -B: (3, 2)}


def _free_reduce(letters: Iterable[int]) -> Tuple[int, ...]:
    stack: List[int] = []
    for x in letters:
        if x not in _LETTER_TEXT:
            raise ValueError(f"free letter must be one of +-1, +-2, got {x}")
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


@dataclass(frozen=True)
class FreeWord2:
    """Freely reduced word in a (1), b (2) and their inverses (negated)."""

    letters: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", _free_reduce(self.letters))

    def __mul__(self, other: "FreeWord2") -> "FreeWord2":
        return FreeWord2(self.letters + other.letters)

    def inverse(self) -> "FreeWord2":
        return FreeWord2(tuple(-x for x in reversed(self.letters)))

    def __str__(self) -> str:
        return "".join(_LETTER_TEXT[x] for x in self.letters) or "1"

    def exponent_sums(self) -> Tuple[int, int]:
        a = sum(1 if x == A else -1 for x in self.letters if abs(x) == A)
        b = sum(1 if x == B else -1 for x in self.letters if abs(x) == B)
        return a, b


def _check_rank3(u: GroupWord) -> None:
    if u.rank != 3:
        raise RankMismatch(3, u.rank)


def epsilon(u: GroupWord) -> int:
    _check_rank3(u)
    return len(u) % 2


def to_free(u: GroupWord) -> FreeWord2:
    """Rewrite an even word of W_3 pairwise in a and b."""
    _check_rank3(u)
    if epsilon(u):
        raise OddLength(f"{u} has odd length")
    out: List[int] = []
    letters = u.letters
    for k in range(0, len(letters), 2):
        out.extend(_PAIRS[(letters[k], letters[k + 1])])
    return FreeWord2(tuple(out))


def from_free(w: FreeWord2) -> GroupWord:
    raw: List[int] = []
    for x in w.letters:
        raw.extend(_BACK[x])
    return wc.reduce(raw, 3)


def induced_matrix(alpha: CoxAutomorphism) -> np.ndarray:
    """Columns are the (a, b) exponent sums of the images of a and b."""
    if alpha.rank != 3:
        raise RankMismatch(3, alpha.rank)
    columns = []
    for pair in ((1, 2), (2, 3)):
        image = aut.apply(alpha, wc.reduce(pair, 3))
        columns.append(to_free(image).exponent_sums())
    return np.array(columns, dtype=np.int64).T


def determinant(m: np.ndarray) -> int:
    return int(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def integer_inverse(m: np.ndarray) -> np.ndarray:
    d = determinant(m)
    if d not in (1, -1):
        raise ValueError(f"determinant {d} is not a unit")
    return d * np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]], dtype=np.int64)


def pgl_normalize(m: np.ndarray) -> np.ndarray:
    """Representative of +-m whose first nonzero entry is positive."""
    flat = m.flatten()
    nonzero = flat[flat != 0]
    if nonzero.size and nonzero[0] < 0:
        return -m
    return m.copy()


def pgl_equal(m: np.ndarray, k: np.ndarray) -> bool:
    return np.array_equal(pgl_normalize(m), pgl_normalize(k))


IDENTITY = np.eye(2, dtype=np.int64)


def symbol_word_matrix(word: gp.SymbolWord) -> np.ndarray:
    """Product of the induced matrices of a presentation word at n = 3."""
    m = IDENTITY.copy()
    for sym, e in word:
        factor = induced_matrix(gp.interpret(sym, 3).canonical)
        m = m @ (factor if e == 1 else integer_inverse(factor))
    return m


def verify_pgl2_map(samples: Optional[int] = None, seed: Optional[int] = None) -> Dict[str, Any]:
    """Homomorphism, inner triviality and relator checks for Out(W_3) -> PGL(2, Z)."""
    settings = get_settings()
    samples = settings.samples if samples is None else samples
    rng = random.Random(settings.seed if seed is None else seed)

    for i in (1, 2, 3):
        m = induced_matrix(aut.ad(wc.generator(i, 3)))
        require(np.array_equal(m, -IDENTITY), "inner-generators", f"ad(x{i}) gives {m.tolist()}")

    checked = 0
    for _ in range(samples):
        a = aut.random_automorphism(3, rng.randint(1, 6), rng)
        b = aut.random_automorphism(3, rng.randint(1, 6), rng)
        ma, mb = induced_matrix(a), induced_matrix(b)
        product = induced_matrix(aut.compose(a, b))
        require(np.array_equal(product, ma @ mb), "multiplicative", "matrix of a product differs",
                left=str(a), right=str(b))
        for m in (ma, mb, product):
            require(determinant(m) in (1, -1), "determinant", f"determinant {determinant(m)}")
        w = wc.random_word(3, rng.randint(0, 8), rng)
        require(pgl_equal(induced_matrix(aut.ad(w)), IDENTITY), "inner-trivial", f"ad({w}) is not +-Id")
        checked += 1

    relators = gp.enumerate_relators(3)
    for r in relators:
        m = symbol_word_matrix(r.word)
        require(pgl_equal(m, IDENTITY), "relators", f"{r} maps to {m.tolist()}")

    spot = surjectivity_spot_check()
    require(all(spot.values()), "generators-reached", "missing GL(2, Z) generators", found=spot)
    logger.debug("rank 3: %d samples, %d relators", checked, len(relators))
    return {"samples": checked, "relators": len(relators), "spot_check": spot}


GL2_GENERATORS: Dict[str, np.ndarray] = {
    "shear": np.array([[1, 1], [0, 1]], dtype=np.int64),
    "swap": np.array([[0, 1], [1, 0]], dtype=np.int64),
    "reflection": np.array([[-1, 0], [0, 1]], dtype=np.int64),
}


def surjectivity_spot_check(max_length: int = 4) -> Dict[str, bool]:
    """Search products of the matrices of tau_1, tau_2, sigma_12 for the GL(2, Z) generators up to sign."""
    gens = [induced_matrix(aut.tau(1, 3)), induced_matrix(aut.tau(2, 3)), induced_matrix(aut.sigma(1, 2, 3))]
    targets = {name: pgl_normalize(m).tobytes() for name, m in GL2_GENERATORS.items()}
    start = pgl_normalize(IDENTITY)
    seen = {start.tobytes()}
    frontier = deque([(start, 0)])
    while frontier:
        m, depth = frontier.popleft()
        if depth == max_length:
            continue
        for g in gens:
            nxt = pgl_normalize(m @ g)
            key = nxt.tobytes()
            if key not in seen:
                seen.add(key)
                frontier.append((nxt, depth + 1))
    return {name: key in seen for name, key in targets.items()}


def matrix_record(alpha: CoxAutomorphism) -> MatrixRecord:
    m = induced_matrix(alpha)
    return MatrixRecord(
        automorphism=str(alpha), matrix=m.tolist(), pgl_sign_normalized=pgl_normalize(m).tolist()
    )

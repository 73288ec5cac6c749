"""
Automorphisms of W_n in canonical (pi, w) form.

An automorphism sends x_i to w_i x_{pi(i)} w_i^-1 with w_i reduced and not
ending in x_{pi(i)}; that pair is unique, so dataclass equality is map
equality. Each value also carries the trace of basic tokens it was built
from, which is what makes inversion possible without peak reduction.
Composition reads right to left: compose(a, b) applies b first.
"""
from __future__ import annotations

import logging
import random
import re
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

from sympy.combinatorics import Permutation

from . import word_core as wc
from .config import get_settings
from .errors import (
    EqualIndices,
    IndexOutOfRank,
    NotInverse,
    NotInvolution,
    OrderExceedsBound,
    ParseError,
    PermutationNotBijective,
    RankMismatch,
)
from .word_core import GroupWord

logger = logging.getLogger(__name__)


# --- trace tokens ---

@dataclass(frozen=True)
class Tau:
    index: int

    def __str__(self) -> str:
        return f"t{self.index}"


@dataclass(frozen=True)
class Sigma:
    i: int
    j: int

    def __str__(self) -> str:
        return f"s{self.i},{self.j}"


@dataclass(frozen=True)
class Ad:
    word: GroupWord

    def __str__(self) -> str:
        return f"ad({self.word})"


@dataclass(frozen=True)
class Verified:
    """Map given by explicit generator images, checked against its inverse."""
    images: Tuple[GroupWord, ...]
    inverse_images: Tuple[GroupWord, ...]

    def __str__(self) -> str:
        return "v[" + " | ".join(str(w) for w in self.images) + "]"


Token = Union[Tau, Sigma, Ad, Verified]


def invert_token(token: Token) -> Token:
    if isinstance(token, Ad):
        return Ad(wc.invert(token.word))
    if isinstance(token, Verified):
        return Verified(token.inverse_images, token.images)
    return token


# --- the automorphism type ---

def _strip(conjugator: GroupWord, target: int) -> GroupWord:
    if conjugator.letters and conjugator.letters[-1] == target:
        return GroupWord(conjugator.rank, conjugator.letters[:-1])
    return conjugator


@dataclass(frozen=True)
class CoxAutomorphism:
    rank: int
    perm: Tuple[int, ...]
    conjugators: Tuple[GroupWord, ...]
    trace: Tuple[Token, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self) -> None:
        normalized = tuple(_strip(w, p) for w, p in zip(self.conjugators, self.perm))
        object.__setattr__(self, "conjugators", normalized)

    @property
    def key(self) -> Tuple:
        return (self.perm, tuple(w.sort_key for w in self.conjugators))

    def image(self, i: int) -> GroupWord:
        w = self.conjugators[i - 1]
        return wc.conjugate(wc.generator(self.perm[i - 1], self.rank), w)

    def images(self) -> Tuple[GroupWord, ...]:
        return tuple(self.image(i) for i in range(1, self.rank + 1))

    @property
    def is_identity(self) -> bool:
        return self.perm == tuple(range(1, self.rank + 1)) and all(
            w.is_identity for w in self.conjugators
        )

    def __str__(self) -> str:
        return "; ".join(f"x{i} -> {w}" for i, w in enumerate(self.images(), start=1))

    def format_trace(self) -> str:
        if not self.trace:
            return "e"
        return ";".join(str(t) for t in self.trace)

    def __mul__(self, other: "CoxAutomorphism") -> "CoxAutomorphism":
        return compose(self, other)


def _check_rank(a_rank: int, b_rank: int) -> None:
    if a_rank != b_rank:
        raise RankMismatch(a_rank, b_rank)


def _from_images(images: Sequence[GroupWord], trace: Tuple[Token, ...]) -> CoxAutomorphism:
    rank = images[0].rank
    perm: List[int] = []
    conjugators: List[GroupWord] = []
    for img in images:
        w, j = wc.involution_decompose(img)
        perm.append(j)
        conjugators.append(w)
    return CoxAutomorphism(rank, tuple(perm), tuple(conjugators), trace)


def _check_index(i: int, rank: int) -> None:
    if i < 1 or i > rank:
        raise IndexOutOfRank(i, rank)


def identity(rank: int) -> CoxAutomorphism:
    return CoxAutomorphism(
        rank, tuple(range(1, rank + 1)), tuple(GroupWord.identity(rank) for _ in range(rank))
    )


def tau(i: int, rank: int) -> CoxAutomorphism:
    """Swap x_i and x_{i+1}."""
    if i < 1 or i > rank - 1:
        raise IndexOutOfRank(i, rank - 1)
    perm = list(range(1, rank + 1))
    perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return CoxAutomorphism(
        rank, tuple(perm), tuple(GroupWord.identity(rank) for _ in range(rank)), (Tau(i),)
    )


def sigma(i: int, j: int, rank: int) -> CoxAutomorphism:
    """x_i -> x_j x_i x_j, other generators fixed."""
    _check_index(i, rank)
    _check_index(j, rank)
    if i == j:
        raise EqualIndices(f"sigma needs distinct indices, got {i},{j}")
    conj = [GroupWord.identity(rank) for _ in range(rank)]
    conj[i - 1] = wc.generator(j, rank)
    return CoxAutomorphism(rank, tuple(range(1, rank + 1)), tuple(conj), (Sigma(i, j),))


def ad(w: GroupWord) -> CoxAutomorphism:
    rank = w.rank
    return CoxAutomorphism(rank, tuple(range(1, rank + 1)), tuple(w for _ in range(rank)), (Ad(w),))


def apply(a: CoxAutomorphism, u: GroupWord) -> GroupWord:
    _check_rank(a.rank, u.rank)
    letters: List[int] = []
    for x in u.letters:
        w = a.conjugators[x - 1]
        letters.extend(w.letters)
        letters.append(a.perm[x - 1])
        letters.extend(reversed(w.letters))
    return GroupWord(a.rank, tuple(letters))


def _compose2(a: CoxAutomorphism, b: CoxAutomorphism) -> CoxAutomorphism:
    _check_rank(a.rank, b.rank)
    perm = tuple(a.perm[p - 1] for p in b.perm)
    conj = tuple(
        wc.multiply(apply(a, b.conjugators[i]), a.conjugators[b.perm[i] - 1])
        for i in range(a.rank)
    )
    return CoxAutomorphism(a.rank, perm, conj, a.trace + b.trace)


def compose(first: CoxAutomorphism, *rest: CoxAutomorphism) -> CoxAutomorphism:
    """compose(a, b, c) = a o b o c."""
    result = first
    for nxt in rest:
        result = _compose2(result, nxt)
    return result


def token_automorphism(token: Token, rank: int) -> CoxAutomorphism:
    if isinstance(token, Tau):
        return tau(token.index, rank)
    if isinstance(token, Sigma):
        return sigma(token.i, token.j, rank)
    if isinstance(token, Ad):
        return ad(token.word)
    return _from_images(token.images, (token,))


def replay(tokens: Sequence[Token], rank: int) -> CoxAutomorphism:
    result = identity(rank)
    for token in tokens:
        result = _compose2(result, token_automorphism(token, rank))
    return result


def invert(a: CoxAutomorphism) -> CoxAutomorphism:
    if a.is_identity and not a.trace:
        return a
    inverse_tokens = tuple(invert_token(t) for t in reversed(a.trace))
    result = replay(inverse_tokens, a.rank)
    if not _compose2(a, result).is_identity:
        # only reachable if the trace was not built by the constructors here
        raise NotInverse("trace does not describe the automorphism")
    return result


def compact(a: CoxAutomorphism) -> CoxAutomorphism:
    """Replace the trace by a single verified token."""
    inv = invert(a)
    token = Verified(a.images(), inv.images())
    return CoxAutomorphism(a.rank, a.perm, a.conjugators, (token,))


def trace_consistent(a: CoxAutomorphism) -> bool:
    return replay(a.trace, a.rank) == a


def _apply_images(images: Sequence[GroupWord], u: GroupWord) -> GroupWord:
    return wc.multiply_all((images[x - 1] for x in u.letters), u.rank)


def from_images(
    images: Sequence[GroupWord], inverse_images: Sequence[GroupWord]
) -> CoxAutomorphism:
    """Automorphism given by generator images, certified by a claimed inverse."""
    images = tuple(images)
    inverse_images = tuple(inverse_images)
    rank = len(images)
    if len(inverse_images) != rank:
        raise RankMismatch(rank, len(inverse_images))
    for w in images + inverse_images:
        _check_rank(rank, w.rank)
        if not w.is_involution:
            raise NotInvolution(f"image {w} is not an involution")
    targets = [wc.involution_decompose(w)[1] for w in images]
    if sorted(targets) != list(range(1, rank + 1)):
        raise PermutationNotBijective(f"generator classes {targets} are not a permutation")
    for i in range(1, rank + 1):
        x = wc.generator(i, rank)
        if _apply_images(images, inverse_images[i - 1]) != x:
            raise NotInverse(f"images o inverse_images moves x{i}")
        if _apply_images(inverse_images, images[i - 1]) != x:
            raise NotInverse(f"inverse_images o images moves x{i}")
    return _from_images(images, (Verified(images, inverse_images),))


def permutation_automorphism(images: Sequence[int], rank: int) -> CoxAutomorphism:
    """x_i -> x_{images[i-1]}, written as a product of tau generators."""
    target = [int(p) for p in images]
    if sorted(target) != list(range(1, rank + 1)):
        raise PermutationNotBijective(f"{target} is not a permutation of 1..{rank}")
    swaps: List[int] = []
    arr = list(target)
    # bubble sort: swapping positions k, k+1 is right composition by tau_k
    for _ in range(rank):
        for k in range(rank - 1):
            if arr[k] > arr[k + 1]:
                arr[k], arr[k + 1] = arr[k + 1], arr[k]
                swaps.append(k + 1)
    if not swaps:
        return identity(rank)
    return compose(*(tau(k, rank) for k in reversed(swaps)))


def transposition(i: int, j: int, rank: int) -> CoxAutomorphism:
    _check_index(i, rank)
    _check_index(j, rank)
    if i == j:
        raise EqualIndices(f"transposition needs distinct indices, got {i},{j}")
    images = list(range(1, rank + 1))
    images[i - 1], images[j - 1] = j, i
    return permutation_automorphism(images, rank)


def sigma_from_generators(i: int, j: int, rank: int) -> CoxAutomorphism:
    """sigma(i, j) built as P o sigma(1, 2) o P^-1 for a permutation P with 1->i, 2->j."""
    rest = [k for k in range(1, rank + 1) if k not in (i, j)]
    p = permutation_automorphism([i, j] + rest, rank)
    return compose(p, sigma(1, 2, rank), invert(p))


_TOKEN_RE = re.compile(r"^(?:t(\d+)|s(\d+),(\d+)|ad\((.*)\)|e|id|p(\d+),(\d+))$")


def parse_automorphism(text: str, rank: int) -> CoxAutomorphism:
    """Parse a ';'-joined token list such as "s3,2;s4,2" (applied right to left)."""
    parts = [p.strip() for p in text.split(";") if p.strip()]
    if not parts:
        raise ParseError("empty automorphism expression")
    factors: List[CoxAutomorphism] = []
    for part in parts:
        m = _TOKEN_RE.match(part)
        if not m:
            raise ParseError(f"unknown automorphism token {part!r}")
        if m.group(1):
            factors.append(tau(int(m.group(1)), rank))
        elif m.group(2):
            factors.append(sigma(int(m.group(2)), int(m.group(3)), rank))
        elif m.group(4) is not None:
            factors.append(ad(GroupWord.parse(m.group(4), rank)))
        elif m.group(5):
            factors.append(transposition(int(m.group(5)), int(m.group(6)), rank))
        else:
            factors.append(identity(rank))
    return compose(*factors)


def random_automorphism(rank: int, length: int, rng: random.Random) -> CoxAutomorphism:
    """Random product of tau, sigma and ad tokens."""
    factors = [identity(rank)]
    for _ in range(length):
        kind = rng.randrange(3)
        if kind == 0 and rank > 1:
            factors.append(tau(rng.randint(1, rank - 1), rank))
        elif kind == 1 and rank > 1:
            i, j = rng.sample(range(1, rank + 1), 2)
            factors.append(sigma(i, j, rank))
        else:
            factors.append(ad(wc.random_word(rank, rng.randint(1, 3), rng)))
    return compose(*factors)


# --- outer classes ---

def _outer_canonical(a: CoxAutomorphism) -> CoxAutomorphism:
    w1 = a.conjugators[0]
    g1 = wc.invert(w1)
    g2 = wc.multiply(wc.generator(a.perm[0], a.rank), g1)
    candidates = [compose(ad(g), a) for g in (g1, g2)]
    return min(candidates, key=lambda c: c.key)


@dataclass(frozen=True)
class OuterClass:
    """Class of an automorphism modulo Inn(W_n), stored by a canonical representative."""
    canonical: CoxAutomorphism

    @property
    def rank(self) -> int:
        return self.canonical.rank

    @property
    def key(self) -> Tuple:
        return self.canonical.key

    @classmethod
    def identity(cls, rank: int) -> "OuterClass":
        return outer(identity(rank))

    @property
    def is_identity(self) -> bool:
        return self.canonical.is_identity

    def __mul__(self, other: "OuterClass") -> "OuterClass":
        return outer(compose(self.canonical, other.canonical))

    def inverse(self) -> "OuterClass":
        return outer(invert(self.canonical))

    def __pow__(self, k: int) -> "OuterClass":
        if k < 0:
            return self.inverse() ** (-k)
        result = OuterClass.identity(self.rank)
        for _ in range(k):
            result = result * self
        return result

    def __str__(self) -> str:
        return f"[{self.canonical}]"


def outer(a: CoxAutomorphism) -> OuterClass:
    return OuterClass(_outer_canonical(a))


def outer_equal(a: CoxAutomorphism, b: CoxAutomorphism) -> bool:
    _check_rank(a.rank, b.rank)
    return outer(a) == outer(b)


def class_permutation(c: Union[OuterClass, CoxAutomorphism]) -> Permutation:
    """Induced permutation of generator conjugacy classes, as a 0-based sympy Permutation.

    Composition convention: class_permutation(c1 * c2) equals
    class_permutation(c2) * class_permutation(c1) in sympy's left-to-right product.
    """
    a = c.canonical if isinstance(c, OuterClass) else c
    return Permutation([p - 1 for p in a.perm])


def order_of(c: OuterClass, bound: Optional[int] = None) -> int:
    if bound is None:
        bound = get_settings().order_bound
    if bound < 1:
        raise ValueError("bound must be >= 1")
    power = c
    for k in range(1, bound + 1):
        if power.is_identity:
            return k
        power = power * c
    raise OrderExceedsBound(bound)


__all__ = [
    "Ad",
    "CoxAutomorphism",
    "OuterClass",
    "Sigma",
    "Tau",
    "Verified",
    "ad",
    "apply",
    "class_permutation",
    "compact",
    "compose",
    "from_images",
    "identity",
    "invert",
    "order_of",
    "outer",
    "outer_equal",
    "parse_automorphism",
    "permutation_automorphism",
    "random_automorphism",
    "replay",
    "sigma",
    "sigma_from_generators",
    "tau",
    "trace_consistent",
    "transposition",
]

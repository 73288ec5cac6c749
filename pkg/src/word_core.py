"""
Reduced words in the universal Coxeter group W_n = <x_1, ..., x_n | x_i^2 = 1>.

A GroupWord is reduced at construction (no two equal adjacent letters), so
structural equality is group equality.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import total_ordering
from itertools import product
from typing import Iterable, Iterator, List, Sequence, Tuple

from .errors import IndexOutOfRank, NotAnInvolution, ParseError, RankMismatch

IDENTITY_TEXT = "e"


def _reduce_letters(raw: Iterable[int], rank: int) -> Tuple[int, ...]:
    stack: List[int] = []
    for letter in raw:
        letter = int(letter)
        if letter < 1 or letter > rank:
            raise IndexOutOfRank(letter, rank)
        if stack and stack[-1] == letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


@total_ordering
@dataclass(frozen=True)
class GroupWord:
    rank: int
    letters: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ValueError(f"rank must be positive, got {self.rank}")
        object.__setattr__(self, "letters", _reduce_letters(self.letters, self.rank))

    @classmethod
    def identity(cls, rank: int) -> "GroupWord":
        return cls(rank, ())

    @classmethod
    def parse(cls, text: str, rank: int) -> "GroupWord":
        text = text.strip()
        if text in ("", IDENTITY_TEXT):
            return cls(rank, ())
        try:
            letters = [int(tok) for tok in text.replace(",", " ").split()]
        except ValueError as exc:
            raise ParseError(f"cannot parse word {text!r}") from exc
        return cls(rank, letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return IDENTITY_TEXT
        return " ".join(str(i) for i in self.letters)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return multiply(self, other)

    @property
    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (len(self.letters), self.letters)

    def __lt__(self, other: "GroupWord") -> bool:
        if not isinstance(other, GroupWord):
            return NotImplemented
        return self.sort_key < other.sort_key

    @property
    def is_identity(self) -> bool:
        return not self.letters

    @property
    def is_involution(self) -> bool:
        return bool(self.letters) and multiply(self, self).is_identity


def generator(index: int, rank: int) -> GroupWord:
    return GroupWord(rank, (index,))


def reduce(raw: Sequence[int], rank: int) -> GroupWord:
    return GroupWord(rank, tuple(raw))


def _check_rank(u: GroupWord, v: GroupWord) -> None:
    if u.rank != v.rank:
        raise RankMismatch(u.rank, v.rank)


def multiply(u: GroupWord, v: GroupWord) -> GroupWord:
    _check_rank(u, v)
    # reduction only happens at the seam
    left = list(u.letters)
    right = v.letters
    k = 0
    while left and k < len(right) and left[-1] == right[k]:
        left.pop()
        k += 1
    return GroupWord(u.rank, tuple(left) + right[k:])


def multiply_all(words: Iterable[GroupWord], rank: int) -> GroupWord:
    letters: List[int] = []
    for w in words:
        if w.rank != rank:
            raise RankMismatch(rank, w.rank)
        letters.extend(w.letters)
    return GroupWord(rank, tuple(letters))


def invert(u: GroupWord) -> GroupWord:
    return GroupWord(u.rank, u.letters[::-1])


def conjugate(u: GroupWord, g: GroupWord) -> GroupWord:
    """Return g u g^-1."""
    _check_rank(u, g)
    return GroupWord(u.rank, g.letters + u.letters + g.letters[::-1])


def cyclic_reduce(u: GroupWord) -> Tuple[GroupWord, GroupWord]:
    """Split u as conjugator * core * conjugator^-1 with core cyclically reduced."""
    letters = u.letters
    lo, hi = 0, len(letters) - 1
    while hi - lo >= 1 and letters[lo] == letters[hi]:
        lo += 1
        hi -= 1
    core = GroupWord(u.rank, letters[lo:hi + 1])
    return core, GroupWord(u.rank, letters[:lo])


def _rotations(letters: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
    for k in range(len(letters)):
        yield letters[k:] + letters[:k]


def are_conjugate(u: GroupWord, v: GroupWord) -> bool:
    _check_rank(u, v)
    cu, _ = cyclic_reduce(u)
    cv, _ = cyclic_reduce(v)
    if len(cu) != len(cv):
        return False
    if len(cu) <= 1:
        return cu == cv
    return any(rot == cv.letters for rot in _rotations(cu.letters))


def involution_decompose(u: GroupWord) -> Tuple[GroupWord, int]:
    """Return (w, j) with u = w x_j w^-1 and w not ending in x_j."""
    core, conjugator = cyclic_reduce(u)
    if len(core) != 1:
        raise NotAnInvolution(f"{u} is not an involution")
    return conjugator, core.letters[0]


def random_word(rank: int, length: int, rng: random.Random) -> GroupWord:
    """Uniform reduced word of exactly the given length."""
    if rank == 1 and length > 1:
        raise ValueError(f"W_1 has no reduced word of length {length}")
    letters: List[int] = []
    for _ in range(length):
        choices = [i for i in range(1, rank + 1) if not letters or letters[-1] != i]
        letters.append(rng.choice(choices))
    return GroupWord(rank, tuple(letters))


def words_up_to(rank: int, max_length: int) -> List[GroupWord]:
    """All reduced words of length <= max_length, in the word order."""
    out: List[GroupWord] = [GroupWord.identity(rank)]
    layer: List[Tuple[int, ...]] = [()]
    for _ in range(max_length):
        nxt: List[Tuple[int, ...]] = []
        for letters in layer:
            for i in range(1, rank + 1):
                if letters and letters[-1] == i:
                    continue
                nxt.append(letters + (i,))
        layer = nxt
        out.extend(GroupWord(rank, w) for w in layer)
    return out


def all_sequences(rank: int, length: int) -> Iterator[Tuple[int, ...]]:
    """Every raw (unreduced) letter sequence of a given length."""
    return product(range(1, rank + 1), repeat=length)

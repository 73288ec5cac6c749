"""
Helpers around sympy permutations, written with 1-based points.

Group products in this package apply the right factor first, while sympy's
p*q applies p first; compose_perm hides that difference.
"""
from __future__ import annotations

from itertools import permutations as _all_orders
from typing import Iterable, List, Sequence

from sympy.combinatorics import Permutation


def perm_from_cycles(cycles: Iterable[Sequence[int]], size: int) -> Permutation:
    """Build a permutation of {1..size} from 1-based cycles."""
    zero_based = [[p - 1 for p in cycle] for cycle in cycles if len(cycle) > 1]
    if not zero_based:
        return Permutation(list(range(size)))
    return Permutation(zero_based, size=size)


def perm_from_images(images: Sequence[int]) -> Permutation:
    """images[i-1] is the image of point i."""
    return Permutation([p - 1 for p in images])


def perm_images(p: Permutation) -> List[int]:
    return [x + 1 for x in p.array_form]


def compose_perm(p: Permutation, q: Permutation) -> Permutation:
    """p o q (q applied first)."""
    return q * p


def perm_key(p: Permutation) -> tuple:
    return tuple(p.array_form)


def format_perm(p: Permutation) -> str:
    """1-based cycle notation, "()" for the identity."""
    cycles = [c for c in p.cyclic_form]
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cycles)


def fixed_points(p: Permutation) -> List[int]:
    return [i + 1 for i, x in enumerate(p.array_form) if x == i]


def symmetric_elements(size: int) -> List[Permutation]:
    return [Permutation(list(order)) for order in _all_orders(range(size))]

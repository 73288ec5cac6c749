"""
Exception hierarchy for coxrig.

Every error raised by the library derives from CoxrigError so the CLI can
turn it into a usage/parse failure; ClaimFailed is the one exception that
marks a verified claim as false.
"""
from __future__ import annotations

from typing import Any, Dict, Optional


class CoxrigError(Exception):
    """Base class for library errors."""


class IndexOutOfRank(CoxrigError, ValueError):
    def __init__(self, index: int, rank: int):
        super().__init__(f"generator index {index} outside 1..{rank}")
        self.index = index
        self.rank = rank


class RankMismatch(CoxrigError, ValueError):
    def __init__(self, left: int, right: int):
        super().__init__(f"rank mismatch: {left} vs {right}")
        self.left = left
        self.right = right


class EqualIndices(CoxrigError, ValueError):
    pass


class NotAnInvolution(CoxrigError, ValueError):
    pass


class NotInvolution(NotAnInvolution):
    """An image supplied to from_images is not an involution."""


class OrderExceedsBound(CoxrigError):
    def __init__(self, bound: int):
        super().__init__(f"no power up to {bound} is the identity")
        self.bound = bound


class PermutationNotBijective(CoxrigError, ValueError):
    pass


class NotInverse(CoxrigError, ValueError):
    pass


class CapExceeded(CoxrigError):
    def __init__(self, cap: int):
        super().__init__(f"closure grew past {cap} elements")
        self.cap = cap


class NotNormalizing(CoxrigError, ValueError):
    pass


class IllegalCollapse(CoxrigError, ValueError):
    pass


class OriginNotLabeled(CoxrigError, ValueError):
    pass


class OriginIsLeaf(CoxrigError, ValueError):
    pass


class OddLength(CoxrigError, ValueError):
    pass


class UnsupportedRank(CoxrigError, ValueError):
    pass


class ParseError(CoxrigError, ValueError):
    pass


class ClaimFailed(AssertionError):
    """A checked claim is false; `clause` names the failing part."""

    def __init__(self, clause: str, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(f"[{clause}] {message}")
        self.clause = clause
        self.message = message
        self.details = details or {}


def require(condition: bool, clause: str, message: str, **details: Any) -> None:
    if not condition:
        raise ClaimFailed(clause, message, details)

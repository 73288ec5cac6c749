"""The exceptional outer automorphism of Out(W_4)."""
from __future__ import annotations

from typing import Any, Dict

from .. import gilbert_presentation as gp


def check_exceptional_automorphism() -> Dict[str, Any]:
    return gp.verify_exceptional_w4()

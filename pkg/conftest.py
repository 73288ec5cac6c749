import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from src.config import Settings, set_settings  # noqa: E402


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(autouse=True)
def small_settings():
    """Fewer random samples than the CLI default, same seed."""
    set_settings(Settings(seed=20240611, samples=40))
    yield
    set_settings(Settings())

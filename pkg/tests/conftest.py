import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def seeded_rng():
    return random.Random(0xC0FFEE)

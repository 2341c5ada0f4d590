import random

import pytest

from gptgeom.gallery import polytopic_entries
from gptgeom.randomgen import random_system

SEED = 20260810


@pytest.fixture(scope="session")
def rng():
    return random.Random(SEED)


@pytest.fixture(scope="session")
def gallery_systems():
    """The seven exact-vertex gallery systems."""
    return [(e.name, e.gpt_system()) for e in polytopic_entries()]


@pytest.fixture(scope="session")
def random_systems():
    """Fifty random valid systems with ambient dimension up to five."""
    gen = random.Random(SEED + 1)
    systems = []
    for dim, count in ((2, 20), (3, 15), (4, 10), (5, 5)):
        for _ in range(count):
            systems.append(random_system(gen, dim))
    return systems


@pytest.fixture(scope="session")
def fifty_seven(gallery_systems, random_systems):
    return [s for _, s in gallery_systems] + random_systems

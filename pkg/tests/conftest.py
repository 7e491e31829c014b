import random

import pytest
from hypothesis import strategies as st

from milnorkit.freegroup import FreeWord, reduce


def words(k: int, max_len: int = 12):
    """Random reduced words on k generators."""
    letter = st.tuples(st.integers(0, k - 1), st.sampled_from([-1, 1]))
    return st.lists(letter, max_size=max_len).map(reduce)


@pytest.fixture
def rng():
    return random.Random(20261014)


def random_word(rng: random.Random, k: int, length: int) -> FreeWord:
    return reduce((rng.randrange(k), rng.choice((-1, 1))) for _ in range(length))

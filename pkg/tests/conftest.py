import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from surfpi.words import Word

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_code(rng: random.Random, rank: int, length: int) -> list[int]:
    """Unreduced random letter sequence over a rank-``rank`` alphabet."""
    return [rng.choice((1, -1)) * rng.randint(1, rank) for _ in range(length)]


def random_word(rng: random.Random, alphabet, max_len: int = 12) -> Word:
    return Word(alphabet, random_code(rng, len(alphabet), rng.randint(0, max_len)))


def words_over(alphabet, max_len: int = 12):
    r = len(alphabet)
    letters = st.integers(1, r).flatmap(lambda k: st.sampled_from((k, -k)))
    return st.lists(letters, max_size=max_len).map(lambda c: Word(alphabet, c))


@pytest.fixture
def rng():
    return random.Random(20261015)

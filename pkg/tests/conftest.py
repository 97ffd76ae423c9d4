import random

import pytest

from h10_py.core.exactnum import Rational
from h10_py.core.rings import RingKind, RingSpec

SUBRINGS = {
    "Z": RingSpec.integers(),
    "3*Z": RingSpec.multiples(3),
    "Z[1/6]": RingSpec.localization(6),
    "Q": RingSpec.rationals(),
}


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


@pytest.fixture(params=sorted(SUBRINGS))
def subring(request) -> RingSpec:
    return SUBRINGS[request.param]


def sample_member(rng: random.Random, ring: RingSpec, height: int = 20) -> Rational:
    """A random element of ring with a small numerator."""
    if ring.kind is RingKind.Z:
        return Rational(rng.randint(-height, height))
    if ring.kind is RingKind.N:
        return Rational(rng.randint(0, height))
    if ring.kind is RingKind.CZ:
        return Rational(ring.param * rng.randint(-height, height))
    if ring.kind is RingKind.LOCALIZATION:
        return Rational.of(rng.randint(-height, height), ring.param ** rng.randint(0, 2))
    return Rational.of(rng.randint(-height, height), rng.randint(1, 12))


@pytest.fixture
def member_sampler():
    return sample_member

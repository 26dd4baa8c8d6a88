import pytest

from canext import corpus
from canext.canonical import first_syzygies, quadric_generators
from canext.modp import sample_prime

P = sample_prime(20260810)
P2 = sample_prime(20260811)

_pres_cache = {}


def curve(name, p=P, seed=0):
    return corpus.make(name, p, seed)


def presentation(name, p=P, seed=0):
    key = (name, p, seed)
    if key not in _pres_cache:
        _pres_cache[key] = first_syzygies(quadric_generators(curve(name, p, seed), seed=seed))
    return _pres_cache[key]


@pytest.fixture(scope="session")
def septic_pres():
    return presentation("smooth-plane-7")


@pytest.fixture(scope="session")
def ci_pres():
    return presentation("ci-6-5")

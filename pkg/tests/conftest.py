import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cuntzcar.car import CarElement, a, adag
from cuntzcar.cuntz import CuntzElement
from cuntzcar.scalars import Scalar, random_exact_unitary

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 6))
scalars = st.builds(Scalar, rationals, rationals)
small_coeffs = st.one_of(st.integers(-3, 3).filter(bool), st.sampled_from([Fraction(1, 2), Scalar(0, 1), Scalar(1, -1)]))


@st.composite
def car_elements(draw, max_mode=4, max_terms=3, max_degree=3):
    out = CarElement.zero()
    for _ in range(draw(st.integers(1, max_terms))):
        term = CarElement.identity() * draw(small_coeffs)
        for _ in range(draw(st.integers(0, max_degree))):
            n = draw(st.integers(1, max_mode))
            term = term * (adag(n) if draw(st.booleans()) else a(n))
        out = out + term
    return out


@st.composite
def words(draw, d, max_len=2, balanced=False):
    m = draw(st.integers(0, max_len))
    k = m if balanced else draw(st.integers(0, max_len))
    mu = tuple(draw(st.lists(st.integers(1, d), min_size=m, max_size=m)))
    nu = tuple(draw(st.lists(st.integers(1, d), min_size=k, max_size=k)))
    return mu, nu


@st.composite
def cuntz_elements(draw, d, max_len=2, max_terms=3, balanced=False):
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        w = draw(words(d, max_len, balanced))
        terms[w] = terms.get(w, 0) + draw(small_coeffs)
    return CuntzElement(d, terms)


@st.composite
def exact_unitaries(draw, d, rotations=2):
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return random_exact_unitary(d, random.Random(seed), rotations=rotations)


@pytest.fixture
def rng():
    return random.Random(20261014)

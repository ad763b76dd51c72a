import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuntzcar._config import depth_limit
from cuntzcar.cuntz import alpha, sign_classes
from cuntzcar.identities import (
    all_balanced_words,
    block_unitary,
    check_endomorphism_law,
    check_generator_relations,
    check_odd_multiplicativity,
    check_product_identity,
    check_roundtrips,
    check_shift_law,
    check_zeta_anticommutes,
    check_zeta_covariance,
    check_zeta_phi,
    check_zeta_star,
    random_balanced,
    random_car,
)

seeds = st.integers(0, 2 ** 31)


def _samples(p, rng, k):
    # zeta doubles the depth of p = 3 words, so stay at depth 1 there
    return [random_balanced(2 ** p, rng, max_depth=2 if p < 3 else 1) for _ in range(k)]


@pytest.mark.parametrize("p", [1, 2, 3])
def test_generator_relations(p):
    assert check_generator_relations(p).passed


@pytest.mark.parametrize("p", [1, 2, 3])
def test_product_identity(p):
    assert check_product_identity(p).passed


@pytest.mark.parametrize("p", [1, 2, 3])
def test_shift_law(p):
    with depth_limit(12):
        assert check_shift_law(p, p).passed


@settings(max_examples=10)
@given(st.integers(1, 3), seeds)
def test_zeta_identities(p, seed):
    rng = random.Random(seed)
    xs = _samples(p, rng, 3)
    with depth_limit(12):
        assert check_zeta_anticommutes(p, xs).passed
        assert check_zeta_star(p, xs).passed
        assert check_zeta_phi(p, list(zip(xs, xs[1:]))).passed


@settings(max_examples=8)
@given(st.integers(2, 3), seeds)
def test_covariance_under_block_unitaries(p, seed):
    rng = random.Random(seed)
    with depth_limit(12):
        assert check_zeta_covariance(p, [block_unitary(p, rng)], _samples(p, rng, 2)).passed


@settings(max_examples=8)
@given(st.integers(1, 2), seeds)
def test_odd_multiplicativity(p, seed):
    rng = random.Random(seed)
    xs = _samples(p, rng, 3)
    with depth_limit(12):
        assert check_odd_multiplicativity(p, [tuple(xs)]).passed


@settings(max_examples=10)
@given(st.integers(1, 2), seeds)
def test_endomorphism_law(p, seed):
    rng = random.Random(seed)
    assert check_endomorphism_law(p, [random_car(2 * p, rng) for _ in range(3)]).passed


@pytest.mark.parametrize("p", [1, 2])
def test_roundtrips(p):
    rng = random.Random(p)
    assert check_roundtrips(p, [random_car(2 * p, rng) for _ in range(10)]).passed


def test_block_unitary_preserves_sign_classes():
    rng = random.Random(0)
    u = block_unitary(3, rng)
    plus, minus = sign_classes(3)
    for i in plus:
        for j in minus:
            assert u.entries[i - 1][j - 1] == 0 and u.entries[j - 1][i - 1] == 0


def test_all_balanced_words_count():
    assert len(list(all_balanced_words(2, 0))) == 1
    assert len(list(all_balanced_words(2, 2))) == 16


def test_alpha_is_a_representation():
    rng = random.Random(3)
    u, v = block_unitary(2, rng), block_unitary(2, rng)
    x = random_balanced(4, rng)
    assert alpha(u, alpha(v, x)) == alpha(u @ v, x)

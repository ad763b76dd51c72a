import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuntzcar import _kernels, _kernels_py
from cuntzcar._coeffs import fast_mul, join_exact, split_exact

from conftest import car_elements, cuntz_elements

speedups = pytest.importorskip("cuntzcar._speedups", reason="compiled kernels not built")

masks = st.integers(0, 2 ** 10 - 1).map(lambda m: m << 1)


@settings(max_examples=500)
@given(masks, masks, masks, masks)
def test_monomial_product_backends_agree(c1, a1, c2, a2):
    assert speedups.car_monomial_product(c1, a1, c2, a2) == _kernels_py.car_monomial_product(c1, a1, c2, a2)


def test_wide_masks_fall_back():
    hi = 1 << 70
    assert speedups.car_monomial_product(hi, 0, 0, hi) == _kernels_py.car_monomial_product(hi, 0, 0, hi)
    x = {(hi | 2, 0): 1}
    y = {(0, hi): 3}
    assert speedups.car_mul(x, y) == _kernels_py.car_mul(x, y)


@settings(max_examples=200)
@given(car_elements(max_mode=6), car_elements(max_mode=6))
def test_car_mul_backends_agree(x, y):
    assert speedups.car_mul(x._terms, y._terms) == _kernels_py.car_mul(x._terms, y._terms)


@settings(max_examples=200)
@given(st.sampled_from([2, 4]).flatmap(lambda d: st.tuples(cuntz_elements(d, 3), cuntz_elements(d, 3))))
def test_cuntz_mul_backends_agree(pair):
    x, y = pair
    assert speedups.cuntz_mul(x._terms, y._terms) == _kernels_py.cuntz_mul(x._terms, y._terms)


@given(st.lists(st.integers(1, 3), max_size=3), st.lists(st.integers(1, 3), max_size=3),
       st.lists(st.integers(1, 3), max_size=3), st.lists(st.integers(1, 3), max_size=3))
def test_word_product_backends_agree(mu1, nu1, mu2, nu2):
    args = tuple(mu1), tuple(nu1), tuple(mu2), tuple(nu2)
    assert speedups.word_product(*args) == _kernels_py.word_product(*args)


@settings(max_examples=100)
@given(car_elements(max_mode=4), car_elements(max_mode=4))
def test_integer_fast_path_matches_generic(x, y):
    assert fast_mul(_kernels.car_mul, x._terms, y._terms) == _kernels.car_mul(x._terms, y._terms)


@given(car_elements(max_mode=4))
def test_split_join_roundtrip(x):
    den, re, im = split_exact(x._terms)
    assert join_exact(den, re, im) == x._terms


def test_split_refuses_floats():
    assert split_exact({(0, 0): 0.5}) is None


def test_pure_python_selected_by_environment():
    env = dict(os.environ, CUNTZCAR_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import cuntzcar; print(cuntzcar.BACKEND)"], env=env, capture_output=True, text=True
    )
    assert out.stdout.strip() == "python"


def test_default_backend_is_compiled():
    if os.environ.get("CUNTZCAR_PURE_PYTHON"):
        pytest.skip("fallback forced")
    assert _kernels.BACKEND == "cython"

import random
from functools import reduce

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuntzcar.cuntz import (
    MIXED,
    CuntzElement,
    adjoint,
    alpha,
    canonical_form,
    equal,
    gauge_grade,
    pad,
    phi_p,
    psi_embed,
    sign_classes,
    sign_epsilon,
    tensor_lift,
    word_product,
    zeta_p,
)
from cuntzcar.rfs import context
from cuntzcar.scalars import UnitaryMatrix, check_unitary, permutation_unitary, pythagorean_rotation

from conftest import cuntz_elements, exact_unitaries, words


def s(d, i):
    return CuntzElement.generator(d, i)


def ss(d, i, j):
    """``s_i s_j^*``."""
    return s(d, i) * s(d, j).star


def test_word_product_examples():
    I2 = CuntzElement.identity(2)
    assert word_product(((), (1,)), ((1,), ()), 2) == I2
    assert word_product(((1,), (2,)), ((2,), (1,)), 2) == ss(2, 1, 1)
    assert word_product(((1,), (2,)), ((1,), (2,)), 2) == CuntzElement.zero(2)
    assert word_product(((1,), (2,)), ((1,), (2,))) is None


def test_cuntz_relations():
    for d in (2, 3, 4):
        for i in range(1, d + 1):
            for j in range(1, d + 1):
                want = CuntzElement.identity(d) if i == j else CuntzElement.zero(d)
                assert s(d, i).star * s(d, j) == want
        assert reduce(lambda x, y: x + y, (ss(d, i, i) for i in range(1, d + 1))) == CuntzElement.identity(d)


def test_product_examples():
    x = CuntzElement.word(2, (1, 2), (2,), 3) + ss(2, 2, 1)
    assert x * CuntzElement.identity(2) == x
    assert (ss(2, 1, 1) + ss(2, 2, 2)) * x == x
    a1 = ss(2, 1, 2)
    assert a1 * a1.star + a1.star * a1 == CuntzElement.identity(2)


def test_adjoint_examples():
    assert adjoint(CuntzElement.identity(3)) == CuntzElement.identity(3)
    assert adjoint(ss(2, 1, 2)) == ss(2, 2, 1)


def test_word_encoding_of_starred_part():
    # (mu, nu) = ((1,), (1, 2)) is s_1 s_{(1,2)}^* = s_1 s_2^* s_1^*
    assert CuntzElement.word(2, (1,), (1, 2)) == s(2, 1) * s(2, 2).star * s(2, 1).star


@given(cuntz_elements(3, max_len=3))
def test_adjoint_involution(x):
    assert adjoint(adjoint(x)) == x


def test_canonical_form_examples():
    assert canonical_form(ss(2, 1, 1) + ss(2, 2, 2)).terms == {((), ()): 1}
    padded = pad(ss(2, 1, 2), 2)
    assert padded.terms == {((1, 1), (2, 1)): 1, ((1, 2), (2, 2)): 1}
    # s_1 s_1 s_1^* s_2^* + s_1 s_2 s_2^* s_2^*
    want = s(2, 1) * s(2, 1) * s(2, 1).star * s(2, 2).star + s(2, 1) * s(2, 2) * s(2, 2).star * s(2, 2).star
    assert padded == want
    assert canonical_form(CuntzElement.zero(2)).terms == {}


def test_canonical_form_is_unique_representative():
    x = ss(2, 1, 2) + 3 * CuntzElement.word(2, (1, 1), (2, 2))
    assert canonical_form(pad(x, 3)).terms == canonical_form(x).terms


def test_equal_examples():
    assert equal(CuntzElement.identity(2), ss(2, 1, 1) + ss(2, 2, 2))
    assert equal(ss(2, 1, 2), pad(ss(2, 1, 2), 2))
    assert not equal(ss(2, 1, 1), CuntzElement.identity(2))


def test_mixed_dimensions_rejected():
    with pytest.raises(ValueError):
        s(2, 1) * s(3, 1)
    with pytest.raises(ValueError):
        CuntzElement.word(2, (3,), ())


def test_gauge_grade():
    assert gauge_grade(CuntzElement.identity(2)) == 0
    assert gauge_grade(ss(2, 1, 2)) == 0
    assert gauge_grade(s(2, 1) + ss(2, 1, 2)) == MIXED
    assert gauge_grade(s(2, 1) * s(2, 2)) == 2
    assert gauge_grade(s(2, 1).star) == -1


@settings(max_examples=40)
@given(st.data())
def test_reduction_confluence(data):
    d = data.draw(st.integers(2, 3))
    ws = [CuntzElement.word(d, *data.draw(words(d, max_len=2))) for _ in range(data.draw(st.integers(2, 5)))]
    seed = data.draw(st.integers(0, 10 ** 6))
    rng = random.Random(seed)

    def assoc(items):
        if len(items) == 1:
            return items[0]
        k = rng.randint(1, len(items) - 1)
        return assoc(items[:k]) * assoc(items[k:])

    left = reduce(lambda x, y: x * y, ws)
    assert canonical_form(assoc(ws)).terms == canonical_form(left).terms


@given(cuntz_elements(2, max_len=2), st.integers(0, 3))
def test_padding_invariance(x, k):
    assert equal(x, pad(x, x.depth() + k))


def _unitary_strategy():
    return st.sampled_from([2, 4]).flatmap(lambda d: st.tuples(st.just(d), exact_unitaries(d)))


@settings(max_examples=30)
@given(st.data())
def test_alpha_is_star_homomorphism(data):
    d, u = data.draw(_unitary_strategy())
    x = data.draw(cuntz_elements(d, max_len=2, max_terms=2))
    y = data.draw(cuntz_elements(d, max_len=2, max_terms=2))
    assert alpha(u, x * y) == alpha(u, x) * alpha(u, y)
    assert alpha(u, adjoint(x)) == adjoint(alpha(u, x))


@settings(max_examples=30)
@given(st.data())
def test_alpha_preserves_gauge_grade(data):
    d, u = data.draw(_unitary_strategy())
    x = data.draw(cuntz_elements(d, max_len=2, max_terms=2))
    if not x:
        return
    assert gauge_grade(alpha(u, x)) == gauge_grade(x)


@settings(max_examples=30)
@given(st.data())
def test_alpha_composition(data):
    d = data.draw(st.sampled_from([2, 4]))
    u1, u2 = data.draw(exact_unitaries(d)), data.draw(exact_unitaries(d))
    x = data.draw(cuntz_elements(d, max_len=2, max_terms=2))
    assert alpha(u1, alpha(u2, x)) == alpha(u1 @ u2, x)


def test_alpha_examples():
    x = ss(4, 1, 2) + ss(4, 3, 4)
    assert alpha(UnitaryMatrix.identity(4), x) == x
    assert alpha(permutation_unitary([1, 2, 4, 3]), x) == ss(4, 1, 2) + ss(4, 4, 3)


def test_sign_pattern():
    assert [sign_epsilon(i, 1) for i in (1, 2)] == [1, -1]
    assert [sign_epsilon(i, 2) for i in range(1, 5)] == [1, -1, -1, 1]
    assert [sign_epsilon(i, 3) for i in range(1, 9)] == [1, -1, -1, 1, -1, 1, 1, -1]
    plus, minus = sign_classes(3)
    assert plus == (1, 4, 6, 7) and minus == (2, 3, 5, 8)


def test_zeta_examples():
    X = ss(2, 1, 2)
    want = s(2, 1) * X * s(2, 1).star - s(2, 2) * X * s(2, 2).star
    assert zeta_p(X, 1) == want
    # s_1 s_1 s_2^* s_1^* - s_2 s_1 s_2^* s_2^*
    assert want == CuntzElement.word(2, (1, 1), (1, 2)) - CuntzElement.word(2, (2, 1), (2, 2))
    I4 = CuntzElement.identity(4)
    assert zeta_p(I4, 2) == ss(4, 1, 1) - ss(4, 2, 2) - ss(4, 3, 3) + ss(4, 4, 4)


def test_phi_examples():
    assert phi_p(CuntzElement.identity(2), 1) == CuntzElement.identity(2)
    X = ss(2, 1, 2)
    assert phi_p(X, 1) == CuntzElement.word(2, (1, 1), (1, 2)) + CuntzElement.word(2, (2, 1), (2, 2))
    assert zeta_p(X, 1) * zeta_p(CuntzElement.identity(2), 1) == phi_p(X, 1)


@settings(max_examples=40)
@given(st.data())
def test_phi_is_multiplicative(data):
    p = data.draw(st.integers(1, 2))
    x = data.draw(cuntz_elements(2 ** p, max_len=2, balanced=True))
    y = data.draw(cuntz_elements(2 ** p, max_len=2, balanced=True))
    assert phi_p(x, p) * phi_p(y, p) == phi_p(x * y, p)


def test_psi_embed_examples():
    S = lambda i: CuntzElement.generator(4, i)  # noqa: E731
    assert psi_embed(S(2), 2, 2) == s(2, 2) * s(2, 1)
    assert psi_embed(S(1), 2, 2) == s(2, 1) * s(2, 1)
    img = psi_embed(context(2).image(1), 2, 2)
    assert img == context(1).image(1)
    assert img == CuntzElement.word(2, (1, 1), (2, 1)) + CuntzElement.word(2, (1, 2), (2, 2))


def test_psi_compatible_with_embedding():
    for n in range(1, 5):
        assert psi_embed(context(2).image(n), 2, 2) == context(1).image(n)


def test_psi_is_homomorphism(rng):
    from cuntzcar.identities import random_balanced

    for _ in range(20):
        x, y = random_balanced(4, rng), random_balanced(4, rng)
        assert psi_embed(x * y, 2, 2) == psi_embed(x, 2, 2) * psi_embed(y, 2, 2)
        assert psi_embed(x.star, 2, 2) == psi_embed(x, 2, 2).star


def test_tensor_lift_identity():
    assert tensor_lift(UnitaryMatrix.identity(2), 3) == UnitaryMatrix.identity(8)


def test_tensor_lift_defining_identity():
    u = pythagorean_rotation(2, 1, 1, 2, 2)
    v = tensor_lift(u, 2)
    for i in range(1, 5):
        S = CuntzElement.generator(4, i)
        assert psi_embed(alpha(v, S), 2, 2) == alpha(u, psi_embed(S, 2, 2))


@settings(max_examples=15)
@given(st.sampled_from([2, 4]).flatmap(exact_unitaries))
def test_tensor_lift_unitary(u):
    assert check_unitary(tensor_lift(u, 2))

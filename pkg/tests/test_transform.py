import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuntzcar import corpus
from cuntzcar._config import ResourceGuardError
from cuntzcar.car import CarElement, a, adag, car_adjoint, klein, max_mode, number
from cuntzcar.cuntz import tensor_lift
from cuntzcar.scalars import (
    NonUnitaryError,
    UnitaryMatrix,
    permutation_unitary,
    pythagorean_rotation,
    random_exact_unitary,
    signed_permutation,
)
from cuntzcar.transform import (
    NonlinearTransform,
    chi_apply,
    chi_apply_element,
    compose,
    is_vacuum_preserving,
    locality_holds,
    same_action,
    verify_car_relations,
    verify_group_law,
    verify_inclusion,
)

I = CarElement.identity()


def test_chi_examples():
    t2 = NonlinearTransform(2, corpus.u2())
    assert chi_apply(t2, 2) == -(adag(1) + a(1)) * a(2)
    for p in (1, 2, 3):
        t = NonlinearTransform.identity(p)
        assert all(chi_apply(t, n) == a(n) for n in range(1, 2 * p + 1))
    t4 = NonlinearTransform(2, corpus.u4())
    assert chi_apply(t4, 1) == Fraction(3, 5) * a(1) + Fraction(4, 5) * adag(2)


def test_call_dispatch():
    t = NonlinearTransform(2, corpus.u3())
    assert t(1) == chi_apply(t, 1)
    assert t(number(1)) == number(2)


def test_chi_apply_element_examples(rng):
    t3 = NonlinearTransform(2, corpus.u3())
    assert chi_apply_element(t3, I) == I
    assert chi_apply_element(t3, number(1)) == number(2)
    for _ in range(5):
        t = NonlinearTransform(2, random_exact_unitary(4, rng, rotations=2))
        assert chi_apply_element(t, a(1) * adag(1) + adag(1) * a(1)) == I


def test_mismatched_order_rejected():
    with pytest.raises(ValueError):
        NonlinearTransform(2, UnitaryMatrix.identity(2))
    with pytest.raises(NonUnitaryError):
        NonlinearTransform(1, [[1, 1], [0, 1]])


def test_compose_with_identity():
    t = NonlinearTransform(2, corpus.u4())
    c = compose(t, NonlinearTransform.identity(2))
    assert same_action(c, t, 4)
    c = compose(NonlinearTransform.identity(1), t)
    assert c.p == 2 and same_action(c, t, 4)


def test_example2_is_involutive():
    t = NonlinearTransform(2, corpus.u2())
    c = t @ t
    assert all(chi_apply(c, n) == a(n) for n in range(1, 5))


def test_compose_mixed_orders_matches_pointwise():
    t1 = NonlinearTransform(1, corpus.u1())
    t2 = NonlinearTransform(2, corpus.u2())
    c = compose(t1, t2)
    assert c.p == 2
    for n in range(1, 5):
        assert chi_apply(c, n) == chi_apply_element(t1, chi_apply(t2, n))
    c = compose(t2, t1)
    for n in range(1, 5):
        assert chi_apply(c, n) == chi_apply_element(t2, chi_apply(t1, n))


def test_compose_lcm():
    t2 = NonlinearTransform(2, corpus.u3())
    t3 = NonlinearTransform(3, corpus.u5())
    c = compose(t2, t3)
    assert c.p == 6 and c.u.d == 64
    assert c.u == tensor_lift(corpus.u3(), 3) @ tensor_lift(corpus.u5(), 2)
    # the order-6 depth-1 table is beyond the default table limit
    with pytest.raises(ResourceGuardError):
        chi_apply(c, 1)


def test_car_relations_example5():
    assert verify_car_relations(NonlinearTransform(3, corpus.u5()), 3).passed


def test_car_relations_signed_permutation():
    rng = random.Random(5)
    images = list(range(1, 9))
    rng.shuffle(images)
    u = signed_permutation(images, [rng.choice([1, -1]) for _ in range(8)])
    report = verify_car_relations(NonlinearTransform(3, u), 3)
    assert report.passed and len(report.checks) == 12


def test_group_law_examples():
    u = pythagorean_rotation(3, 1, 1, 2, 2)
    assert verify_group_law(u, u.inverse(), 2)
    assert verify_group_law(pythagorean_rotation(2, 1, 1, 2, 2), pythagorean_rotation(4, 1, 1, 2, 2), 2)
    assert verify_group_law(corpus.u2(), corpus.u3(), 4)


def test_inclusion_examples():
    assert verify_inclusion(UnitaryMatrix.identity(2), 2, 4)
    assert verify_inclusion(corpus.u1(), 2, 4)
    assert verify_inclusion(corpus.u2(), 2, 2)


def test_inclusion_lift_three():
    assert verify_inclusion(corpus.u1(), 3, 3)


def test_vacuum_examples():
    assert is_vacuum_preserving(NonlinearTransform.identity(2))
    assert not is_vacuum_preserving(NonlinearTransform(2, corpus.u4()))
    assert is_vacuum_preserving(NonlinearTransform(2, corpus.u3()))


def test_vacuum_coefficient_witness():
    from cuntzcar.car import vacuum_coefficient

    x = chi_apply(NonlinearTransform(2, corpus.u4()), 1)
    assert vacuum_coefficient(x * car_adjoint(x)) == Fraction(9, 25)


def test_vacuum_preserving_closed_under_compose():
    pool = [corpus.u3(), signed_permutation([1, 3, 2, 4], [1, -1, 1, 1]), permutation_unitary([1, 2, 3, 4])]
    ts = [NonlinearTransform(2, u) for u in pool]
    assert all(is_vacuum_preserving(t) for t in ts)
    for t1, t2 in itertools.product(ts, repeat=2):
        assert is_vacuum_preserving(compose(t1, t2))


def test_example4_not_particle_preserving():
    x = chi_apply(NonlinearTransform(2, corpus.u4()), 1)
    assert any(c and not an for c, an, _ in x.monomials())


@settings(max_examples=15)
@given(st.integers(1, 3), st.integers(0, 2 ** 31))
def test_locality(p, seed):
    t = NonlinearTransform(p, random_exact_unitary(2 ** p, random.Random(seed), rotations=2))
    for n in range(1, 2 * p + 1):
        assert locality_holds(t, n)
        assert max_mode(chi_apply(t, n)) <= p * -(-n // p)


@settings(max_examples=20)
@given(st.integers(1, 2), st.integers(0, 2 ** 31), st.data())
def test_automorphism_laws(p, seed, data):
    rng = random.Random(seed)
    t = NonlinearTransform(p, random_exact_unitary(2 ** p, rng, rotations=2))
    modes = st.integers(1, 2 * p)
    ops = st.lists(st.tuples(modes, st.booleans()), min_size=1, max_size=3)
    x = CarElement.word(data.draw(ops))
    y = CarElement.word(data.draw(ops))
    assert chi_apply_element(t, x * y) == chi_apply_element(t, x) * chi_apply_element(t, y)
    assert chi_apply_element(t, car_adjoint(x)) == car_adjoint(chi_apply_element(t, x))
    assert chi_apply_element(t, I) == I


def test_lifted_transform_same_action():
    u = corpus.u1()
    t = NonlinearTransform(1, u)
    lifted = NonlinearTransform(2, tensor_lift(u, 2))
    assert same_action(t, lifted, 4)


def test_float_transform_matches_exact_closed_form():
    import math

    theta = 1.0
    c, s = math.cos(theta), math.sin(theta)
    t = NonlinearTransform(2, corpus.u4(c, s))
    diff = chi_apply(t, 1) - (c * a(1) + s * adag(2))
    assert all(abs(v) <= 1e-12 for v in diff.terms.values())


def test_klein_closed_form_example3():
    t = NonlinearTransform(2, corpus.u3())
    assert chi_apply(t, 1) == klein([1]) * a(2)

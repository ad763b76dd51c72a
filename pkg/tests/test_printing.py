from fractions import Fraction

import pytest

from cuntzcar import corpus
from cuntzcar.car import CarElement, a, adag, klein, number
from cuntzcar.cuntz import CuntzElement
from cuntzcar.printing import format_car, format_coefficient, format_cuntz, format_element
from cuntzcar.rfs import context
from cuntzcar.scalars import Scalar
from cuntzcar.transform import NonlinearTransform, chi_apply

I = CarElement.identity()


def test_generator():
    assert format_element(a(1)) == "a1"
    assert format_element(a(1), "latex") == "a_1"
    assert format_element(adag(12), "latex") == "a_{12}^*"


def test_zero_and_identity():
    assert format_car(CarElement.zero()) == "0"
    assert format_car(I) == "I"
    assert format_car(-2 * I) == "-2 I"


def test_grouped_example2():
    x = chi_apply(NonlinearTransform(2, corpus.u2()), 1)
    assert format_car(x) == "a1 + (a1* - a1) a2* a2"
    assert format_car(x, latex=True) == "a_1 + (a_1^* - a_1) a_2^* a_2"


def test_expanded():
    x = a(1) + (adag(1) - a(1)) * number(2)
    assert format_car(x, "expanded") == "a1 + a1* a2* a2 - a2* a2 a1"
    with pytest.raises(ValueError):
        format_car(x, "fancy")


def test_klein_folding():
    assert format_car(klein([1]), fold_klein=True) == "exp(i π a1* a1)"
    assert format_car(klein([1]), latex=True, fold_klein=True) == "\\exp(i\\pi a_1^* a_1)"
    assert format_car(klein([1, 2]) * a(3), fold_klein=True) == "exp(i π a1* a1 + a2* a2) a3"
    assert format_car(klein([1]) * a(2), fold_klein=True) == "exp(i π a1* a1) a2"


def test_folding_keeps_non_klein_polynomials():
    assert format_car(number(1), fold_klein=True) == "a1* a1"
    x = a(1) + (adag(1) - a(1)) * number(2)
    assert format_car(x, fold_klein=True) == "a1 + (a1* - a1) a2* a2"


def test_coefficients():
    assert format_coefficient(Fraction(3, 5)) == "3/5"
    assert format_coefficient(Fraction(-3, 5), latex=True) == "-\\frac{3}{5}"
    assert format_coefficient(Scalar(1, -2)) == "(1-2i)"
    assert format_car(Scalar(0, 1) * a(1)) == "i a1"
    assert format_car(a(2) + Scalar(0, -2) * a(1)) == "-2i a1 + a2"
    assert format_car(Scalar(0, -1) * a(1), latex=True) == "-i a_1"
    assert format_coefficient(Scalar(0, 1), latex=True) == "i"
    assert format_car(Fraction(3, 5) * a(1) + Fraction(4, 5) * adag(2)) == "3/5 a1 + 4/5 a2*"
    assert format_car(0.5 * a(1)) == "0.5 a1"


def test_cuntz_notation():
    assert format_cuntz(CuntzElement.word(2, (1,), (2,))) == "s(1;2)"
    assert format_cuntz(CuntzElement.word(2, (1,), (2,)), latex=True) == "s_{1;2}"
    assert format_element(context(2).image(2)) == "s(1;3) - s(2;4)"
    assert format_cuntz(CuntzElement.identity(4)) == "I"
    assert format_cuntz(CuntzElement.generator(2, 1)) == "s(1;)"


def test_cuntz_starred_indices_in_operator_order():
    # s_1 s_2^* s_1^* is stored as nu = (1, 2) and printed in operator order
    x = CuntzElement.generator(2, 1) * CuntzElement.generator(2, 2).star * CuntzElement.generator(2, 1).star
    assert format_cuntz(x) == "s(1;21)"


def test_wide_alphabet_uses_commas():
    assert format_cuntz(CuntzElement.word(16, (10, 2), (3, 1))) == "s(10,2;1,3)"


def test_deterministic():
    x = chi_apply(NonlinearTransform(3, corpus.u5()), 3)
    first = format_car(x)
    for _ in range(3):
        y = CarElement(dict(reversed(list(x.terms.items()))))
        assert format_car(y) == first

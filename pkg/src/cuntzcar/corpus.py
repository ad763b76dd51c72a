"""Worked examples of induced transformations, transcribed as printed.

Each ``example_k`` entry gives the unitary (as the substitution
``s_i -> sum_k u_{ki} s_k``) and the printed closed form of ``chi_u(a_n)``
as a function of ``n``.  The closed forms are reference data, never an
implementation path.

The printed forms for example 5 disagree with the induced map at ``a_2``
and ``a_3``; :data:`EXAMPLE5_CORRECTED` holds forms consistent with CAR and
with the matrix oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .car import CarElement, a, adag, klein, number
from .scalars import UnitaryMatrix, permutation_unitary

__all__ = [
    "Example",
    "EXACT_POINT",
    "FLOAT_THETAS",
    "u1",
    "u2",
    "u3",
    "u4",
    "u5",
    "example1",
    "example2",
    "example3",
    "example4",
    "example5",
    "EXAMPLE5_CORRECTED",
    "examples",
]

EXACT_POINT = (Fraction(3, 5), Fraction(4, 5))
FLOAT_THETAS = (0.3, 1.0, 2.5)

I = CarElement.identity()


@dataclass(frozen=True)
class Example:
    name: str
    p: int
    unitary: UnitaryMatrix
    formula: Callable[[int], CarElement]
    modes: tuple[int, ...]


def _rotation_entries(d, i, j, c, s):
    rows = [[1 if r == k else 0 for k in range(d)] for r in range(d)]
    # s_i -> c s_i - s s_j ; s_j -> s s_i + c s_j
    rows[i - 1][i - 1] = c
    rows[j - 1][i - 1] = -s
    rows[i - 1][j - 1] = s
    rows[j - 1][j - 1] = c
    return rows


def u1(c=EXACT_POINT[0], s=EXACT_POINT[1]) -> UnitaryMatrix:
    """SO(2) rotation of ``s_1, s_2`` in U(2)."""
    return UnitaryMatrix(_rotation_entries(2, 1, 2, c, s))


def u2() -> UnitaryMatrix:
    """Transposition of ``s_3`` and ``s_4`` in U(4)."""
    return permutation_unitary([1, 2, 4, 3])


def u3() -> UnitaryMatrix:
    """Transposition of ``s_2`` and ``s_3`` in U(4)."""
    return permutation_unitary([1, 3, 2, 4])


def u4(c=EXACT_POINT[0], s=EXACT_POINT[1]) -> UnitaryMatrix:
    """SO(2) rotation of ``s_1, s_4`` in U(4)."""
    return UnitaryMatrix(_rotation_entries(4, 1, 4, c, s))


def u5() -> UnitaryMatrix:
    """Transposition of ``s_5`` and ``s_8`` in U(8)."""
    return permutation_unitary([1, 2, 3, 4, 8, 6, 7, 5])


def _trig(theta):
    if isinstance(theta, tuple):
        return theta
    return math.cos(theta), math.sin(theta)


def formula1(n: int, c=EXACT_POINT[0], s=EXACT_POINT[1]) -> CarElement:
    cos2, sin2 = c * c - s * s, 2 * s * c
    out = I
    for k in range(1, n):
        out = out * (I * cos2 - sin2 * klein(range(1, k)) * (adag(k) - a(k)))
    return out * (c * c * a(n) - s * s * adag(n) + s * c * klein(range(1, n + 1)))


def formula2(n: int) -> CarElement:
    if n % 2:
        k = klein(range(2, n, 2))
        return k * (a(n) + (adag(n) - a(n)) * number(n + 1))
    k = klein(range(1, n - 1, 2))
    return -k * (adag(n - 1) + a(n - 1)) * a(n)


def formula3(n: int) -> CarElement:
    if n % 2:
        return klein([n]) * a(n + 1)
    return klein([n]) * a(n - 1)


def formula4(n: int, c=EXACT_POINT[0], s=EXACT_POINT[1]) -> CarElement:
    if n % 2:
        return c * a(n) + s * adag(n + 1)
    return -s * adag(n - 1) + c * a(n)


def _n(i):
    return adag(i) * a(i)


def formula5(n: int) -> CarElement:
    """As printed (index ``3m-2`` in the second line of ``chi(a_{3m-1})``)."""
    m = -(-n // 3)
    x, y, z = 3 * m - 2, 3 * m - 1, 3 * m
    r = n - 3 * (m - 1)
    if r == 1:
        return a(x) - a(x) * _n(z) + (I - 2 * _n(x)) * adag(y) * _n(z)
    if r == 2:
        return a(y) - a(x) * _n(z) - adag(x) * (I - 2 * _n(y)) * _n(z)
    return -(a(x) * a(y) + _n(x) + _n(y) + adag(x) * adag(y) - 2 * _n(x) * _n(y)) * a(z)


def formula5_corrected(n: int) -> CarElement:
    m = -(-n // 3)
    x, y, z = 3 * m - 2, 3 * m - 1, 3 * m
    r = n - 3 * (m - 1)
    if r == 1:
        return formula5(n)
    if r == 2:
        return a(y) - a(y) * _n(z) - adag(x) * (I - 2 * _n(y)) * _n(z)
    return (-a(x) * a(y) + _n(x) + _n(y) + adag(x) * adag(y) - 2 * _n(x) * _n(y)) * a(z)


def example1(theta=EXACT_POINT) -> Example:
    c, s = _trig(theta)
    return Example("example 1", 1, u1(c, s), lambda n: formula1(n, c, s), (1, 2, 3))


def example2() -> Example:
    return Example("example 2", 2, u2(), formula2, (1, 2, 3, 4))


def example3() -> Example:
    return Example("example 3", 2, u3(), formula3, (1, 2, 3, 4))


def example4(theta=EXACT_POINT) -> Example:
    c, s = _trig(theta)
    return Example("example 4", 2, u4(c, s), lambda n: formula4(n, c, s), (1, 2, 3, 4))


def example5() -> Example:
    return Example("example 5", 3, u5(), formula5, (1, 2, 3))


EXAMPLE5_CORRECTED = Example("example 5 (corrected)", 3, u5(), formula5_corrected, (1, 2, 3, 4, 5, 6))


def examples(theta=EXACT_POINT) -> list[Example]:
    return [example1(theta), example2(), example3(), example4(theta), example5()]

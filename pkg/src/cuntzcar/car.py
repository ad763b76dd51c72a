"""CAR algebra elements as finite sums of normal-ordered monomials.

A monomial ``a*_{i1} ... a*_{ir} a_{j1} ... a_{js}`` has creators strictly
ascending and annihilators strictly descending.  Internally it is the pair
of bitmasks ``(creators, annihilators)`` with bit ``k`` for mode ``k``; with
this convention the adjoint of a monomial is the swapped pair, sign-free.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from . import _kernels
from ._coeffs import fast_mul, prune
from .scalars import conj, is_float

__all__ = [
    "CarElement",
    "car_product",
    "car_adjoint",
    "anticommutator",
    "commutator",
    "klein",
    "twisted_shift",
    "substitute",
    "max_mode",
    "vacuum_coefficient",
    "modes_of",
    "mask_of",
    "a",
    "adag",
    "number",
]


def mask_of(modes: Iterable[int]) -> int:
    m = 0
    for k in modes:
        if k < 1:
            raise ValueError(f"mode {k} must be >= 1")
        m |= 1 << k
    return m


def modes_of(mask: int) -> tuple[int, ...]:
    """Ascending modes set in ``mask``."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


class CarElement:
    """Finite linear combination of normal-ordered CAR monomials.

    Normal-ordered monomials are linearly independent, so the stored terms
    are already canonical and ``==`` is termwise comparison.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | None = None, *, _trusted: bool = False):
        if terms is None:
            terms = {}
        if not _trusted:
            terms = prune({(int(c), int(an)): v for (c, an), v in terms.items()})
        self._terms = terms

    # constructors ---------------------------------------------------------
    @classmethod
    def identity(cls) -> "CarElement":
        return cls({(0, 0): 1}, _trusted=True)

    @classmethod
    def zero(cls) -> "CarElement":
        return cls({}, _trusted=True)

    @classmethod
    def monomial(cls, creators: Sequence[int] = (), annihilators: Sequence[int] = (), coeff=1) -> "CarElement":
        """Normal-ordered monomial; creators ascending, annihilators descending."""
        creators, annihilators = tuple(creators), tuple(annihilators)
        if any(x >= y for x, y in zip(creators, creators[1:])):
            raise ValueError("creators must be strictly ascending")
        if any(x <= y for x, y in zip(annihilators, annihilators[1:])):
            raise ValueError("annihilators must be strictly descending")
        return cls({(mask_of(creators), mask_of(annihilators)): coeff})

    @classmethod
    def word(cls, ops: Iterable[tuple[int, bool]]) -> "CarElement":
        """Product of generators given as ``(mode, is_creator)`` in left-to-right order."""
        out = cls.identity()
        for mode, dag in ops:
            out = out * (adag(mode) if dag else a(mode))
        return out

    # inspection -----------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def monomials(self):
        """Sorted ``(creators, annihilators, coeff)`` with creators ascending, annihilators descending."""
        rows = [
            (modes_of(c), tuple(reversed(modes_of(an))), v) for (c, an), v in self._terms.items()
        ]
        rows.sort(key=lambda t: _monomial_key(t[0], t[1]))
        return rows

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_float(self) -> bool:
        return any(is_float(v) for v in self._terms.values())

    def coefficient(self, creators: Sequence[int] = (), annihilators: Sequence[int] = ()):
        return self._terms.get((mask_of(creators), mask_of(annihilators)), 0)

    # algebra --------------------------------------------------------------
    @staticmethod
    def _lift(other):
        if isinstance(other, CarElement):
            return other
        if isinstance(other, (int, float, complex)) or hasattr(other, "conjugate"):
            return CarElement({(0, 0): other})
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return CarElement(prune(out), _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return CarElement({k: -v for k, v in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, CarElement):
            return car_product(self, other)
        if isinstance(other, (int, float, complex)) or hasattr(other, "conjugate"):
            return CarElement(prune({k: v * other for k, v in self._terms.items()}), _trusted=True)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)) or hasattr(other, "conjugate"):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        out = CarElement.identity()
        for _ in range(k):
            out = out * self
        return out

    def adjoint(self) -> "CarElement":
        return car_adjoint(self)

    @property
    def star(self) -> "CarElement":
        return car_adjoint(self)

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return not (self - other)._terms

    __hash__ = None

    def __repr__(self):
        from .printing import format_car

        return f"CarElement({format_car(self, style='expanded')})"

    def __str__(self):
        from .printing import format_car

        return format_car(self)


def _monomial_key(creators, annihilators):
    return (len(creators) + len(annihilators), annihilators[::-1], creators)


def a(n: int) -> CarElement:
    """Annihilator ``a_n``."""
    return CarElement({(0, 1 << n): 1}, _trusted=True) if n >= 1 else _bad_mode(n)


def adag(n: int) -> CarElement:
    """Creator ``a_n^*``."""
    return CarElement({(1 << n, 0): 1}, _trusted=True) if n >= 1 else _bad_mode(n)


def number(n: int) -> CarElement:
    """Number operator ``a_n^* a_n``."""
    return CarElement({(1 << n, 1 << n): 1}, _trusted=True) if n >= 1 else _bad_mode(n)


def _bad_mode(n):
    raise ValueError(f"mode {n} must be >= 1")


def car_product(x: CarElement, y: CarElement) -> CarElement:
    """Normal-ordered product."""
    return CarElement(fast_mul(_kernels.car_mul, x._terms, y._terms), _trusted=True)


def car_adjoint(x: CarElement) -> CarElement:
    return CarElement({(an, c): conj(v) for (c, an), v in x._terms.items()}, _trusted=True)


def anticommutator(x: CarElement, y: CarElement) -> CarElement:
    return car_product(x, y) + car_product(y, x)


def commutator(x: CarElement, y: CarElement) -> CarElement:
    return car_product(x, y) - car_product(y, x)


@lru_cache(maxsize=256)
def _klein(mask: int) -> CarElement:
    out = CarElement.identity()
    for k in modes_of(mask):
        out = out * CarElement({(0, 0): 1, (1 << k, 1 << k): -2}, _trusted=True)
    return out


def klein(modes: Iterable[int]) -> CarElement:
    """``prod_{k in modes} (I - 2 a_k^* a_k)``, i.e. ``exp(i pi sum_k a_k^* a_k)``."""
    return _klein(mask_of(modes))


def twisted_shift(x: CarElement, p: int) -> CarElement:
    """*-endomorphism ``a_k -> a_{k+p} K_p`` with ``K_p = klein(1..p)``.

    The Klein factor commutes with every shifted generator, so a monomial of
    degree ``r`` maps to its shift times ``K_p^r``.
    """
    if p < 1:
        raise ValueError("p must be positive")
    kp = klein(range(1, p + 1))
    even: dict = {}
    odd: dict = {}
    for (c, an), v in x._terms.items():
        target = odd if ((c.bit_count() + an.bit_count()) & 1) else even
        key = (c << p, an << p)
        target[key] = target.get(key, 0) + v
    out = CarElement(even, _trusted=True)
    if odd:
        out = out + car_product(CarElement(odd, _trusted=True), kp)
    return out


def substitute(x: CarElement, image: Callable[[int], CarElement]) -> CarElement:
    """Extend ``a_n -> image(n)`` to a *-homomorphism and apply it to ``x``."""
    cache_a: dict = {}
    cache_s: dict = {}

    def img(n):
        if n not in cache_a:
            cache_a[n] = image(n)
        return cache_a[n]

    def img_star(n):
        if n not in cache_s:
            cache_s[n] = car_adjoint(img(n))
        return cache_s[n]

    out = CarElement.zero()
    for creators, annihilators, v in x.monomials():
        term = CarElement({(0, 0): v}, _trusted=True)
        for n in creators:
            term = term * img_star(n)
        for n in annihilators:
            term = term * img(n)
        out = out + term
    return out


def max_mode(x: CarElement) -> int:
    """Largest mode index appearing in a nonzero element."""
    if not x._terms:
        raise ValueError("max_mode of the zero element is undefined")
    m = 0
    for c, an in x._terms:
        m |= c | an
    return max(m.bit_length() - 1, 0)


def vacuum_coefficient(x: CarElement):
    """Coefficient of ``I``: the Fock vacuum expectation of ``x``."""
    return x._terms.get((0, 0), 0)

"""Exact complex-rational coefficients and unitary matrices.

Element coefficients are kept in one of two modes:

* exact: ``int``, :class:`fractions.Fraction` or :class:`Scalar` (a complex
  number with rational real and imaginary parts);
* float: Python ``float`` / ``complex``.

Exact values interoperate freely among themselves; mixing a :class:`Scalar`
with a float raises :class:`TypeError`.
"""

from __future__ import annotations

import math
import random
import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

__all__ = [
    "Scalar",
    "ScalarError",
    "NonUnitaryError",
    "UnitaryMatrix",
    "parse_scalar",
    "format_scalar",
    "check_unitary",
    "pythagorean_rotation",
    "permutation_unitary",
    "signed_permutation",
    "diagonal_unitary",
    "random_exact_unitary",
    "conj",
    "is_float",
    "FLOAT_TOL",
]

FLOAT_TOL = 1e-12
"""Unitarity tolerance in float mode; also the zero cut-off for float coefficients."""

Number = Union[int, Fraction, "Scalar", float, complex]


class ScalarError(ValueError):
    """Malformed scalar literal or mode violation."""


class NonUnitaryError(ValueError):
    """Matrix fails the unitarity check."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class Scalar:
    """Complex number with arbitrary-precision rational parts.

    ``Fraction`` keeps both parts reduced with a positive denominator.
    Instances are immutable and hash equal to the equivalent ``Fraction``
    when the imaginary part vanishes.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (float, complex)):
            raise TypeError("cannot mix float and exact scalars")
        return cls(x)

    # arithmetic -----------------------------------------------------------
    def _other(self, other):
        if isinstance(other, Scalar):
            return other.re, other.im
        if isinstance(other, (int, Fraction)):
            return other, 0
        if isinstance(other, (float, complex)):
            raise TypeError("cannot mix float and exact scalars")
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.re + o[0], self.im + o[1])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.re - o[0], self.im - o[1])

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(o[0] - self.re, o[1] - self.im)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        a, b = self.re, self.im
        c, d = o
        if not d:
            return Scalar(a * c, b * c)
        return Scalar(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        c, d = o
        n = c * c + d * d
        if not n:
            raise ZeroDivisionError("scalar division by zero")
        a, b = self.re, self.im
        return Scalar(Fraction(a * c + b * d) / n, Fraction(b * c - a * d) / n)

    def __rtruediv__(self, other):
        return Scalar.coerce(other) / self

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (1 / self) ** (-k)
        out, base = Scalar(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return math.sqrt(self.abs2())

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        if isinstance(other, (float, complex)):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def conj(x):
    """Complex conjugate of any supported coefficient."""
    if isinstance(x, (int, Fraction)):
        return x
    return x.conjugate()


def is_float(x) -> bool:
    return isinstance(x, (float, complex))


def simplify(x):
    """Demote a real :class:`Scalar` to ``Fraction``/``int``."""
    if isinstance(x, Scalar) and not x.im:
        x = x.re
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


# text format ---------------------------------------------------------------

_RAT = r"[+-]?\d+(?:/\d+)?"
_EXACT_RE = re.compile(
    rf"^\s*(?:(?P<re>{_RAT})(?:\s*(?P<sign>[+-])\s*(?P<im>\d+(?:/\d+)?)?\s*i)?"
    rf"|(?P<imonly>[+-]?(?:\d+(?:/\d+)?)?)\s*i)\s*$"
)
_DECIMAL_RE = re.compile(r"\d*\.\d|\d[eE]|\b(?:inf|nan)\b")


def _parse_rational(text: str) -> Fraction:
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ScalarError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def parse_scalar(text: str, mode: str = "exact"):
    """Parse ``"a/b"``, ``"a/b+c/d i"`` (exact) or a decimal literal (float mode).

    Returns a reduced :class:`Scalar` in exact mode and ``complex`` in float mode.

    >>> parse_scalar("3/5+4/5i").abs2()
    Fraction(1, 1)
    """
    if mode not in ("exact", "float"):
        raise ScalarError(f"unknown mode {mode!r}")
    text = text.strip()
    m = _EXACT_RE.match(text.replace(" ", ""))
    if mode == "exact":
        if _DECIMAL_RE.search(text):
            raise ScalarError(f"decimal literal {text!r} in exact mode")
        if not m:
            raise ScalarError(f"malformed scalar {text!r}")
        if m.group("imonly") is not None:
            s = m.group("imonly")
            im = _parse_rational(s + "1" if s in ("", "+", "-") else s)
            return Scalar(0, im)
        re_part = _parse_rational(m.group("re"))
        im = Fraction(0)
        if m.group("sign"):
            im = _parse_rational(m.group("im") or "1")
            if m.group("sign") == "-":
                im = -im
        return Scalar(re_part, im)
    # float mode: rationals are accepted and converted, decimals natively
    try:
        if m:
            return complex(parse_scalar(text, "exact"))
        return complex(text.replace(" ", "").replace("i", "j"))
    except (ValueError, ZeroDivisionError) as exc:
        raise ScalarError(f"malformed scalar {text!r}") from exc


def _fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """Inverse of :func:`parse_scalar` for exact values; ``repr`` for floats."""
    if is_float(x):
        return repr(complex(x)) if isinstance(x, complex) and x.imag else repr(float(x.real))
    x = Scalar.coerce(x)
    if not x.im:
        return _fmt_rat(x.re)
    im = ("" if abs(x.im) == 1 else _fmt_rat(abs(x.im))) + "i"
    if not x.re:
        return ("-" if x.im < 0 else "") + im
    return _fmt_rat(x.re) + ("-" if x.im < 0 else "+") + im


# matrices ------------------------------------------------------------------


def _matmul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return tuple(
        tuple(sum((a[i][t] * b[t][j] for t in range(k) if a[i][t] and b[t][j]), 0) for j in range(m))
        for i in range(n)
    )


def _dagger(a):
    return tuple(tuple(conj(a[j][i]) for j in range(len(a))) for i in range(len(a[0])))


def check_unitary(m) -> bool:
    """True iff ``m* m = I``, exactly, or within :data:`FLOAT_TOL` for float entries."""
    rows = m.entries if isinstance(m, UnitaryMatrix) else tuple(tuple(r) for r in m)
    d = len(rows)
    if d == 0 or any(len(r) != d for r in rows):
        return False
    floating = any(is_float(x) for r in rows for x in r)
    prod = _matmul(_dagger(rows), rows)
    for i in range(d):
        for j in range(d):
            want = 1 if i == j else 0
            if floating:
                if abs(complex(prod[i][j]) - want) > FLOAT_TOL:
                    return False
            elif prod[i][j] != want:
                return False
    return True


class UnitaryMatrix:
    """A ``d x d`` unitary; construction verifies unitarity.

    ``entries[k][i]`` is the coefficient ``u_{k+1, i+1}`` of ``s_{k+1}`` in
    the image of ``s_{i+1}`` under the induced automorphism.
    """

    __slots__ = ("d", "entries", "is_float", "_columns")

    def __init__(self, entries: Iterable[Sequence[Number]], *, check: bool = True):
        rows = tuple(tuple(simplify(x) if not is_float(x) else x for x in r) for r in entries)
        floating = any(is_float(x) for r in rows for x in r)
        if floating:
            if any(isinstance(x, Scalar) or isinstance(x, Fraction) for r in rows for x in r):
                raise ScalarError("cannot mix float and exact entries")
            rows = tuple(tuple(complex(x) for x in r) for r in rows)
        if check and not check_unitary(rows):
            raise NonUnitaryError("matrix is not unitary")
        object.__setattr__(self, "d", len(rows))
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "is_float", floating)
        cols = []
        for i in range(len(rows)):
            col = []
            for k in range(len(rows)):
                x = rows[k][i]
                if x if not floating else abs(x) > FLOAT_TOL:
                    col.append((k + 1, x))
            cols.append(tuple(col))
        object.__setattr__(self, "_columns", tuple(cols))

    def __setattr__(self, name, value):
        raise AttributeError("UnitaryMatrix is immutable")

    @classmethod
    def identity(cls, d: int) -> "UnitaryMatrix":
        return cls([[1 if i == j else 0 for j in range(d)] for i in range(d)], check=False)

    def column(self, i: int):
        """Nonzero ``(k, u_{k,i})`` pairs for 1-based column ``i``."""
        return self._columns[i - 1]

    def __matmul__(self, other: "UnitaryMatrix") -> "UnitaryMatrix":
        if self.d != other.d:
            raise ValueError("dimension mismatch")
        if self.is_float != other.is_float:
            raise ScalarError("cannot mix float and exact unitaries")
        return UnitaryMatrix(_matmul(self.entries, other.entries), check=False)

    def dagger(self) -> "UnitaryMatrix":
        return UnitaryMatrix(_dagger(self.entries), check=False)

    inverse = dagger

    def __eq__(self, other):
        return isinstance(other, UnitaryMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        rows = ", ".join("[" + ", ".join(format_scalar(x) for x in r) + "]" for r in self.entries)
        return f"UnitaryMatrix([{rows}])"


def pythagorean_rotation(m: int, n: int, i: int, j: int, d: int) -> UnitaryMatrix:
    """Exact Givens rotation in the ``(i, j)`` plane.

    ``cos = (m^2 - n^2)/(m^2 + n^2)``, ``sin = 2mn/(m^2 + n^2)``; the
    ``(i, j)`` block is ``[[cos, -sin], [sin, cos]]``.
    """
    if not (isinstance(m, int) and isinstance(n, int)) or n < 1 or m <= n:
        raise ValueError("need integers m > n >= 1")
    if not 1 <= i < j <= d:
        raise ValueError(f"plane ({i}, {j}) out of range for d={d}")
    h = m * m + n * n
    c, s = Fraction(m * m - n * n, h), Fraction(2 * m * n, h)
    rows = [[1 if a == b else 0 for b in range(d)] for a in range(d)]
    rows[i - 1][i - 1] = c
    rows[j - 1][j - 1] = c
    rows[i - 1][j - 1] = -s
    rows[j - 1][i - 1] = s
    return UnitaryMatrix(rows, check=False)


def permutation_unitary(images: Sequence[int]) -> UnitaryMatrix:
    """Unitary sending ``s_i`` to ``s_{images[i-1]}`` (1-based)."""
    return signed_permutation(images, [1] * len(images))


def signed_permutation(images: Sequence[int], phases: Sequence[Number]) -> UnitaryMatrix:
    """Unitary sending ``s_i`` to ``phases[i-1] * s_{images[i-1]}``."""
    d = len(images)
    if sorted(images) != list(range(1, d + 1)):
        raise ValueError("images must be a permutation of 1..d")
    rows = [[0] * d for _ in range(d)]
    for i, (k, z) in enumerate(zip(images, phases)):
        rows[k - 1][i] = z
    return UnitaryMatrix(rows)


def diagonal_unitary(phases: Sequence[Number]) -> UnitaryMatrix:
    return signed_permutation(list(range(1, len(phases) + 1)), phases)


_UNIT_PHASES = (1, -1, Scalar(0, 1), Scalar(0, -1), Scalar(Fraction(3, 5), Fraction(4, 5)))


def random_exact_unitary(d: int, rng: random.Random, *, rotations: int = 1) -> UnitaryMatrix:
    """Random phased permutation composed with Pythagorean Givens rotations."""
    images = list(range(1, d + 1))
    rng.shuffle(images)
    u = signed_permutation(images, [rng.choice(_UNIT_PHASES) for _ in range(d)])
    if d < 2:
        return u
    for _ in range(rotations):
        i, j = sorted(rng.sample(range(1, d + 1), 2))
        mm = rng.randint(2, 5)
        u = u @ pythagorean_rotation(mm, rng.randint(1, mm - 1), i, j, d)
    return u

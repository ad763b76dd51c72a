"""Coefficient housekeeping shared by the kernels and element types."""

import math
from fractions import Fraction

from .scalars import FLOAT_TOL, Scalar, simplify


def is_zero(c) -> bool:
    if isinstance(c, (float, complex)):
        return abs(c) <= FLOAT_TOL
    return not c


def prune(terms: dict) -> dict:
    """Drop vanishing coefficients in place and demote real exact scalars; returns ``terms``."""
    dead = []
    for k, c in terms.items():
        if isinstance(c, (float, complex)):
            if abs(c) <= FLOAT_TOL:
                dead.append(k)
        elif not c:
            dead.append(k)
        elif type(c) is not int:
            s = simplify(c)
            if s is not c:
                terms[k] = s
    for k in dead:
        del terms[k]
    return terms


def split_exact(terms: dict):
    """``(L, re, im)`` with integer dictionaries such that ``terms = (re + i im) / L``.

    Returns ``None`` when any coefficient is floating.
    """
    den = 1
    for c in terms.values():
        t = type(c)
        if t is int:
            continue
        if t is Fraction:
            den = math.lcm(den, c.denominator)
        elif t is Scalar:
            den = math.lcm(den, c.re.denominator, c.im.denominator)
        else:
            return None
    re, im = {}, {}
    for k, c in terms.items():
        t = type(c)
        if t is int:
            re[k] = c * den
        elif t is Fraction:
            re[k] = c.numerator * (den // c.denominator)
        else:
            if c.re:
                re[k] = c.re.numerator * (den // c.re.denominator)
            if c.im:
                im[k] = c.im.numerator * (den // c.im.denominator)
    return den, re, im


def join_exact(den: int, re: dict, im: dict) -> dict:
    """Inverse of :func:`split_exact`, with zeros dropped."""
    out = {}
    for k, v in re.items():
        if v:
            out[k] = v // den if v % den == 0 else Fraction(v, den)
    for k, v in im.items():
        if v:
            r = out.get(k, 0)
            out[k] = Scalar(r, Fraction(v, den))
    return out


def _acc(out: dict, part: dict, sign: int) -> None:
    get = out.get
    for k, v in part.items():
        out[k] = get(k, 0) + (v if sign > 0 else -v)


def fast_mul(mul, x: dict, y: dict) -> dict:
    """Run the bilinear kernel ``mul`` on integer parts when both operands are exact."""
    sx = split_exact(x)
    sy = split_exact(y) if sx is not None else None
    if sy is None:
        return mul(x, y)
    lx, xr, xi = sx
    ly, yr, yi = sy
    re, im = {}, {}
    if xr and yr:
        _acc(re, mul(xr, yr), 1)
    if xi and yi:
        _acc(re, mul(xi, yi), -1)
    if xr and yi:
        _acc(im, mul(xr, yi), 1)
    if xi and yr:
        _acc(im, mul(xi, yr), 1)
    return join_exact(lx * ly, re, im)

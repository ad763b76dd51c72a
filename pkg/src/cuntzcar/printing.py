"""Plain-text and LaTeX rendering of CAR and Cuntz elements.

Term order is deterministic.  CAR elements default to a grouped layout that
factors number operators ``a_k^* a_k`` out to the right, e.g.
``a1 + (a1* - a1) a2* a2``; ``fold_klein`` additionally rewrites factors
``prod (I - 2 a_k^* a_k)`` as ``exp(i pi sum a_k^* a_k)``.
"""

from __future__ import annotations

from fractions import Fraction

from . import _kernels
from .car import CarElement, modes_of
from .cuntz import CuntzElement
from .scalars import Scalar, format_scalar, is_float

__all__ = ["format_car", "format_cuntz", "format_element", "format_coefficient"]


# coefficients ----------------------------------------------------------------


def _negative(c) -> bool:
    """Real negative or negative pure imaginary; printed with a leading minus."""
    if is_float(c):
        c = complex(c)
        return c.real < 0 if c.imag == 0 else (c.real == 0 and c.imag < 0)
    if isinstance(c, Scalar):
        return c.re < 0 if not c.im else (not c.re and c.im < 0)
    return c < 0


def _is_one(c) -> bool:
    return c == 1


def format_coefficient(c, latex: bool = False) -> str:
    """Coefficient without sign handling; complex values are parenthesized."""
    if is_float(c):
        c = complex(c)
        if c.imag == 0:
            return f"{c.real:.12g}"
        if c.real == 0:
            return f"{c.imag:.12g}i"
        return f"({c.real:.12g}{c.imag:+.12g}i)"
    if not latex:
        s = format_scalar(c)
        return f"({s})" if isinstance(c, Scalar) and c.im and c.re else s
    if isinstance(c, Scalar) and c.im:
        re_s = _latex_rat(c.re) if c.re else ""
        im = abs(c.im)
        im_s = ("" if im == 1 else _latex_rat(im)) + "i"
        sign = "-" if c.im < 0 else ("+" if re_s else "")
        return f"({re_s}{sign}{im_s})" if re_s else f"{sign}{im_s}"
    q = c.re if isinstance(c, Scalar) else Fraction(c)
    return _latex_rat(q)


def _latex_rat(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    sign = "-" if q < 0 else ""
    return f"{sign}\\frac{{{abs(q.numerator)}}}{{{q.denominator}}}"


def _join(terms: list[tuple[object, str]], latex: bool) -> str:
    """``terms`` are ``(coeff, body)``; an empty body is the identity ``I``."""
    if not terms:
        return "0"
    out = []
    for n, (c, body) in enumerate(terms):
        neg = _negative(c)
        mag = -c if neg else c
        body = body or "I"
        if _is_one(mag):
            text = body
        else:
            text = f"{format_coefficient(mag, latex)} {body}"
        if n == 0:
            out.append(("-" if neg else "") + text)
        else:
            out.append((" - " if neg else " + ") + text)
    return "".join(out)


# CAR -------------------------------------------------------------------------


def _mode(k: int, latex: bool, star: bool) -> str:
    if latex:
        sub = str(k) if k < 10 else f"{{{k}}}"
        return f"a_{sub}^*" if star else f"a_{sub}"
    return f"a{k}*" if star else f"a{k}"


def _monomial_text(c: int, an: int, latex: bool) -> str:
    parts = [_mode(k, latex, True) for k in modes_of(c)]
    parts += [_mode(k, latex, False) for k in reversed(modes_of(an))]
    return " ".join(parts)


def _numbers_text(mask: int, latex: bool) -> str:
    return " ".join(f"{_mode(k, latex, True)} {_mode(k, latex, False)}" for k in modes_of(mask))


def _mono_sort_key(key):
    # degree, then the modes involved, then creators before annihilators
    c, an = key
    cm, am = modes_of(c), modes_of(an)
    return (len(cm) + len(am), tuple(sorted(cm + am)), len(am), am, cm)


def _split_numbers(terms: dict) -> dict:
    """``{K: {residual: coeff}}`` with ``monomial = residual * N_K``."""
    groups: dict = {}
    for (c, an), v in terms.items():
        k = c & an
        rc, ra = c & ~k, an & ~k
        if k:
            ((sign, _, _),) = _kernels.car_monomial_product(rc, ra, k, k)
            if sign < 0:
                v = -v
        groups.setdefault(k, {})[(rc, ra)] = v
    return groups


def _body(parts: list[str]) -> str:
    return " ".join(p for p in parts if p)


def format_car(x: CarElement, style: str = "grouped", *, latex: bool = False, fold_klein: bool = False) -> str:
    """Render a CAR element.

    ``style`` is ``"grouped"`` (number operators factored out) or
    ``"expanded"`` (plain normal-ordered monomials).
    """
    terms = x.terms
    if style == "expanded":
        rows = [(v, _monomial_text(c, an, latex)) for (c, an), v in sorted(terms.items(), key=lambda kv: _mono_sort_key(kv[0]))]
        return _join(rows, latex)
    if style != "grouped":
        raise ValueError(f"unknown style {style!r}")
    groups = _split_numbers(terms)
    if fold_klein:
        return _format_folded(groups, latex)
    out: list[tuple[object, str]] = []
    for k in sorted(groups, key=lambda m: (m.bit_count(), modes_of(m))):
        members = sorted(groups[k].items(), key=lambda kv: _mono_sort_key(kv[0]))
        nums = _numbers_text(k, latex)
        if not k:
            out.extend((v, _monomial_text(c, an, latex)) for (c, an), v in members)
        elif len(members) == 1:
            ((c, an), v), = members
            out.append((v, _body([_monomial_text(c, an, latex), nums])))
        else:
            inner = _join([(v, _monomial_text(c, an, latex)) for (c, an), v in members], latex)
            out.append((1, f"({inner}) {nums}"))
    return _join(out, latex)


def _format_folded(groups: dict, latex: bool) -> str:
    # invert to residual -> {K: coeff}
    by_res: dict = {}
    for k, members in groups.items():
        for res, v in members.items():
            by_res.setdefault(res, {})[k] = v
    pieces: dict = {}
    for res, poly in by_res.items():
        t = ~0
        u = 0
        for k in poly:
            t &= k
            u |= k
        s = u & ~t
        c = poly.get(t)
        ok = s and c is not None and len(poly) == 1 << s.bit_count()
        if ok:
            for k, v in poly.items():
                if k & t != t or v != c * (-2) ** (k & ~t).bit_count():
                    ok = False
                    break
        if ok:
            pieces.setdefault((s, t), {})[res] = c
        else:
            for k, v in poly.items():
                pieces.setdefault((0, k), {})[res] = v
    out: list[tuple[object, str]] = []
    for s, t in sorted(pieces, key=lambda st: (st[0].bit_count(), modes_of(st[0]), st[1].bit_count(), modes_of(st[1]))):
        members = sorted(pieces[(s, t)].items(), key=lambda kv: _mono_sort_key(kv[0]))
        kl = _klein(s, latex) if s else ""
        nums = _numbers_text(t, latex)
        if len(members) == 1:
            ((c, an), v), = members
            out.append((v, _body([kl, _monomial_text(c, an, latex), nums])))
        else:
            inner = _join([(v, _monomial_text(c, an, latex)) for (c, an), v in members], latex)
            out.append((1, _body([kl, f"({inner})", nums])))
    return _join(out, latex)


def _klein(mask: int, latex: bool) -> str:
    inner = " + ".join(f"{_mode(k, latex, True)} {_mode(k, latex, False)}" for k in modes_of(mask))
    if latex:
        return f"\\exp(i\\pi {inner})"
    return f"exp(i π {inner})"


# Cuntz -----------------------------------------------------------------------


def _indices(seq, d: int) -> str:
    if d <= 9:
        return "".join(str(i) for i in seq)
    return ",".join(str(i) for i in seq)


def _word_text(mu, nu, d: int, latex: bool) -> str:
    if not mu and not nu:
        return ""
    inside = f"{_indices(mu, d)};{_indices(tuple(reversed(nu)), d)}"
    return f"s_{{{inside}}}" if latex else f"s({inside})"


def format_cuntz(x: CuntzElement, *, latex: bool = False) -> str:
    """Render words as ``s(i1 i2 ...; jn ... j1)`` (starred indices in operator order)."""
    return _join([(v, _word_text(mu, nu, x.d, latex)) for (mu, nu), v in x.items()], latex)


def format_element(x, fmt: str = "text", **kw) -> str:
    if fmt not in ("text", "latex"):
        raise ValueError(f"unknown format {fmt!r}")
    latex = fmt == "latex"
    if isinstance(x, CarElement):
        return format_car(x, latex=latex, **kw)
    if isinstance(x, CuntzElement):
        return format_cuntz(x, latex=latex)
    raise TypeError(f"cannot format {type(x).__name__}")

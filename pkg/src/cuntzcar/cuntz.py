"""The Cuntz algebra O_d as finite linear combinations of words.

A word ``(mu, nu)`` stands for ``s_mu s_nu^*`` with ``s_mu = s_{mu_1} ... s_{mu_m}``,
so ``s_nu^* = s_{nu_n}^* ... s_{nu_1}^*``.  Its gauge grade is ``len(mu) - len(nu)``.

Balanced words of a fixed starred depth are linearly independent, so an
element is put in canonical form by padding every term of a gauge grade to
the grade's maximal starred depth (inserting ``sum_i s_i s_i^* = I``) and then
contracting complete ``sum_i w s_i s_i^* w'^*`` groups back, deepest first.
"""

from __future__ import annotations

from itertools import product as _iproduct
from typing import Iterable, Mapping

from . import _kernels
from ._coeffs import fast_mul, is_zero, prune
from ._config import guard_depth
from .scalars import FLOAT_TOL, UnitaryMatrix, conj, is_float

__all__ = [
    "CuntzElement",
    "MIXED",
    "word_product",
    "product",
    "adjoint",
    "canonical_form",
    "equal",
    "gauge_grade",
    "alpha",
    "zeta_p",
    "phi_p",
    "sign_epsilon",
    "sign_classes",
    "psi_embed",
    "tensor_lift",
    "pad",
]

MIXED = "mixed"


def _check_word(d: int, mu, nu):
    for i in mu:
        if not 1 <= i <= d:
            raise ValueError(f"generator index {i} out of range 1..{d}")
    for i in nu:
        if not 1 <= i <= d:
            raise ValueError(f"generator index {i} out of range 1..{d}")


class CuntzElement:
    """Finite linear combination of words in O_d.

    The stored terms need not be canonical; arithmetic returns canonical
    results and ``==`` compares canonical forms.
    """

    __slots__ = ("d", "_terms", "_canonical")

    def __init__(self, d: int, terms: Mapping | None = None, *, _canonical: bool = False, _trusted: bool = False):
        if d < 1:
            raise ValueError("d must be positive")
        self.d = d
        if terms is None:
            terms = {}
        if not _trusted:
            clean = {}
            for (mu, nu), c in terms.items():
                mu, nu = tuple(mu), tuple(nu)
                _check_word(d, mu, nu)
                clean[(mu, nu)] = clean.get((mu, nu), 0) + c
            terms = prune(clean)
        self._terms = terms
        self._canonical = _canonical

    # constructors ---------------------------------------------------------
    @classmethod
    def identity(cls, d: int) -> "CuntzElement":
        return cls(d, {((), ()): 1}, _canonical=True, _trusted=True)

    @classmethod
    def zero(cls, d: int) -> "CuntzElement":
        return cls(d, {}, _canonical=True, _trusted=True)

    @classmethod
    def word(cls, d: int, mu: Iterable[int] = (), nu: Iterable[int] = (), coeff=1) -> "CuntzElement":
        return cls(d, {(tuple(mu), tuple(nu)): coeff})

    @classmethod
    def generator(cls, d: int, i: int) -> "CuntzElement":
        return cls.word(d, (i,), ())

    # inspection -----------------------------------------------------------
    @property
    def terms(self) -> dict:
        """Copy of the stored ``{(mu, nu): coeff}`` mapping."""
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: _word_key(kv[0]))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(canonical_form(self)._terms)

    def is_float(self) -> bool:
        return any(is_float(c) for c in self._terms.values())

    def depth(self) -> int:
        """Largest starred length among stored terms."""
        return max((len(nu) for _, nu in self._terms), default=0)

    # algebra --------------------------------------------------------------
    def _same(self, other: "CuntzElement"):
        if not isinstance(other, CuntzElement):
            raise TypeError(f"expected CuntzElement, got {type(other).__name__}")
        if other.d != self.d:
            raise ValueError(f"mismatched algebras O_{self.d} and O_{other.d}")

    def __add__(self, other):
        if not isinstance(other, CuntzElement):
            if isinstance(other, (int, float, complex)) or hasattr(other, "conjugate"):
                other = CuntzElement.identity(self.d) * other
            else:
                return NotImplemented
        self._same(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return canonical_form(CuntzElement(self.d, prune(out), _trusted=True))

    __radd__ = __add__

    def __neg__(self):
        return CuntzElement(self.d, {k: -c for k, c in self._terms.items()}, _canonical=self._canonical, _trusted=True)

    def __sub__(self, other):
        if isinstance(other, CuntzElement):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, CuntzElement):
            return product(self, other)
        if isinstance(other, (int, float, complex)) or hasattr(other, "conjugate"):
            terms = prune({k: c * other for k, c in self._terms.items()})
            return CuntzElement(self.d, terms, _canonical=self._canonical, _trusted=True)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)) or hasattr(other, "conjugate"):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        out = CuntzElement.identity(self.d)
        for _ in range(k):
            out = out * self
        return out

    def adjoint(self) -> "CuntzElement":
        return adjoint(self)

    @property
    def star(self) -> "CuntzElement":
        return adjoint(self)

    def __eq__(self, other):
        if isinstance(other, CuntzElement):
            return other.d == self.d and equal(self, other)
        if isinstance(other, (int, float, complex)) or hasattr(other, "conjugate"):
            return equal(self, CuntzElement.identity(self.d) * other)
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        from .printing import format_cuntz

        return f"CuntzElement(d={self.d}, {format_cuntz(self)})"

    def __str__(self):
        from .printing import format_cuntz

        return format_cuntz(self)


def _word_key(w):
    mu, nu = w
    return (len(mu) - len(nu), len(nu), mu, nu)


# products ------------------------------------------------------------------


def word_product(a, b, d: int | None = None) -> CuntzElement | None:
    """Reduce the product of two words given as ``(mu, nu)`` pairs or one-term elements.

    Returns the reduced single-word element, or the zero element.
    """
    if isinstance(a, CuntzElement) or isinstance(b, CuntzElement):
        if not (isinstance(a, CuntzElement) and isinstance(b, CuntzElement)):
            raise TypeError("word_product needs two words of the same kind")
        if a.d != b.d:
            raise ValueError(f"mismatched algebras O_{a.d} and O_{b.d}")
        if len(a._terms) != 1 or len(b._terms) != 1:
            raise ValueError("word_product takes single words")
        (wa, ca), = a._terms.items()
        (wb, cb), = b._terms.items()
        w = _kernels.word_product(wa[0], wa[1], wb[0], wb[1])
        if w is None:
            return CuntzElement.zero(a.d)
        return CuntzElement(a.d, {w: ca * cb}, _trusted=True)
    mu1, nu1 = map(tuple, a)
    mu2, nu2 = map(tuple, b)
    w = _kernels.word_product(mu1, nu1, mu2, nu2)
    if d is None:
        return w
    return CuntzElement.zero(d) if w is None else CuntzElement(d, {w: 1}, _trusted=True)


def product(a: CuntzElement, b: CuntzElement) -> CuntzElement:
    """Bilinear extension of :func:`word_product`, canonicalized."""
    a._same(b)
    return canonical_form(CuntzElement(a.d, fast_mul(_kernels.cuntz_mul, a._terms, b._terms), _trusted=True))


def adjoint(a: CuntzElement) -> CuntzElement:
    """``(mu; nu) -> (nu; mu)`` with conjugated coefficients."""
    return CuntzElement(
        a.d, {(nu, mu): conj(c) for (mu, nu), c in a._terms.items()}, _canonical=a._canonical, _trusted=True
    )


# canonical form -------------------------------------------------------------


def _pad_terms(d: int, terms: dict, target: dict | None = None) -> dict:
    """Pad each grade to its maximal (or the given) starred depth."""
    by_grade: dict[int, int] = {}
    for mu, nu in terms:
        g = len(mu) - len(nu)
        if len(nu) > by_grade.get(g, -1):
            by_grade[g] = len(nu)
    if target:
        for g, m in target.items():
            if g in by_grade and m > by_grade[g]:
                by_grade[g] = m
    for g, m in by_grade.items():
        guard_depth(d, m)
    if all(len(nu) == by_grade[len(mu) - len(nu)] for mu, nu in terms):
        return dict(terms)
    out: dict = {}
    get = out.get
    idx = range(1, d + 1)
    for (mu, nu), c in terms.items():
        extra = by_grade[len(mu) - len(nu)] - len(nu)
        if not extra:
            out[(mu, nu)] = get((mu, nu), 0) + c
            continue
        for ext in _iproduct(idx, repeat=extra):
            w = (mu + ext, nu + ext)
            out[w] = get(w, 0) + c
    return prune(out)


def _coeffs_match(a, b) -> bool:
    if is_float(a) or is_float(b):
        return abs(a - b) <= FLOAT_TOL
    return a == b


def _contract(d: int, terms: dict) -> dict:
    terms = dict(terms)
    frontier = set(terms)
    while frontier:
        groups: dict = {}
        for w in frontier:
            mu, nu = w
            if mu and nu and mu[-1] == nu[-1]:
                groups.setdefault((mu[:-1], nu[:-1]), []).append(w)
        frontier = set()
        for (mu, nu), members in groups.items():
            if len(members) != d:
                continue
            c = terms[members[0]]
            if not all(_coeffs_match(terms[w], c) for w in members[1:]):
                continue
            for w in members:
                del terms[w]
            terms[(mu, nu)] = c
            frontier.add((mu, nu))
    return terms


def canonical_form(a: CuntzElement) -> CuntzElement:
    """Unique representative: pad each gauge grade to its maximal depth, collect, contract."""
    if a._canonical:
        return a
    terms = prune(_pad_terms(a.d, a._terms))
    return CuntzElement(a.d, _contract(a.d, terms), _canonical=True, _trusted=True)


def pad(a: CuntzElement, depth: int) -> CuntzElement:
    """Non-canonical copy of ``a`` with every term expanded to starred depth ``depth``.

    Terms already deeper than ``depth`` are left alone.
    """
    grades = {len(mu) - len(nu) for mu, nu in a._terms}
    return CuntzElement(a.d, _pad_terms(a.d, a._terms, {g: depth for g in grades}), _trusted=True)


def equal(a: CuntzElement, b: CuntzElement) -> bool:
    a._same(b)
    diff = dict(a._terms)
    for k, c in b._terms.items():
        diff[k] = diff.get(k, 0) - c
    prune(diff)
    return not canonical_form(CuntzElement(a.d, diff, _trusted=True))._terms


def gauge_grade(a: CuntzElement):
    """``m - n`` shared by all terms, or :data:`MIXED`."""
    c = canonical_form(a)
    grades = {len(mu) - len(nu) for mu, nu in c._terms}
    if not grades:
        raise ValueError("gauge grade of the zero element is undefined")
    if len(grades) > 1:
        return MIXED
    return grades.pop()


# U(d) action ---------------------------------------------------------------


def _as_unitary(u) -> UnitaryMatrix:
    return u if isinstance(u, UnitaryMatrix) else UnitaryMatrix(u)


def alpha(u, a: CuntzElement) -> CuntzElement:
    """Apply ``s_i -> sum_k u_{ki} s_k`` (hence ``s_i^* -> sum_k conj(u_{ki}) s_k^*``)."""
    u = _as_unitary(u)
    if u.d != a.d:
        raise ValueError(f"unitary of size {u.d} cannot act on O_{a.d}")
    cols = [None] + [u.column(i) for i in range(1, u.d + 1)]
    ccols = [None] + [tuple((k, conj(x)) for k, x in col) for col in cols[1:]]
    out: dict = {}
    get = out.get
    for (mu, nu), c in a._terms.items():
        left = _expand([cols[i] for i in mu])
        right = _expand([ccols[i] for i in nu])
        for km, x in left:
            cx = c * x
            for ln, y in right:
                w = (km, ln)
                out[w] = get(w, 0) + cx * y
    return canonical_form(CuntzElement(a.d, prune(out), _trusted=True))


def _expand(columns):
    acc = [((), 1)]
    for col in columns:
        acc = [(w + (k,), x * y) for w, x in acc for k, y in col]
    return acc


# RFS maps ----------------------------------------------------------------


def _order_for(a: CuntzElement, p: int) -> None:
    if p < 1 or a.d != 2 ** p:
        raise ValueError(f"O_{a.d} is not O_(2^{p})")


def sign_epsilon(i: int, p: int) -> int:
    """``(-1)^{sum_{m=1}^p floor((i-1)/2^{m-1})}``."""
    e = sum((i - 1) >> (m - 1) for m in range(1, p + 1))
    return -1 if e & 1 else 1


def sign_classes(p: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Index classes ``(I_+, I_-)`` of the twisted map."""
    plus = tuple(i for i in range(1, 2 ** p + 1) if sign_epsilon(i, p) > 0)
    minus = tuple(i for i in range(1, 2 ** p + 1) if sign_epsilon(i, p) < 0)
    return plus, minus


def _conjugate_sum(a: CuntzElement, signs) -> CuntzElement:
    out: dict = {}
    for i, e in enumerate(signs, start=1):
        if not e:
            continue
        pre = (i,)
        for (mu, nu), c in a._terms.items():
            w = (pre + mu, pre + nu)
            out[w] = out.get(w, 0) + (c if e > 0 else -c)
    return canonical_form(CuntzElement(a.d, prune(out), _trusted=True))


def zeta_p(a: CuntzElement, p: int) -> CuntzElement:
    """``sum_i eps_i s_i X s_i^*``."""
    _order_for(a, p)
    return _conjugate_sum(a, [sign_epsilon(i, p) for i in range(1, a.d + 1)])


def phi_p(a: CuntzElement, p: int) -> CuntzElement:
    """Canonical endomorphism ``sum_i s_i X s_i^*``."""
    _order_for(a, p)
    return _conjugate_sum(a, [1] * a.d)


# homogeneous embedding ---------------------------------------------------------


def _digits(i: int, d: int, r: int) -> tuple[int, ...]:
    n, out = i - 1, []
    for _ in range(r):
        n, j = divmod(n, d)
        out.append(j + 1)
    return tuple(out)


def psi_embed(x: CuntzElement, d: int, r: int) -> CuntzElement:
    """Send ``S_i`` in O_{d^r} to ``s_{j_1} ... s_{j_r}`` with ``i-1 = sum (j_k-1) d^{k-1}``."""
    if r < 1 or x.d != d ** r:
        raise ValueError(f"O_{x.d} is not O_({d}^{r})")
    table = [None] + [_digits(i, d, r) for i in range(1, x.d + 1)]
    out: dict = {}
    for (mu, nu), c in x._terms.items():
        w = (sum((table[i] for i in mu), ()), sum((table[i] for i in nu), ()))
        out[w] = out.get(w, 0) + c
    return canonical_form(CuntzElement(d, prune(out), _trusted=True))


def tensor_lift(u, r: int) -> UnitaryMatrix:
    """``v_{KI} = prod_m u_{k_m i_m}`` so that ``alpha_u . Psi = Psi . alpha_v``."""
    u = _as_unitary(u)
    if r < 1:
        raise ValueError("r must be positive")
    d = u.d
    n = d ** r
    digits = [_digits(i, d, r) for i in range(1, n + 1)]
    rows = []
    for k in range(n):
        row = []
        for i in range(n):
            x = 1
            for km, im in zip(digits[k], digits[i]):
                x = x * u.entries[km - 1][im - 1]
                if is_zero(x):
                    x = 0
                    break
            row.append(x)
        rows.append(row)
    return UnitaryMatrix(rows, check=False)

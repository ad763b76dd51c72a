"""The standard recursive fermion system SR_p in O_{2^p}.

``Phi(a_{p(n-1)+i}) = zeta_p^{n-1}(bold a_i)`` embeds CAR onto the gauge
invariant subalgebra.  The inverse on a balanced element ``e`` descends on
the outermost index pair::

    e = sum_{i,j} s_i s_j^* phi_p(s_i^* e s_j)

together with ``phi_p . Phi = Phi . twisted_shift`` and a table ``T_p`` with
``Phi(T_p(i, j)) = s_i s_j^*`` obtained once from an exact linear solve.
"""

from __future__ import annotations

from contextvars import ContextVar
from functools import lru_cache

from ._config import ResourceGuardError, guard_depth
from ._coeffs import prune
from .car import CarElement, car_product, twisted_shift
from .cuntz import CuntzElement, canonical_form, pad, product, zeta_p
from .linalg import SingularSystemError, invert_sparse

__all__ = [
    "RfsContext",
    "NotBalancedError",
    "boldface_generator",
    "phi_embed",
    "phi_inverse",
    "depth1_table",
    "context",
    "table_limit",
]

_table_limit: ContextVar[int] = ContextVar("table_limit", default=4)


class NotBalancedError(ValueError):
    """Element is not U(1)-invariant."""


def table_limit() -> int:
    return _table_limit.get()


def set_table_limit(p: int) -> None:
    _table_limit.set(p)


def boldface_generator(p: int, i: int) -> CuntzElement:
    """The ``i``-th generator of SR_p as an element of O_{2^p}."""
    if p < 1:
        raise ValueError("p must be positive")
    if not 1 <= i <= p:
        raise ValueError(f"generator index {i} outside 1..{p}")
    terms = {}
    for k in range(1, 2 ** (p - i) + 1):
        for l in range(1, 2 ** (i - 1) + 1):
            e = sum((l - 1) >> (m - 1) for m in range(1, i))
            mu = (2 ** i * (k - 1) + l,)
            nu = (2 ** (i - 1) * (2 * k - 1) + l,)
            terms[(mu, nu)] = -1 if e & 1 else 1
    return CuntzElement(2 ** p, terms)


class RfsContext:
    """Cached data of SR_p: generators, their ``zeta_p`` iterates and the depth-1 table.

    Caches are filled on demand and never overwritten.
    """

    def __init__(self, p: int):
        if p < 1:
            raise ValueError("p must be positive")
        self.p = p
        self.d = 2 ** p
        self.generators = tuple(boldface_generator(p, i) for i in range(1, p + 1))
        self._images: list[list[CuntzElement]] = [[g] for g in self.generators]
        self._star: dict[int, CuntzElement] = {}
        self._table = None

    def __repr__(self):
        return f"RfsContext(p={self.p})"

    def depth_of(self, n: int) -> int:
        """Starred depth of ``Phi(a_n)``."""
        return -(-n // self.p)

    def image(self, n: int) -> CuntzElement:
        """``Phi(a_n)``."""
        if n < 1:
            raise ValueError(f"mode {n} must be >= 1")
        q, i = divmod(n - 1, self.p)
        guard_depth(self.d, q + 1)
        chain = self._images[i]
        while len(chain) <= q:
            chain.append(zeta_p(chain[-1], self.p))
        return chain[q]

    def image_star(self, n: int) -> CuntzElement:
        if n not in self._star:
            self._star[n] = self.image(n).adjoint()
        return self._star[n]

    def table(self) -> dict:
        if self._table is None:
            self._table = depth1_table(self.p, self)
        return self._table


@lru_cache(maxsize=None)
def context(p: int) -> RfsContext:
    """Shared context per order."""
    return RfsContext(p)


def _ctx(ctx_or_p) -> RfsContext:
    return ctx_or_p if isinstance(ctx_or_p, RfsContext) else context(int(ctx_or_p))


def phi_embed(ctx, x: CarElement) -> CuntzElement:
    """Image of a CAR element under the *-homomorphism Phi_{SR_p}."""
    ctx = _ctx(ctx)
    out = CuntzElement.zero(ctx.d)
    for creators, annihilators, v in x.monomials():
        deepest = max(creators + annihilators, default=0)
        if deepest:
            guard_depth(ctx.d, ctx.depth_of(deepest))
        term = CuntzElement.identity(ctx.d) * v
        for n in creators:
            term = product(term, ctx.image_star(n))
        for n in annihilators:
            term = product(term, ctx.image(n))
        out = out + term
    return out


def depth1_table(p: int, ctx: RfsContext | None = None) -> dict:
    """``{(i, j): T}`` with ``Phi(T) = s_i s_j^*`` and ``T`` supported on modes 1..p."""
    if p > _table_limit.get():
        raise ResourceGuardError(f"depth-1 table for p={p} exceeds the configured limit {_table_limit.get()}")
    ctx = ctx or context(p)
    d = ctx.d
    full = 1 << (p + 1)
    basis = [(c, an) for c in range(0, full, 2) for an in range(0, full, 2)]
    words = [((i,), (j,)) for i in range(1, d + 1) for j in range(1, d + 1)]
    windex = {w: k for k, w in enumerate(words)}
    columns = []
    for c, an in basis:
        img = pad(phi_embed(ctx, CarElement({(c, an): 1}, _trusted=True)), 1)
        col = {}
        for w, v in img.terms.items():
            if w not in windex:
                raise SingularSystemError(f"image of a mode-1..p monomial left depth 1: {w}")
            col[windex[w]] = v
        columns.append(col)
    try:
        inverse = invert_sparse(columns, len(basis))
    except SingularSystemError as exc:
        raise SingularSystemError(f"depth-1 system for p={p} is singular: {exc}") from exc
    table = {}
    for k, (i_j) in enumerate(words):
        terms = {basis[b]: v for b, v in inverse[k].items()}
        table[(i_j[0][0], i_j[1][0])] = CarElement(prune(terms), _trusted=True)
    return table


def phi_inverse(ctx, e: CuntzElement, *, check: bool = False) -> CarElement:
    """Preimage of a gauge-invariant element under Phi_{SR_p}."""
    ctx = _ctx(ctx)
    if e.d != ctx.d:
        raise ValueError(f"O_{e.d} element given to SR_{ctx.p}")
    e = canonical_form(e)
    terms = e.terms
    for mu, nu in terms:
        if len(mu) != len(nu):
            raise NotBalancedError("element is not U(1)-invariant")
    if terms:
        guard_depth(ctx.d, max(len(nu) for _, nu in terms))
    table = ctx.table()
    out = _descend(terms, table, ctx.p, ctx.d)
    if check and phi_embed(ctx, out) != e:
        raise AssertionError("phi_inverse postcondition failed")
    return out


def _descend(terms: dict, table: dict, p: int, d: int) -> CarElement:
    if not terms:
        return CarElement.zero()
    scalar = terms.get(((), ()), 0)
    if len(terms) == 1 and scalar:
        return CarElement({(0, 0): scalar}, _trusted=True)
    blocks: dict = {}
    for (mu, nu), v in terms.items():
        if not mu:
            continue
        key = (mu[0], nu[0])
        sub = blocks.setdefault(key, {})
        w = (mu[1:], nu[1:])
        sub[w] = sub.get(w, 0) + v
    if scalar:
        for i in range(1, d + 1):
            sub = blocks.setdefault((i, i), {})
            sub[((), ())] = sub.get(((), ()), 0) + scalar
    out = CarElement.zero()
    for (i, j) in sorted(blocks):
        sub = prune(blocks[(i, j)])
        if not sub:
            continue
        inner = _descend(sub, table, p, d)
        if inner:
            out = out + car_product(table[(i, j)], twisted_shift(inner, p))
    return out

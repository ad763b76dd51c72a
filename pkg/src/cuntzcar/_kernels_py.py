"""Pure-Python rewriting kernels (fallback for ``_speedups``).

CAR monomials are pairs of bitmasks ``(creators, annihilators)`` with bit
``k`` standing for mode ``k``; the monomial is ``a*_{i1}..a*_{ir} a_{j1}..a_{js}``
with creators ascending and annihilators descending.

Cuntz words are pairs of index tuples ``(mu, nu)`` standing for
``s_mu s_nu^*`` where ``s_mu = s_{mu1} s_{mu2} ...``.
"""

from ._coeffs import prune

__all__ = ["car_monomial_product", "car_mul", "word_product", "cuntz_mul"]


def _submasks(x):
    k = x
    while True:
        yield k
        if not k:
            return
        k = (k - 1) & x


def _greater_pairs(xs, ys):
    """Number of pairs (x in xs, y in ys) with x > y."""
    n = 0
    while ys:
        low = ys & -ys
        n += (xs & ~((low << 1) - 1)).bit_count()
        ys ^= low
    return n


def car_monomial_product(c1, a1, c2, a2):
    """Normal-order ``(a*_{c1} a_{a1}) (a*_{c2} a_{a2})``.

    Returns a list of ``(sign, creators, annihilators)``.
    """
    if not (a1 & c2):
        if c1 & c2 or a1 & a2:
            return []
        e = a1.bit_count() * c2.bit_count() + _greater_pairs(c1, c2) + _greater_pairs(a2, a1)
        return [(-1 if e & 1 else 1, c1 | c2, a1 | a2)]
    x = a1 & c2
    # parity picked up by bringing a_k and a*_k together for each contracted k
    weight = {}
    rest = x
    while rest:
        low = rest & -rest
        below = low - 1
        weight[low] = ((a1 & below).bit_count() + (c2 & below).bit_count()) & 1
        rest ^= low
    out = []
    for k in _submasks(x):
        c2r = c2 & ~k
        a1r = a1 & ~k
        if c1 & c2r or a1r & a2:
            continue
        e = a1r.bit_count() * c2r.bit_count() + _greater_pairs(c1, c2r) + _greater_pairs(a2, a1r)
        r = k
        while r:
            low = r & -r
            e += weight[low]
            r ^= low
        out.append((-1 if e & 1 else 1, c1 | c2r, a1r | a2))
    return out


def car_mul(x, y):
    """Product of two CAR term dictionaries ``{(cmask, amask): coeff}``."""
    out = {}
    get = out.get
    for (c1, a1), u in x.items():
        for (c2, a2), v in y.items():
            uv = u * v
            for sign, c, a in car_monomial_product(c1, a1, c2, a2):
                key = (c, a)
                out[key] = get(key, 0) + (uv if sign > 0 else -uv)
    return prune(out)


def word_product(mu1, nu1, mu2, nu2):
    """Reduce ``s_mu1 s_nu1^* s_mu2 s_nu2^*``; ``None`` when it vanishes."""
    l1, l2 = len(nu1), len(mu2)
    if l1 >= l2:
        if nu1[:l2] != mu2:
            return None
        return mu1, nu2 + nu1[l2:]
    if mu2[:l1] != nu1:
        return None
    return mu1 + mu2[l1:], nu2


def cuntz_mul(x, y):
    """Product of two Cuntz term dictionaries ``{(mu, nu): coeff}`` (not canonicalized)."""
    out = {}
    get = out.get
    for (mu1, nu1), u in x.items():
        for (mu2, nu2), v in y.items():
            w = word_product(mu1, nu1, mu2, nu2)
            if w is not None:
                out[w] = get(w, 0) + u * v
    return prune(out)

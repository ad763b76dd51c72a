# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled rewriting kernels; same contract as ``_kernels_py``.

Bitmask arithmetic runs on 64-bit words; monomials touching modes >= 63
are handed back to the pure-Python kernel.
"""

from cuntzcar._coeffs import prune
from cuntzcar import _kernels_py

ctypedef unsigned long long u64

cdef u64 LIMIT = (<u64>1) << 63


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int popcount(u64 x) nogil:
    return __builtin_popcountll(x)


cdef inline int greater_pairs(u64 xs, u64 ys) nogil:
    cdef int n = 0
    cdef u64 low
    while ys:
        low = ys & (~ys + 1)
        n += popcount(xs & ~((low << 1) - 1))
        ys ^= low
    return n


cdef int monomial_product(u64 c1, u64 a1, u64 c2, u64 a2,
                          int* signs, u64* cs, u64* as_) nogil:
    """Writes up to 2^|a1 & c2| normal-ordered terms; returns the count."""
    cdef u64 x = a1 & c2
    cdef u64 k, c2r, a1r, r, low, below
    cdef int e, n = 0, w
    cdef u64 wmask = 0
    if not x:
        if (c1 & c2) or (a1 & a2):
            return 0
        e = popcount(a1) * popcount(c2) + greater_pairs(c1, c2) + greater_pairs(a2, a1)
        signs[0] = -1 if e & 1 else 1
        cs[0] = c1 | c2
        as_[0] = a1 | a2
        return 1
    r = x
    while r:
        low = r & (~r + 1)
        below = low - 1
        if (popcount(a1 & below) + popcount(c2 & below)) & 1:
            wmask |= low
        r ^= low
    k = x
    while True:
        c2r = c2 & ~k
        a1r = a1 & ~k
        if not ((c1 & c2r) or (a1r & a2)):
            e = (popcount(a1r) * popcount(c2r) + greater_pairs(c1, c2r)
                 + greater_pairs(a2, a1r) + popcount(k & wmask))
            signs[n] = -1 if e & 1 else 1
            cs[n] = c1 | c2r
            as_[n] = a1r | a2
            n += 1
        if not k:
            break
        k = (k - 1) & x
    return n


def car_monomial_product(c1, a1, c2, a2):
    if c1 >= LIMIT or a1 >= LIMIT or c2 >= LIMIT or a2 >= LIMIT:
        return _kernels_py.car_monomial_product(c1, a1, c2, a2)
    cdef int cnt = popcount(<u64>a1 & <u64>c2)
    if cnt > 20:
        return _kernels_py.car_monomial_product(c1, a1, c2, a2)
    cdef int size = 1 << cnt
    cdef int[:] signs = _int_buf(size)
    cdef u64[:] cs = _u64_buf(size)
    cdef u64[:] as_ = _u64_buf(size)
    cdef int n = monomial_product(c1, a1, c2, a2, &signs[0], &cs[0], &as_[0])
    return [(signs[i], cs[i], as_[i]) for i in range(n)]


def _int_buf(n):
    from array import array
    return array("i", [0]) * n


def _u64_buf(n):
    from array import array
    return array("Q", [0]) * n


def car_mul(dict x, dict y):
    cdef dict out = {}
    cdef u64 c1, a1, c2, a2
    cdef int n, i, cap = 1
    cdef int cnt
    cdef int[:] signs
    cdef u64[:] cs
    cdef u64[:] as_
    for (pc, pa) in x:
        if pc >= LIMIT or pa >= LIMIT:
            return _kernels_py.car_mul(x, y)
    for (pc, pa) in y:
        if pc >= LIMIT or pa >= LIMIT:
            return _kernels_py.car_mul(x, y)
    signs = _int_buf(cap)
    cs = _u64_buf(cap)
    as_ = _u64_buf(cap)
    for key1, u in x.items():
        c1 = key1[0]
        a1 = key1[1]
        for key2, v in y.items():
            c2 = key2[0]
            a2 = key2[1]
            cnt = popcount(a1 & c2)
            if cnt > 20:
                for sign, c, a in _kernels_py.car_monomial_product(c1, a1, c2, a2):
                    key = (c, a)
                    uv = u * v
                    out[key] = out.get(key, 0) + (uv if sign > 0 else -uv)
                continue
            if (1 << cnt) > cap:
                cap = 1 << cnt
                signs = _int_buf(cap)
                cs = _u64_buf(cap)
                as_ = _u64_buf(cap)
            n = monomial_product(c1, a1, c2, a2, &signs[0], &cs[0], &as_[0])
            if n == 0:
                continue
            uv = u * v
            for i in range(n):
                key = (cs[i], as_[i])
                if signs[i] > 0:
                    out[key] = out.get(key, 0) + uv
                else:
                    out[key] = out.get(key, 0) - uv
    return prune(out)


def word_product(tuple mu1, tuple nu1, tuple mu2, tuple nu2):
    cdef Py_ssize_t l1 = len(nu1), l2 = len(mu2), t
    if l1 >= l2:
        for t in range(l2):
            if nu1[t] != mu2[t]:
                return None
        return mu1, nu2 + nu1[l2:]
    for t in range(l1):
        if nu1[t] != mu2[t]:
            return None
    return mu1 + mu2[l1:], nu2


def cuntz_mul(dict x, dict y):
    cdef dict out = {}
    cdef tuple mu1, nu1, mu2, nu2
    cdef Py_ssize_t l1, l2, t, lmin
    cdef bint ok
    for key1, u in x.items():
        mu1 = key1[0]
        nu1 = key1[1]
        l1 = len(nu1)
        for key2, v in y.items():
            mu2 = key2[0]
            nu2 = key2[1]
            l2 = len(mu2)
            lmin = l1 if l1 < l2 else l2
            ok = True
            for t in range(lmin):
                if nu1[t] != mu2[t]:
                    ok = False
                    break
            if not ok:
                continue
            if l1 >= l2:
                w = (mu1, nu2 + nu1[l2:])
            else:
                w = (mu1 + mu2[l1:], nu2)
            out[w] = out.get(w, 0) + u * v
    return prune(out)

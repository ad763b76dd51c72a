"""Dense-matrix oracle: Jordan-Wigner matrices for CAR and matrix units for balanced words.

Basis states of ``N`` modes are indexed little-endian: mode 1 is the least
significant bit.  Balanced words ``s_mu s_nu^*`` of depth ``m`` in O_{2^p}
act as matrix units ``|mu><nu|`` on ``(C^{2^p})^{(x)m}`` with factor ``t``
covering modes ``p(t-1)+1 .. pt``, giving the same little-endian layout.

Matrices are numpy arrays with ``dtype=object`` holding exact coefficients,
or ``complex128`` when any coefficient is floating.
"""

from __future__ import annotations

import numpy as np

from .car import CarElement, max_mode
from .cuntz import CuntzElement, pad
from .rfs import context
from .scalars import UnitaryMatrix, conj

__all__ = [
    "MATRIX_MODES_LIMIT",
    "jw_matrix",
    "represent_car",
    "represent_balanced_word",
    "represent_balanced",
    "oracle_check_embedding",
    "oracle_chi",
    "dagger",
    "matrices_equal",
    "identity",
]

MATRIX_MODES_LIMIT = 12

_A = np.array([[0, 1], [0, 0]], dtype=object)
_Z = np.array([[1, 0], [0, -1]], dtype=object)
_I2 = np.array([[1, 0], [0, 1]], dtype=object)


def identity(dim: int) -> np.ndarray:
    out = np.zeros((dim, dim), dtype=object)
    for i in range(dim):
        out[i, i] = 1
    return out


def _kron_little_endian(factors) -> np.ndarray:
    """Kronecker product with ``factors[0]`` on the least significant bit."""
    out = np.ones((1, 1), dtype=object)
    for f in factors:
        out = np.kron(f, out)
    return out


def _guard(N: int) -> None:
    if N > MATRIX_MODES_LIMIT:
        raise ValueError(f"{N} modes exceed the dense oracle limit {MATRIX_MODES_LIMIT}")


def jw_matrix(n: int, N: int) -> np.ndarray:
    """``a_n = Z^{(x)(n-1)} (x) A (x) I^{(x)(N-n)}`` on ``N`` modes."""
    if not 1 <= n <= N:
        raise ValueError(f"mode {n} outside 1..{N}")
    _guard(N)
    return _kron_little_endian([_Z] * (n - 1) + [_A] + [_I2] * (N - n))


def dagger(m: np.ndarray) -> np.ndarray:
    out = m.T.copy()
    if out.dtype == object:
        return np.vectorize(conj, otypes=[object])(out) if out.size else out
    return out.conj()


def matrices_equal(x: np.ndarray, y: np.ndarray, tol: float | None = None) -> bool:
    if x.shape != y.shape:
        return False
    if tol is None and x.dtype == object and y.dtype == object:
        return bool(np.all(x == y))
    diff = np.asarray(x, dtype=complex) - np.asarray(y, dtype=complex)
    return bool(np.max(np.abs(diff), initial=0.0) <= (tol if tol is not None else 1e-12))


def represent_car(x: CarElement, N: int) -> np.ndarray:
    """Linear and multiplicative extension of :func:`jw_matrix`."""
    if x and max_mode(x) > N:
        raise ValueError(f"element uses mode {max_mode(x)} > N={N}")
    _guard(N)
    dim = 2 ** N
    gens = {n: jw_matrix(n, N) for n in range(1, N + 1)}
    stars = {n: gens[n].T.copy() for n in gens}
    out = np.zeros((dim, dim), dtype=object)
    for creators, annihilators, v in x.monomials():
        m = identity(dim)
        for n in creators:
            m = m.dot(stars[n])
        for n in annihilators:
            m = m.dot(gens[n])
        out = out + m * v
    return _maybe_float(out, x.is_float())


def _maybe_float(m: np.ndarray, floating: bool) -> np.ndarray:
    return m.astype(complex) if floating else m


def _index(seq, base: int) -> int:
    i = 0
    for t, j in enumerate(seq):
        i += (j - 1) * base ** t
    return i


def represent_balanced_word(mu, nu, p: int) -> np.ndarray:
    """Matrix unit ``|mu><nu|`` on ``(C^{2^p})^{(x)m}``, ``m = len(mu) = len(nu)``."""
    mu, nu = tuple(mu), tuple(nu)
    if len(mu) != len(nu):
        raise ValueError("unbalanced word")
    _guard(p * len(mu))
    d = 2 ** p
    dim = d ** len(mu)
    out = np.zeros((dim, dim), dtype=object)
    out[_index(mu, d), _index(nu, d)] = 1
    return out


def represent_balanced(e: CuntzElement, p: int, depth: int) -> np.ndarray:
    """Sum of matrix units of ``e`` padded to ``depth``."""
    if e.d != 2 ** p:
        raise ValueError(f"O_{e.d} element is not in O_(2^{p})")
    _guard(p * depth)
    d = e.d
    dim = d ** depth
    out = np.zeros((dim, dim), dtype=object)
    for (mu, nu), v in pad(e, depth).terms.items():
        if len(mu) != len(nu):
            raise ValueError("element is not balanced")
        if len(nu) != depth:
            raise ValueError(f"term deeper than {depth}")
        i, j = _index(mu, d), _index(nu, d)
        out[i, j] = out[i, j] + v
    return _maybe_float(out, e.is_float())


def oracle_check_embedding(p: int, n_max: int):
    """Compare ``Phi(a_n)`` as matrix units with ``jw_matrix(n, p*depth)`` for ``n <= n_max``.

    Each generator is checked at its own depth ``ceil(n/p)`` and at the common
    depth ``ceil(n_max/p)``.
    """
    from .transform import Report

    depth = -(-n_max // p)
    if p * depth > MATRIX_MODES_LIMIT:
        raise ValueError("matrix size guard exceeded")
    ctx = context(p)
    report = Report(f"embedding-oracle p={p}")
    for n in range(1, n_max + 1):
        own = -(-n // p)
        for m in sorted({own, depth}):
            ok = matrices_equal(represent_balanced(ctx.image(n), p, m), jw_matrix(n, p * m))
            report.add(f"Phi(a{n}) at depth {m} == JW", ok)
    return report


def _unitary_power(u: UnitaryMatrix, m: int) -> np.ndarray:
    base = np.array(u.entries, dtype=object if not u.is_float else complex)
    out = np.ones((1, 1), dtype=base.dtype)
    for _ in range(m):
        out = np.kron(base, out)
    return out


def oracle_chi(u: UnitaryMatrix, n: int) -> np.ndarray:
    """``U^{(x)m} JW(a_n) U^{(x)m *}`` at ``m = ceil(n/p)``: the matrix of ``chi_u(a_n)``."""
    p = u.d.bit_length() - 1
    m = -(-n // p)
    big = _unitary_power(u, m)
    out = big.dot(jw_matrix(n, p * m)).dot(dagger(big))
    return out.astype(complex) if u.is_float else out

"""Predicates for the stated properties of SR_p and of the twisted map.

Every function returns a :class:`~cuntzcar.transform.Report`.
"""

from __future__ import annotations

import random

from .car import CarElement, twisted_shift
from .cuntz import CuntzElement, alpha, phi_p, sign_classes, zeta_p
from .rfs import boldface_generator, context, phi_embed, phi_inverse
from .scalars import Scalar, UnitaryMatrix, random_exact_unitary
from .transform import Report

__all__ = [
    "random_balanced",
    "random_car",
    "block_unitary",
    "check_generator_relations",
    "check_zeta_anticommutes",
    "check_zeta_star",
    "check_zeta_phi",
    "check_zeta_covariance",
    "check_odd_multiplicativity",
    "check_product_identity",
    "check_shift_law",
    "check_endomorphism_law",
    "check_roundtrips",
    "all_balanced_words",
]

_COEFFS = (1, -1, 2, -3, Scalar(0, 1), Scalar(1, -2))


def random_balanced(d: int, rng: random.Random, *, max_depth: int = 2, terms: int = 3) -> CuntzElement:
    """Random balanced element: a few words of depth ``0..max_depth`` with small coefficients."""
    out = {}
    for _ in range(rng.randint(1, terms)):
        m = rng.randint(0, max_depth)
        w = (tuple(rng.randint(1, d) for _ in range(m)), tuple(rng.randint(1, d) for _ in range(m)))
        out[w] = out.get(w, 0) + rng.choice(_COEFFS)
    return CuntzElement(d, out)


def random_car(max_mode: int, rng: random.Random, *, terms: int = 3, max_degree: int = 3) -> CarElement:
    """Random CAR element built from products of generators of modes ``<= max_mode``."""
    from .car import a, adag

    out = CarElement.zero()
    for _ in range(rng.randint(1, terms)):
        term = CarElement.identity() * rng.choice(_COEFFS)
        for _ in range(rng.randint(0, max_degree)):
            n = rng.randint(1, max_mode)
            term = term * (adag(n) if rng.random() < 0.5 else a(n))
        out = out + term
    return out


def all_balanced_words(d: int, depth: int):
    """Every balanced word of exactly ``depth`` (and the identity for depth 0)."""
    import itertools

    for mu in itertools.product(range(1, d + 1), repeat=depth):
        for nu in itertools.product(range(1, d + 1), repeat=depth):
            yield CuntzElement.word(d, mu, nu)


def block_unitary(p: int, rng: random.Random) -> UnitaryMatrix:
    """Random exact unitary acting separately on the sign classes ``I_+`` and ``I_-``."""
    d = 2 ** p
    rows = [[0] * d for _ in range(d)]
    for cls in sign_classes(p):
        blk = random_exact_unitary(len(cls), rng, rotations=2)
        for r, i in enumerate(cls):
            for c, j in enumerate(cls):
                rows[i - 1][j - 1] = blk.entries[r][c]
    return UnitaryMatrix(rows)


def check_generator_relations(p: int) -> Report:
    """``{a_i, a_j} = 0`` and ``{a_i, a_j^*} = delta_ij I`` for the boldface generators."""
    rep = Report(f"generator relations p={p}")
    gens = [boldface_generator(p, i) for i in range(1, p + 1)]
    one, zero = CuntzElement.identity(2 ** p), CuntzElement.zero(2 ** p)
    for i, x in enumerate(gens, 1):
        for j, y in enumerate(gens, 1):
            rep.add(f"{{a{i}, a{j}}} = 0", x * y + y * x == zero)
            rep.add(f"{{a{i}, a{j}*}} = {int(i == j)}", x * y.star + y.star * x == (one if i == j else zero))
    return rep


def check_zeta_anticommutes(p: int, samples, label: str = "") -> Report:
    rep = Report(f"zeta anticommutes with generators p={p}")
    gens = [boldface_generator(p, i) for i in range(1, p + 1)]
    for k, x in enumerate(samples):
        z = zeta_p(x, p)
        for i, g in enumerate(gens, 1):
            rep.add(f"sample {k}: {{a{i}, zeta(X)}} = 0", not (g * z + z * g))
    return rep


def check_zeta_star(p: int, samples) -> Report:
    rep = Report(f"zeta(X)* = zeta(X*) p={p}")
    for k, x in enumerate(samples):
        rep.add(f"sample {k}", zeta_p(x, p).star == zeta_p(x.star, p))
    return rep


def check_zeta_phi(p: int, pairs) -> Report:
    rep = Report(f"zeta(X) zeta(Y) = phi(XY) p={p}")
    for k, (x, y) in enumerate(pairs):
        rep.add(f"sample {k}", zeta_p(x, p) * zeta_p(y, p) == phi_p(x * y, p))
    return rep


def check_zeta_covariance(p: int, unitaries, samples) -> Report:
    rep = Report(f"zeta covariance p={p}")
    for k, u in enumerate(unitaries):
        for m, x in enumerate(samples):
            rep.add(f"u{k} sample {m}", alpha(u, zeta_p(x, p)) == zeta_p(alpha(u, x), p))
    return rep


def check_odd_multiplicativity(p: int, triples) -> Report:
    rep = Report(f"zeta(X1 X2 X3) = zeta(X1) zeta(X2) zeta(X3) p={p}")
    for k, (x, y, z) in enumerate(triples):
        rep.add(f"sample {k}", zeta_p(x * y * z, p) == zeta_p(x, p) * zeta_p(y, p) * zeta_p(z, p))
    return rep


def check_product_identity(p: int) -> Report:
    """``a_1 ... a_p = (-1)^{floor(p/2)} s_1 s_{2^p}^*``."""
    rep = Report(f"product identity p={p}")
    prod = CuntzElement.identity(2 ** p)
    for i in range(1, p + 1):
        prod = prod * boldface_generator(p, i)
    want = CuntzElement.word(2 ** p, (1,), (2 ** p,), (-1) ** (p // 2))
    rep.add(f"a1...a{p} = {(-1) ** (p // 2):+d} s(1;{2 ** p})", prod == want, str(prod))
    return rep


def check_shift_law(p: int, n_max: int) -> Report:
    rep = Report(f"zeta(Phi(a_n)) = Phi(a_(n+p)) p={p}")
    ctx = context(p)
    for n in range(1, n_max + 1):
        rep.add(f"n={n}", zeta_p(ctx.image(n), p) == ctx.image(n + p))
    return rep


def check_endomorphism_law(p: int, samples) -> Report:
    rep = Report(f"phi(Phi(x)) = Phi(twisted_shift(x)) p={p}")
    for k, x in enumerate(samples):
        rep.add(f"sample {k}", phi_p(phi_embed(p, x), p) == phi_embed(p, twisted_shift(x, p)))
    return rep


def check_roundtrips(p: int, car_samples, depth: int = 2) -> Report:
    rep = Report(f"Phi roundtrips p={p}")
    for k, x in enumerate(car_samples):
        rep.add(f"inverse(embed(x{k})) = x{k}", phi_inverse(p, phi_embed(p, x)) == x)
    d = 2 ** p
    for m in range(depth + 1):
        bad = [w for w in all_balanced_words(d, m) if phi_embed(p, phi_inverse(p, w)) != w]
        rep.add(f"embed(inverse(w)) = w for all {d ** (2 * m)} words of depth {m}", not bad,
                f"first failure {bad[0]}" if bad else "")
    return rep

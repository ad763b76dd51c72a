"""Nonlinear CAR automorphisms ``chi_u = Phi^{-1} . alpha_u . Phi`` for ``u in U(2^p)``.

Transforms are compared extensionally on a window of generators; the
``(p, u)`` representation is not unique (``chi_u`` over ``p`` equals
``chi_{tensor_lift(u, r)}`` over ``rp``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .car import CarElement, anticommutator, car_adjoint, max_mode, vacuum_coefficient
from .cuntz import alpha, tensor_lift
from .rfs import RfsContext, context, phi_embed, phi_inverse
from .scalars import UnitaryMatrix

__all__ = [
    "NonlinearTransform",
    "Check",
    "Report",
    "chi_apply",
    "chi_apply_element",
    "compose",
    "verify_car_relations",
    "verify_group_law",
    "verify_inclusion",
    "is_vacuum_preserving",
    "same_action",
    "normal_monomials",
]


def _order_of(d: int) -> int:
    p = d.bit_length() - 1
    if p < 1 or d != 1 << p:
        raise ValueError(f"dimension {d} is not 2^p with p >= 1")
    return p


class NonlinearTransform:
    """The CAR automorphism induced by ``u in U(2^p)``; images are cached per mode."""

    __slots__ = ("p", "u", "ctx", "_cache")

    def __init__(self, p: int, u):
        if not isinstance(u, UnitaryMatrix):
            u = UnitaryMatrix(u)
        if u.d != 2 ** p:
            raise ValueError(f"unitary of size {u.d} does not match p={p}")
        self.p = p
        self.u = u
        self.ctx: RfsContext = context(p)
        self._cache: dict[int, CarElement] = {}

    @classmethod
    def from_unitary(cls, u) -> "NonlinearTransform":
        u = u if isinstance(u, UnitaryMatrix) else UnitaryMatrix(u)
        return cls(_order_of(u.d), u)

    @classmethod
    def identity(cls, p: int) -> "NonlinearTransform":
        return cls(p, UnitaryMatrix.identity(2 ** p))

    def __call__(self, x) -> CarElement:
        if isinstance(x, int):
            return chi_apply(self, x)
        return chi_apply_element(self, x)

    def __matmul__(self, other: "NonlinearTransform") -> "NonlinearTransform":
        return compose(self, other)

    def __repr__(self):
        return f"NonlinearTransform(p={self.p}, u={self.u!r})"


def chi_apply(t: NonlinearTransform, n: int) -> CarElement:
    """``chi_u(a_n)``; supported on modes ``<= p * ceil(n / p)``."""
    if n in t._cache:
        return t._cache[n]
    if n < 1:
        raise ValueError(f"mode {n} must be >= 1")
    img = phi_inverse(t.ctx, alpha(t.u, t.ctx.image(n)))
    t._cache[n] = img
    return img


def chi_apply_element(t: NonlinearTransform, x: CarElement) -> CarElement:
    return phi_inverse(t.ctx, alpha(t.u, phi_embed(t.ctx, x)))


def compose(t1: NonlinearTransform, t2: NonlinearTransform) -> NonlinearTransform:
    """``chi_{t1} . chi_{t2}`` realized over ``q = lcm(p1, p2)``."""
    q = math.lcm(t1.p, t2.p)
    v1 = t1.u if q == t1.p else tensor_lift(t1.u, q // t1.p)
    v2 = t2.u if q == t2.p else tensor_lift(t2.u, q // t2.p)
    return NonlinearTransform(q, v1 @ v2)


# reports ----------------------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class Report:
    name: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def add(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        return bool(passed)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.detail))

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checks": [c.to_dict() for c in self.checks]}

    def __str__(self):
        lines = [f"{'PASS' if c.passed else 'FAIL'} {self.name}: {c.name}" + (f" ({c.detail})" if c.detail else "")
                 for c in self.checks]
        lines.append(f"{self.name}: {sum(c.passed for c in self.checks)}/{len(self.checks)} passed")
        return "\n".join(lines)


# predicates --------------------------------------------------------------------


def verify_car_relations(t: NonlinearTransform, n_max: int) -> Report:
    """``{chi(a_m), chi(a_n)} = 0`` and ``{chi(a_m), chi(a_n)^*} = delta_mn I`` for ``m, n <= n_max``."""
    report = Report(f"car-relations p={t.p}")
    imgs = {n: chi_apply(t, n) for n in range(1, n_max + 1)}
    stars = {n: car_adjoint(x) for n, x in imgs.items()}
    one = CarElement.identity()
    for m in range(1, n_max + 1):
        for n in range(m, n_max + 1):
            report.add(f"{{chi(a{m}), chi(a{n})}} = 0", not anticommutator(imgs[m], imgs[n]))
            want = one if m == n else CarElement.zero()
            report.add(f"{{chi(a{m}), chi(a{n})*}} = {int(m == n)}", anticommutator(imgs[m], stars[n]) == want)
    return report


def same_action(t1: NonlinearTransform, t2: NonlinearTransform, n_max: int) -> bool:
    return all(chi_apply(t1, n) == chi_apply(t2, n) for n in range(1, n_max + 1))


def verify_group_law(u1, u2, n_max: int) -> bool:
    """``chi_{u1}(chi_{u2}(a_n)) = chi_{u1 u2}(a_n)`` for ``n <= n_max``."""
    t1, t2 = NonlinearTransform.from_unitary(u1), NonlinearTransform.from_unitary(u2)
    if t1.p != t2.p:
        raise ValueError("group law needs unitaries of the same order")
    t12 = NonlinearTransform(t1.p, t1.u @ t2.u)
    return all(chi_apply_element(t1, chi_apply(t2, n)) == chi_apply(t12, n) for n in range(1, n_max + 1))


def verify_inclusion(u, r: int, n_max: int) -> bool:
    """``chi`` over ``(p, u)`` equals ``chi`` over ``(rp, tensor_lift(u, r))`` on ``a_1 .. a_{n_max}``."""
    t = NonlinearTransform.from_unitary(u)
    lifted = NonlinearTransform(t.p * r, tensor_lift(t.u, r))
    return same_action(t, lifted, n_max)


def normal_monomials(n_max: int):
    """All normal-ordered monomials of modes ``1..n_max`` (``4**n_max`` of them)."""
    full = 1 << (n_max + 1)
    for c in range(0, full, 2):
        for an in range(0, full, 2):
            yield CarElement({(c, an): 1}, _trusted=True)


def is_vacuum_preserving(t: NonlinearTransform, n_max: int | None = None) -> bool:
    """Vacuum coefficients are unchanged on every monomial of modes ``<= n_max`` (default ``p``)."""
    n_max = t.p if n_max is None else n_max
    for w in normal_monomials(n_max):
        if vacuum_coefficient(chi_apply_element(t, w)) != vacuum_coefficient(w):
            return False
    return True


def locality_holds(t: NonlinearTransform, n: int) -> bool:
    img = chi_apply(t, n)
    return not img or max_mode(img) <= t.p * -(-n // t.p)

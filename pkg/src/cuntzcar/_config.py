"""Resource guard on padded word depth."""

from contextlib import contextmanager
from contextvars import ContextVar

DEFAULT_DEPTH_BITS = 8

_depth_bits: ContextVar[int] = ContextVar("depth_bits", default=DEFAULT_DEPTH_BITS)


class ResourceGuardError(RuntimeError):
    """Raised when padding would produce more than ``4**depth_bits`` potential words."""


def depth_bits() -> int:
    return _depth_bits.get()


@contextmanager
def depth_limit(bits: int):
    """Temporarily allow words whose padded depth ``m`` satisfies ``d**m <= 2**bits``."""
    if bits < 1:
        raise ValueError("depth limit must be positive")
    token = _depth_bits.set(bits)
    try:
        yield
    finally:
        _depth_bits.reset(token)


def set_depth_limit(bits: int) -> None:
    if bits < 1:
        raise ValueError("depth limit must be positive")
    _depth_bits.set(bits)


def guard_depth(d: int, depth: int) -> None:
    if d ** depth > 2 ** _depth_bits.get():
        raise ResourceGuardError(
            f"padded depth {depth} in O_{d} exceeds the depth guard "
            f"({_depth_bits.get()} bits); raise it with depth_limit()"
        )

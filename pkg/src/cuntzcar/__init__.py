"""Recursive fermion system embeddings of CAR into Cuntz algebras O_{2^p}
and the nonlinear CAR automorphisms induced by U(2^p)."""

from ._config import ResourceGuardError, depth_limit
from ._kernels import BACKEND
from .car import CarElement, a, adag, anticommutator, klein, number, twisted_shift
from .cuntz import CuntzElement, alpha, phi_p, psi_embed, tensor_lift, zeta_p
from .rfs import RfsContext, boldface_generator, phi_embed, phi_inverse
from .scalars import Scalar, UnitaryMatrix, parse_scalar, pythagorean_rotation

__all__ = [
    "BACKEND",
    "CarElement",
    "CuntzElement",
    "ResourceGuardError",
    "RfsContext",
    "Scalar",
    "UnitaryMatrix",
    "a",
    "adag",
    "alpha",
    "anticommutator",
    "boldface_generator",
    "depth_limit",
    "klein",
    "number",
    "parse_scalar",
    "phi_embed",
    "phi_inverse",
    "phi_p",
    "psi_embed",
    "pythagorean_rotation",
    "tensor_lift",
    "twisted_shift",
    "zeta_p",
]

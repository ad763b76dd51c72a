"""Kernel selection: compiled ``_speedups`` when importable, else pure Python.

Set ``CUNTZCAR_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("CUNTZCAR_PURE_PYTHON"):
    from ._kernels_py import car_monomial_product, car_mul, cuntz_mul, word_product

    BACKEND = "python"
else:
    try:
        from ._speedups import car_monomial_product, car_mul, cuntz_mul, word_product

        BACKEND = "cython"
    except ImportError:
        from ._kernels_py import car_monomial_product, car_mul, cuntz_mul, word_product

        BACKEND = "python"

__all__ = ["car_monomial_product", "car_mul", "cuntz_mul", "word_product", "BACKEND"]

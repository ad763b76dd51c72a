"""JSON formats for unitaries and for CAR / Cuntz elements.

Unitary file::

    {"d": 4, "entries": [["1", "0", ...], ...]}             # exact strings
    {"d": 2, "mode": "float", "entries": [[0.6, -0.8], ...]}  # floats or [re, im]

Element record::

    {"algebra": "car", "mode": "exact",
     "terms": [{"coefficient": "3/5", "word": {"create": [1], "annihilate": [2]}}]}
    {"algebra": "cuntz", "d": 4, "mode": "exact",
     "terms": [{"coefficient": "-1", "word": {"mu": [2], "nu": [4]}}]}

``create`` / ``annihilate`` list operators left to right; ``nu`` lists the
starred indices in the order ``s_nu^* = s*_{nu_n} ... s*_{nu_1}``, so
``{"mu": [1], "nu": [3]}`` is ``s_1 s_3^*``.  Float coefficients are
numbers or ``[re, im]`` pairs.
"""

from __future__ import annotations

import json
import os
from importlib import resources

from .car import CarElement, a, adag
from .cuntz import CuntzElement
from .scalars import NonUnitaryError, ScalarError, UnitaryMatrix, format_scalar, is_float, parse_scalar

__all__ = [
    "FormatError",
    "unitary_from_json",
    "unitary_to_json",
    "read_unitary",
    "element_to_json",
    "element_from_json",
    "dumps_element",
    "loads_element",
]


class FormatError(ValueError):
    """Malformed JSON record."""


def _parse_coeff(raw, mode: str):
    if mode == "float":
        if isinstance(raw, (list, tuple)) and len(raw) == 2:
            return complex(float(raw[0]), float(raw[1]))
        if isinstance(raw, (int, float)) and not isinstance(raw, bool):
            return complex(raw)
        if isinstance(raw, str):
            return parse_scalar(raw, "float")
        raise FormatError(f"bad float coefficient {raw!r}")
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise FormatError(f"exact coefficients are strings, got {raw!r}")
    return parse_scalar(str(raw), "exact")


def _dump_coeff(c):
    if is_float(c):
        c = complex(c)
        return [c.real, c.imag]
    return format_scalar(c)


# unitaries ----------------------------------------------------------------


def unitary_from_json(obj) -> UnitaryMatrix:
    if not isinstance(obj, dict) or "d" not in obj or "entries" not in obj:
        raise FormatError('unitary record needs "d" and "entries"')
    d, rows = obj["d"], obj["entries"]
    mode = obj.get("mode", "exact")
    if mode not in ("exact", "float"):
        raise FormatError(f"unknown mode {mode!r}")
    if not isinstance(d, int) or d < 1 or not isinstance(rows, list) or len(rows) != d:
        raise FormatError(f"expected {d} rows")
    if any(not isinstance(r, list) or len(r) != d for r in rows):
        raise FormatError(f"expected {d} entries per row")
    return UnitaryMatrix([[_parse_coeff(x, mode) for x in r] for r in rows])


def unitary_to_json(u: UnitaryMatrix) -> dict:
    out = {"d": u.d, "entries": [[_dump_coeff(x) for x in r] for r in u.entries]}
    if u.is_float:
        out["mode"] = "float"
    return out


def _resolve(path: str) -> str:
    if os.path.exists(path):
        return path
    bundled = resources.files("cuntzcar").joinpath("data", os.path.basename(path))
    if bundled.is_file():
        return str(bundled)
    raise FileNotFoundError(path)


def read_unitary(path: str) -> UnitaryMatrix:
    """Load and unitarity-check a unitary file.

    Bare names not found on disk are looked up among the bundled files
    (``swap34.json`` and friends).
    """
    with open(_resolve(path), encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: {exc}") from exc
    return unitary_from_json(obj)


# elements -----------------------------------------------------------------


def element_to_json(x) -> dict:
    mode = "float" if x.is_float() else "exact"
    if isinstance(x, CarElement):
        terms = [
            {"coefficient": _dump_coeff(v), "word": {"create": list(c), "annihilate": list(an)}}
            for c, an, v in x.monomials()
        ]
        return {"algebra": "car", "mode": mode, "terms": terms}
    if isinstance(x, CuntzElement):
        terms = [
            {"coefficient": _dump_coeff(v), "word": {"mu": list(mu), "nu": list(nu)}} for (mu, nu), v in x.items()
        ]
        return {"algebra": "cuntz", "d": x.d, "mode": mode, "terms": terms}
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _indices(word, key):
    seq = word.get(key, [])
    if not isinstance(seq, list) or any(isinstance(i, bool) or not isinstance(i, int) for i in seq):
        raise FormatError(f'"{key}" must be a list of integers')
    return seq


def element_from_json(obj):
    if not isinstance(obj, dict) or not isinstance(obj.get("terms"), list):
        raise FormatError('element record needs a "terms" list')
    mode = obj.get("mode", "exact")
    if mode not in ("exact", "float"):
        raise FormatError(f"unknown mode {mode!r}")
    algebra = obj.get("algebra")
    try:
        if algebra == "car":
            out = CarElement.zero()
            for t in obj["terms"]:
                w = t.get("word", {})
                term = CarElement.identity() * _parse_coeff(t.get("coefficient", "1"), mode)
                for n in _indices(w, "create"):
                    term = term * adag(n)
                for n in _indices(w, "annihilate"):
                    term = term * a(n)
                out = out + term
            return out
        if algebra == "cuntz":
            d = obj.get("d")
            if not isinstance(d, int) or d < 2:
                raise FormatError('cuntz record needs an integer "d" >= 2')
            terms = {}
            for t in obj["terms"]:
                w = t.get("word", {})
                key = (tuple(_indices(w, "mu")), tuple(_indices(w, "nu")))
                terms[key] = terms.get(key, 0) + _parse_coeff(t.get("coefficient", "1"), mode)
            return CuntzElement(d, terms)
    except (ScalarError, NonUnitaryError, FormatError):
        raise
    except (TypeError, AttributeError, ValueError) as exc:
        raise FormatError(str(exc)) from exc
    raise FormatError(f'unknown algebra {algebra!r} (expected "car" or "cuntz")')


def dumps_element(x) -> str:
    return json.dumps(element_to_json(x), sort_keys=True)


def loads_element(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(str(exc)) from exc
    return element_from_json(obj)

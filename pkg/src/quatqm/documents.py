"""JSON parameter documents.

Field names mirror the dataclass fields.  Complex numbers are written as
``[re, im]`` (a bare number is accepted on input), quaternions as
``[x0, x1, x2, x3]``, vectors as three numbers.  Every parse error carries the
JSON pointer of the offending value.
"""
from __future__ import annotations

import dataclasses
import json
from typing import Any

import numpy as np

from .quaternion import Quaternion
from .scattering import StepProblem
from .stationary import ConstraintViolation, FamilyTag, RhoBranch, StationaryFamily
from .time_evolution import LambdaFamily, LambdaKind


class DocumentError(ValueError):
    def __init__(self, pointer: str, message: str):
        self.pointer = pointer or "/"
        super().__init__(f"{self.pointer}: {message}")


def _ptr(base: str, key) -> str:
    return f"{base}/{str(key).replace('~', '~0').replace('/', '~1')}"


def load_document(path) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise DocumentError("", f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise DocumentError("", "top level must be an object")
    return doc


def _number(v, ptr) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise DocumentError(ptr, f"expected a number, got {json.dumps(v)}")
    return float(v)


def _vector(v, ptr, n=3) -> np.ndarray:
    if not isinstance(v, list) or len(v) != n:
        raise DocumentError(ptr, f"expected a list of {n} numbers")
    return np.array([_number(x, _ptr(ptr, i)) for i, x in enumerate(v)])


def _complex(v, ptr) -> complex:
    if isinstance(v, list):
        if len(v) == 4:
            q = _vector(v, ptr, 4)
            if q[2] or q[3]:
                raise ConstraintViolation("complex constants", f"{ptr} is quaternionic")
            return complex(q[0], q[1])
        re, im = _vector(v, ptr, 2)
        return complex(re, im)
    return complex(_number(v, ptr))


def _quaternion(v, ptr) -> Quaternion:
    return Quaternion.from_components(*_vector(v, ptr, 4))


def _encode(v) -> Any:
    if isinstance(v, Quaternion):
        return [float(c) for c in v.components()]
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, np.ndarray):
        return [float(x) for x in v]
    if hasattr(v, "value"):  # enums
        return v.value
    return v


def _decode(cls, d, ptr: str, kinds: dict) -> dict:
    if not isinstance(d, dict):
        raise DocumentError(ptr, "expected an object")
    names = {f.name for f in dataclasses.fields(cls)}
    out = {}
    for key, val in d.items():
        if key not in names:
            raise DocumentError(_ptr(ptr, key), "unknown field")
        kind = kinds.get(key, "number")
        p = _ptr(ptr, key)
        if kind == "number":
            out[key] = _number(val, p)
        elif kind == "vector":
            out[key] = _vector(val, p)
        elif kind == "complex":
            out[key] = _complex(val, p)
        elif kind == "quaternion":
            out[key] = _quaternion(val, p)
        else:
            allowed = [e.value for e in kind]
            if val not in allowed:
                raise DocumentError(p, f"expected one of {allowed}, got {json.dumps(val)}")
            out[key] = kind(val)
    return out


def _construct(cls, kwargs, ptr):
    try:
        return cls(**kwargs)
    except ConstraintViolation:
        raise
    except TypeError as exc:
        raise DocumentError(ptr, str(exc)) from None
    except ValueError as exc:
        raise DocumentError(ptr, str(exc)) from None


_LAMBDA_KINDS = {"kind": LambdaKind, "lambda0": "quaternion"}
_STATIONARY_KINDS = {"family_tag": FamilyTag, "rho_branch": RhoBranch,
                     "gamma_vec": "vector", "omega_vec": "vector", "alpha_vec": "vector", "k_vec": "vector",
                     "C1": "complex", "C2": "complex", "C3": "complex", "C4": "complex",
                     "A1": "complex", "A2": "complex"}
_STEP_KINDS = {"k_vec": "vector", "gamma_perp": "vector", "omega_perp": "vector", "alpha_k": "vector"}


def lambda_family_from_dict(d, ptr="") -> LambdaFamily:
    return _construct(LambdaFamily, _decode(LambdaFamily, d, ptr, _LAMBDA_KINDS), ptr)


def stationary_family_from_dict(d, ptr="") -> StationaryFamily:
    d = dict(d) if isinstance(d, dict) else d
    complex_E = d.pop("complex_E", None) if isinstance(d, dict) else None
    fam = _construct(StationaryFamily, _decode(StationaryFamily, d, ptr, _STATIONARY_KINDS), ptr)
    if complex_E is not None:
        e = _number(complex_E, _ptr(ptr, "complex_E"))
        if abs(e - fam.complex_E) > 1e-9 * max(1.0, abs(e)):
            raise DocumentError(_ptr(ptr, "complex_E"), f"inconsistent with k_vec (hbar^2|k|^2/2m = {fam.complex_E!r})")
    return fam


def step_problem_from_dict(d, ptr="") -> StepProblem:
    """Accepts the full field set, or the short form ``{k, gamma_perp, omega_perp, theta, ...}``."""
    if isinstance(d, dict) and "k" in d:
        short = {"k": "number", "gamma_perp": "vector", "omega_perp": "vector", "V0": "number",
                 "theta": "number", "alpha_dir": "vector", "A_k": "number", "B_k": "number",
                 "rho_q0": "number", "rho_p0": "number", "hbar": "number", "mass": "number"}
        kw = {}
        for key, val in d.items():
            if key not in short:
                raise DocumentError(_ptr(ptr, key), "unknown field")
            kw[key] = _vector(val, _ptr(ptr, key)) if short[key] == "vector" else _number(val, _ptr(ptr, key))
        for req in ("gamma_perp", "omega_perp"):
            if req not in kw:
                raise DocumentError(_ptr(ptr, req), "missing field")
        try:
            return StepProblem.build(**kw)
        except ValueError as exc:
            raise DocumentError(ptr, str(exc)) from None
    return _construct(StepProblem, _decode(StepProblem, d, ptr, _STEP_KINDS), ptr)


def to_dict(obj) -> dict:
    out = {f.name: _encode(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, StationaryFamily):
        out["complex_E"] = obj.complex_E
    return out


def get_list(doc: dict, key: str) -> list:
    v = doc.get(key, [])
    if not isinstance(v, list):
        raise DocumentError(_ptr("", key), "expected a list")
    return v

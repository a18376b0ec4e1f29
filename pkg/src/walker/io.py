"""JSON formats: metric specs, algebra specs, endomorphism lists and reports.

The layouts are documented in FORMATS.md.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from . import __version__
from .errors import PolynomialParseError, PreconditionError, SpecError
from .field import scalar_to_str
from .linalg import RationalMatrix
from .metric import WalkerMetric
from .polynomial import parse_polynomial, parse_scalar, walker_variables

__all__ = [
    "CONVENTIONS",
    "read_json",
    "metric_from_dict",
    "metric_to_dict",
    "load_metric",
    "save_metric",
    "matrix_from_json",
    "matrix_to_json",
    "algebra_from_dict",
    "pair_from_dict",
    "endomorphisms_from_dict",
    "dumps",
]

CONVENTIONS = ("component", "walker-half")


def read_json(path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise SpecError(f"cannot read {path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") \
            from None


def _poly(text, V, where):
    if isinstance(text, (int,)) and not isinstance(text, bool):
        text = str(text)
    if not isinstance(text, str):
        raise SpecError(f"field {where}: expected a polynomial string")
    try:
        return parse_polynomial(text, V)
    except PolynomialParseError as e:
        raise SpecError(f"field {where}: {e}") from None


def metric_from_dict(d: dict, warnings: list | None = None) -> WalkerMetric:
    """Build a metric from a parsed spec; ``warnings`` collects soft issues."""
    if not isinstance(d, dict):
        raise SpecError("metric spec must be a JSON object")
    n = d.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SpecError("field n: expected an integer >= 1")
    V = walker_variables(n)
    conv = d.get("convention")
    if conv is None:
        conv = "component"
        if warnings is not None and any(str(s).strip() != "0" for s in d.get("u", [])):
            warnings.append("no convention given; reading u as metric components")
    if conv not in CONVENTIONS:
        raise SpecError(f"field convention: expected one of {', '.join(CONVENTIONS)}")
    f = _poly(d.get("f", "0"), V, "f")
    u_raw = d.get("u", ["0"] * n)
    if not isinstance(u_raw, list) or len(u_raw) != n:
        raise SpecError(f"field u: expected a list of {n} polynomial strings")
    u = [_poly(s, V, f"u[{i}]") for i, s in enumerate(u_raw)]
    if conv == "walker-half":
        u = [p.scale(parse_scalar("1/2")) for p in u]
    g = gi = None
    for key in ("g", "g_inverse"):
        if key in d and d[key] is not None:
            m = d[key]
            if not isinstance(m, list) or len(m) != n or any(
                    not isinstance(r, list) or len(r) != n for r in m):
                raise SpecError(f"field {key}: expected an {n}x{n} array")
            rows = tuple(tuple(_poly(s, V, f"{key}[{i}][{j}]") for j, s in enumerate(r))
                         for i, r in enumerate(m))
            if key == "g":
                g = rows
            else:
                gi = rows
    try:
        return WalkerMetric(n, f, tuple(u), g, gi)
    except PreconditionError as e:
        raise SpecError(f"invalid metric: {e}") from None


def metric_to_dict(W: WalkerMetric, convention: str = "component") -> dict:
    if convention not in CONVENTIONS:
        raise SpecError(f"unknown convention {convention!r}")
    u = W.u if convention == "component" else tuple(p.scale(2) for p in W.u)
    d = {"n": W.n, "convention": convention, "f": str(W.f), "u": [str(p) for p in u]}
    if W.g is not None:
        d["g"] = [[str(p) for p in r] for r in W.g]
        if W.g_inverse is not None:
            d["g_inverse"] = [[str(p) for p in r] for r in W.g_inverse]
    return d


def load_metric(path, warnings: list | None = None) -> WalkerMetric:
    return metric_from_dict(read_json(path), warnings)


def save_metric(W: WalkerMetric, path, convention: str = "component") -> None:
    Path(path).write_text(dumps(metric_to_dict(W, convention)))


def _scalar(v, where):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise SpecError(f"field {where}: expected an integer or a scalar string")
    try:
        return parse_scalar(str(v))
    except PolynomialParseError as e:
        raise SpecError(f"field {where}: {e}") from None


def matrix_from_json(m, where="matrix") -> RationalMatrix:
    if not isinstance(m, list) or not m or any(not isinstance(r, list) for r in m):
        raise SpecError(f"field {where}: expected a nested list")
    return RationalMatrix([[_scalar(v, f"{where}[{i}][{j}]") for j, v in enumerate(r)]
                           for i, r in enumerate(m)])


def matrix_to_json(M: RationalMatrix) -> list:
    return [[scalar_to_str(v) for v in r] for r in M.rows]


def _matrix_list(d, key):
    mats = d.get(key)
    if not isinstance(mats, list):
        raise SpecError(f"field {key}: expected a list of matrices")
    return [matrix_from_json(m, f"{key}[{i}]") for i, m in enumerate(mats)]


def algebra_from_dict(d: dict):
    """``{"basis": [M_1, ...]}`` with square antisymmetric matrices."""
    from .liealg import LieAlgebraRep

    if not isinstance(d, dict):
        raise SpecError("algebra spec must be a JSON object")
    basis = _matrix_list(d, "basis")
    n = d.get("n", basis[0].shape[0] if basis else None)
    if n is None:
        raise SpecError("field n: required for an empty basis")
    return LieAlgebraRep(n, basis)


def pair_from_dict(d: dict):
    """``{"k": [...], "m": [...]}`` for a symmetric pair in a matrix algebra."""
    from .liealg import SymmetricPair

    if not isinstance(d, dict):
        raise SpecError("pair spec must be a JSON object")
    return SymmetricPair.from_matrices(_matrix_list(d, "k"), _matrix_list(d, "m"))


def endomorphisms_from_dict(d: dict) -> tuple[int, list]:
    """``{"n": n, "Q": [[Q_1(e_1), ..., Q_1(e_n)], ...]}``."""
    if not isinstance(d, dict):
        raise SpecError("endomorphism spec must be a JSON object")
    n = d.get("n")
    if not isinstance(n, int) or n < 1:
        raise SpecError("field n: expected an integer >= 1")
    Q = d.get("Q", [])
    if not isinstance(Q, list):
        raise SpecError("field Q: expected a list")
    out = []
    for A, q in enumerate(Q):
        if not isinstance(q, list) or len(q) != n:
            raise SpecError(f"field Q[{A}]: expected {n} matrices")
        out.append([matrix_from_json(m, f"Q[{A}][{k}]") for k, m in enumerate(q)])
    return n, out


def _default(o):
    if isinstance(o, RationalMatrix):
        return matrix_to_json(o)
    if isinstance(o, tuple):
        return list(o)
    try:
        return scalar_to_str(o)
    except (TypeError, ValueError):
        raise TypeError(f"not serializable: {type(o).__name__}") from None


def dumps(obj) -> str:
    """Deterministic JSON text (sorted keys, two-space indent, trailing newline)."""
    if isinstance(obj, dict) and "version" not in obj and obj.get("kind") == "report":
        obj = {**obj, "version": __version__}
    return json.dumps(obj, indent=2, sort_keys=True, default=_default) + "\n"

"""Scenario files: JSON descriptions of one verification problem.

A scenario nails down the ambient structure (explicit matrices or a seeded
generator), the connection, the submanifold germ, and optionally which checks
to run.  Matrices are row-major nested arrays of decimal reals, so files are
diff-friendly and language-neutral.  Parsing either produces the attached
submanifold point or fails with the path of the offending field.

Layout::

    {
      "ambient": {
        "m": 2, "kappa": 1.0, "mu_contact": 0.0, "c": 1.0,
        "phi": [[...]], "xi": [...], "hprime": [[...]]
        // or instead of phi/xi/hprime:
        "generator": {"seed": 1, "hprime_scale": 1.0, "strict_kmu": false}
      },
      "connection": {"kind": 1, "lambda1": 0.0, "lambda2": 0.0,
                     "P": [...], "D": [[...]]},        // kind 2: "a", "b"
      "submanifold": {"tangent": [[...], ...], "hhat": [[[...]], ...]},
      "checks": {"theorems": ["3.1"], "plane": [0, 1], "X": [...],
                 "k": 3, "tol": 1e-8}                  // optional
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .contact import ContactPointModel, random_point
from .connections import ConnectionSpec, first_connection, second_connection
from .errors import GeometryError, ScenarioError
from .submanifold import SubmanifoldPoint, attach

__all__ = [
    "Checks",
    "ParsedScenario",
    "parse_scenario",
    "load_scenario",
    "save_scenario",
    "scenario_from_parts",
]

KNOWN_THEOREMS = {"3.1", "3.3", "3.4", "3.5i", "3.5ii", "4.1", "4.2", "4.3", "4.4i", "4.4ii"}


@dataclass
class Checks:
    theorems: list[str] | None = None
    plane: tuple[int, int] | None = None
    X: np.ndarray | None = None
    k: int | None = None
    tol: float = 1e-8


@dataclass
class ParsedScenario:
    model: ContactPointModel
    spec: ConnectionSpec
    sub: SubmanifoldPoint
    checks: Checks
    raw: dict


def _need(data: dict, key: str, path: str):
    if key not in data:
        raise ScenarioError(f"{path}.{key}", "missing required field")
    return data[key]


def _number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(path, f"expected a number, got {type(value).__name__}")
    return float(value)


def _integer(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioError(path, f"expected an integer, got {type(value).__name__}")
    return value


def _vector(value, length: int, path: str) -> np.ndarray:
    try:
        arr = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        raise ScenarioError(path, "expected a list of numbers") from None
    if arr.ndim != 1 or arr.shape[0] != length:
        raise ScenarioError(path, f"expected a vector of length {length}, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ScenarioError(path, "entries must be finite")
    return arr


def _matrix(value, rows: int, cols: int, path: str) -> np.ndarray:
    try:
        arr = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        raise ScenarioError(path, "expected a nested list of numbers") from None
    if arr.shape != (rows, cols):
        raise ScenarioError(path, f"expected a {rows}x{cols} matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ScenarioError(path, "entries must be finite")
    return arr


def parse_scenario(data: dict) -> ParsedScenario:
    """Parse and attach a scenario dict (see the module docstring for layout)."""
    if not isinstance(data, dict):
        raise ScenarioError("$", "scenario must be a JSON object")

    amb = _need(data, "ambient", "$")
    if not isinstance(amb, dict):
        raise ScenarioError("ambient", "expected an object")
    m = _integer(_need(amb, "m", "ambient"), "ambient.m")
    if m < 1:
        raise ScenarioError("ambient.m", "must be >= 1")
    d = 2 * m + 1
    kappa = _number(_need(amb, "kappa", "ambient"), "ambient.kappa")
    mu_contact = _number(_need(amb, "mu_contact", "ambient"), "ambient.mu_contact")
    c = _number(_need(amb, "c", "ambient"), "ambient.c")
    if "generator" in amb:
        gen = amb["generator"]
        if not isinstance(gen, dict):
            raise ScenarioError("ambient.generator", "expected an object")
        seed = _integer(_need(gen, "seed", "ambient.generator"), "ambient.generator.seed")
        scale = _number(gen.get("hprime_scale", 1.0), "ambient.generator.hprime_scale")
        strict = bool(gen.get("strict_kmu", False))
        try:
            model = random_point(m, kappa, mu_contact, c, seed, scale, strict)
        except ValueError as exc:
            raise ScenarioError("ambient.generator", str(exc)) from None
    else:
        phi = _matrix(_need(amb, "phi", "ambient"), d, d, "ambient.phi")
        xi = _vector(_need(amb, "xi", "ambient"), d, "ambient.xi")
        hprime = _matrix(_need(amb, "hprime", "ambient"), d, d, "ambient.hprime")
        model = ContactPointModel(m=m, phi=phi, xi=xi, hprime=hprime,
                                  kappa=kappa, mu_contact=mu_contact, c=c)

    con = _need(data, "connection", "$")
    if not isinstance(con, dict):
        raise ScenarioError("connection", "expected an object")
    kind = _integer(_need(con, "kind", "connection"), "connection.kind")
    P = _vector(_need(con, "P", "connection"), d, "connection.P")
    D = _matrix(_need(con, "D", "connection"), d, d, "connection.D")
    try:
        if kind == 1:
            spec = first_connection(
                _number(_need(con, "lambda1", "connection"), "connection.lambda1"),
                _number(_need(con, "lambda2", "connection"), "connection.lambda2"),
                P, D,
            )
        elif kind == 2:
            spec = second_connection(
                _number(_need(con, "a", "connection"), "connection.a"),
                _number(_need(con, "b", "connection"), "connection.b"),
                P, D,
            )
        else:
            raise ScenarioError("connection.kind", "must be 1 or 2")
    except ValueError as exc:
        raise ScenarioError("connection", str(exc)) from None

    subm = _need(data, "submanifold", "$")
    if not isinstance(subm, dict):
        raise ScenarioError("submanifold", "expected an object")
    tangent_raw = _need(subm, "tangent", "submanifold")
    if not isinstance(tangent_raw, list) or not tangent_raw:
        raise ScenarioError("submanifold.tangent", "expected a non-empty list of vectors")
    n = len(tangent_raw)
    tangent = np.stack([
        _vector(v, d, f"submanifold.tangent[{i}]") for i, v in enumerate(tangent_raw)
    ])
    if not 3 <= n < d:
        raise ScenarioError("submanifold.tangent", f"need 3 <= n < {d}, got n = {n}")
    p = d - n
    hhat_raw = _need(subm, "hhat", "submanifold")
    if not isinstance(hhat_raw, list) or len(hhat_raw) != p:
        raise ScenarioError("submanifold.hhat", f"expected {p} matrices (one per normal direction)")
    hhat = np.stack([
        _matrix(h, n, n, f"submanifold.hhat[{r}]") for r, h in enumerate(hhat_raw)
    ])

    try:
        sub = attach(model, spec, tangent, hhat)
    except GeometryError as exc:
        raise ScenarioError("submanifold", str(exc)) from None

    checks = Checks()
    if "checks" in data:
        ch = data["checks"]
        if not isinstance(ch, dict):
            raise ScenarioError("checks", "expected an object")
        if "theorems" in ch:
            ids = ch["theorems"]
            if not isinstance(ids, list):
                raise ScenarioError("checks.theorems", "expected a list of ids")
            for t in ids:
                if t not in KNOWN_THEOREMS:
                    raise ScenarioError("checks.theorems", f"unknown theorem id {t!r}")
            checks.theorems = list(ids)
        if "plane" in ch:
            pl = ch["plane"]
            if (not isinstance(pl, list)) or len(pl) != 2:
                raise ScenarioError("checks.plane", "expected a pair of frame indices")
            i, j = (_integer(v, f"checks.plane[{k}]") for k, v in enumerate(pl))
            if not (0 <= i < n and 0 <= j < n and i != j):
                raise ScenarioError("checks.plane", f"indices must be distinct and < {n}")
            checks.plane = (i, j)
        if "X" in ch:
            checks.X = _vector(ch["X"], d, "checks.X")
        if "k" in ch:
            kk = _integer(ch["k"], "checks.k")
            if not 2 <= kk <= n:
                raise ScenarioError("checks.k", f"need 2 <= k <= {n}")
            checks.k = kk
        if "tol" in ch:
            checks.tol = _number(ch["tol"], "checks.tol")

    return ParsedScenario(model=model, spec=spec, sub=sub, checks=checks, raw=data)


def scenario_from_parts(
    model: ContactPointModel,
    spec: ConnectionSpec,
    tangent: np.ndarray,
    hhat: np.ndarray,
    checks: dict | None = None,
) -> dict:
    """Scenario dict with fully explicit matrices (self-contained on disk)."""
    con: dict = {"kind": spec.kind, "P": spec.P.tolist(), "D": spec.D.tolist()}
    if spec.kind == 1:
        con["lambda1"], con["lambda2"] = spec.lambda1, spec.lambda2
    else:
        con["a"], con["b"] = spec.a, spec.b
    data = {
        "ambient": {
            "m": model.m,
            "kappa": model.kappa,
            "mu_contact": model.mu_contact,
            "c": model.c,
            "phi": model.phi.tolist(),
            "xi": model.xi.tolist(),
            "hprime": model.hprime.tolist(),
        },
        "connection": con,
        "submanifold": {
            "tangent": np.asarray(tangent, float).tolist(),
            "hhat": np.asarray(hhat, float).tolist(),
        },
    }
    if checks:
        data["checks"] = checks
    return data


def load_scenario(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError("$", f"cannot read {path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError("$", f"invalid JSON: {exc}") from None


def save_scenario(path, data: dict):
    Path(path).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8")

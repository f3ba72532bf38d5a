"""JSON documents describing rings, bimodules and maps.

A ring is a constructor tree::

    {"kind": "trivial_extension",
     "base": {"kind": "zn", "n": 4},
     "module": {"kind": "zn", "m": 2}}

Ring kinds: ``zn``, ``product``, ``table``, ``trivial_extension``,
``triangular``, ``upper_triangular``. Module kinds (always built over a
given left and right ring): ``regular``, ``zn``, ``zero``, ``table``,
``row``. Maps are given by generator images, optionally with a degree::

    {"images": [[0, 0], [0, 1]], "degree": 0}
    {"kind": "biadditive", "images": [[[0, 0], ...], ...]}

Errors carry a dotted location such as ``ring.module.m``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .abelian import BoundExceeded, GroupMismatch, OrderConstraintError
from .finring import (
    Bimodule,
    FinRing,
    RingMismatch,
    TriangularRing,
    TrivialExtension,
    product_ring,
    regular_bimodule,
    row_bimodule,
    table_bimodule,
    table_ring,
    upper_triangular_tn,
    zero_bimodule,
    zn_bimodule,
    zn_ring,
)
from .maps import AdditiveMap, BiadditiveMap, biadditive_from_images, map_from_generator_images
from .verdict import AxiomViolation

SCHEMA_VERSION = 1


class ConfigError(ValueError):
    """Malformed or invalid document; ``where`` is a dotted path into it."""

    def __init__(self, where: str, message: str, witness=None):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where
        self.witness = witness


def _get(node: Any, key: str, where: str, kind: type | tuple = object):
    if not isinstance(node, dict):
        raise ConfigError(where, "expected an object")
    if key not in node:
        raise ConfigError(f"{where}.{key}" if where else key, "missing")
    value = node[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise ConfigError(f"{where}.{key}", f"expected an integer, got {value!r}")
    if kind is not object and kind is not int and not isinstance(value, kind):
        raise ConfigError(f"{where}.{key}", f"expected {getattr(kind, '__name__', kind)}, got {type(value).__name__}")
    return value


def _guard(where: str, fn, *args):
    """Call a constructor, turning library errors into located config errors."""
    try:
        return fn(*args)
    except AxiomViolation as exc:
        raise ConfigError(where, str(exc), exc.verdict.witness) from exc
    except (GroupMismatch, OrderConstraintError, RingMismatch, BoundExceeded, ValueError) as exc:
        raise ConfigError(where, str(exc)) from exc


@dataclass
class BuiltRing:
    """A ring together with the construction object it came from (if any)."""

    ring: FinRing
    construction: Any = None
    expr: dict = field(default_factory=dict)


def build_ring(expr: Any, where: str = "ring") -> BuiltRing:
    kind = _get(expr, "kind", where, str)
    if kind == "zn":
        n = _get(expr, "n", where, int)
        if n < 1:
            raise ConfigError(f"{where}.n", "must be at least 1")
        return BuiltRing(zn_ring(n), None, expr)
    if kind == "product":
        left = build_ring(_get(expr, "left", where), f"{where}.left").ring
        right = build_ring(_get(expr, "right", where), f"{where}.right").ring
        ring = product_ring(left, right)
        return BuiltRing(ring, ring.construction, expr)
    if kind == "table":
        ring = _guard(
            where, table_ring, _get(expr, "factors", where, list), _get(expr, "structure", where, list),
            _get(expr, "one", where, list), expr.get("name"),
        )
        return BuiltRing(ring, None, expr)
    if kind == "trivial_extension":
        base = build_ring(_get(expr, "base", where), f"{where}.base").ring
        module = build_module(_get(expr, "module", where), base, base, f"{where}.module")
        T = _guard(where, TrivialExtension, base, module)
        return BuiltRing(T.ring, T, expr)
    if kind == "triangular":
        R = build_ring(_get(expr, "left", where), f"{where}.left").ring
        S = build_ring(_get(expr, "right", where), f"{where}.right").ring
        M = build_module(_get(expr, "module", where), R, S, f"{where}.module")
        T = _guard(where, TriangularRing, R, M, S)
        return BuiltRing(T.ring, T, expr)
    if kind == "upper_triangular":
        R = build_ring(_get(expr, "base", where), f"{where}.base").ring
        n = _get(expr, "n", where, int)
        if n < 1:
            raise ConfigError(f"{where}.n", "must be at least 1")
        T = _guard(where, upper_triangular_tn, R, n)
        return BuiltRing(T.ring, T, expr)
    raise ConfigError(f"{where}.kind", f"unknown ring kind {kind!r}")


def build_module(expr: Any, R: FinRing, S: FinRing, where: str = "module") -> Bimodule:
    kind = _get(expr, "kind", where, str)
    if kind == "regular":
        if R != S:
            raise ConfigError(where, f"regular bimodule needs equal rings, got {R.name} and {S.name}")
        return regular_bimodule(R)
    if kind == "zn":
        return _guard(where, zn_bimodule, _get(expr, "m", where, int), R, S)
    if kind == "zero":
        return zero_bimodule(R, S)
    if kind == "table":
        return _guard(
            where, table_bimodule, _get(expr, "factors", where, list), R, S,
            _get(expr, "left", where, list), _get(expr, "right", where, list), expr.get("name"),
        )
    if kind == "row":
        n = _get(expr, "n", where, int)
        if n < 2:
            raise ConfigError(f"{where}.n", "row module needs n >= 2")
        M = row_bimodule(R, n)
        if M.right_ring != S:
            raise ConfigError(where, f"row module acts on the right by {M.right_ring.name}, not {S.name}")
        return M
    raise ConfigError(f"{where}.kind", f"unknown module kind {kind!r}")


@dataclass
class MapSpec:
    """A parsed map document: additive (with optional degree) or biadditive."""

    name: str
    obj: AdditiveMap | BiadditiveMap
    degree: int | None = None

    @property
    def biadditive(self) -> bool:
        return isinstance(self.obj, BiadditiveMap)


def build_map(doc: Any, ring: FinRing, name: str = "map", where: str = "map") -> MapSpec:
    images = _get(doc, "images", where, list)
    kind = doc.get("kind", "additive")
    degree = doc.get("degree")
    if degree is not None and degree not in (0, 1):
        raise ConfigError(f"{where}.degree", "must be 0 or 1")
    g = ring.carrier
    try:
        if kind == "biadditive":
            return MapSpec(name, biadditive_from_images(g, g, g, images), degree)
        if kind == "additive":
            return MapSpec(name, map_from_generator_images(g, g, images), degree)
    except (OrderConstraintError, GroupMismatch, ValueError) as exc:
        raise ConfigError(f"{where}.images", f"does not define a map on {ring.name}: {exc}") from exc
    raise ConfigError(f"{where}.kind", f"unknown map kind {kind!r}")


def load_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError("", f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from exc


@dataclass
class Config:
    ring: BuiltRing
    maps: dict[str, MapSpec]
    raw: dict


def load_config(path: str | Path) -> Config:
    doc = load_json(path)
    if not isinstance(doc, dict):
        raise ConfigError("", "top level must be an object")
    built = build_ring(_get(doc, "ring", ""), "ring")
    maps = {}
    for name, mdoc in (doc.get("maps") or {}).items():
        maps[name] = build_map(mdoc, built.ring, name, f"maps.{name}")
    return Config(built, maps, doc)


def resolve_map(cfg: Config, ref: str) -> MapSpec:
    """A map named in the config, or else a path to a map document."""
    if ref in cfg.maps:
        return cfg.maps[ref]
    doc = load_json(ref)
    return build_map(doc, cfg.ring.ring, Path(ref).stem, ref)

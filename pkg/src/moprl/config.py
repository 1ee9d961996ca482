"""Run configuration: strict JSON with rationals as ``"p/q"`` strings.

Floating-point literals are rejected at parse time and unknown keys are
rejected with the dotted path of the offending field, so a configuration
either describes an exact system or fails loudly.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any

from .errors import MeasureError, MoprlError
from .measures import (
    DiscreteMeasure,
    Interval,
    MeasureSystem,
    SystemKind,
    make_angelesco,
    make_at_cauchy,
    make_explicit,
    make_nikishin,
)
from .mop_solver import MultiIndex
from .poly_core import Polynomial

RATIONAL = re.compile(r"-?[0-9]+(/[1-9][0-9]*)?")

KINDS = {
    "explicit": SystemKind.EXPLICIT,
    "angelesco": SystemKind.ANGELESCO,
    "at": SystemKind.AT_CAUCHY_VANDERMONDE,
    "nikishin": SystemKind.NIKISHIN,
}
KIND_NAMES = {v: k for k, v in KINDS.items()}

OPTION_KEYS = {
    "max_k", "width", "precision", "criterion", "slot", "second_slot", "steps",
    "type", "q", "phis", "psis", "A", "p", "conditions", "trials",
}


class ConfigError(MoprlError, ValueError):
    """Malformed configuration; the message names the line or field at fault."""


def _reject_float(text: str):
    raise ConfigError(f"floating-point literal {text} not allowed; write rationals as \"p/q\" strings")


def parse_rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool):
        raise ConfigError(f"{where}: expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str) or not RATIONAL.fullmatch(value):
        raise ConfigError(f"{where}: expected a rational string like \"-3/4\", got {value!r}")
    return Fraction(value)


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def _expect(obj: Any, kind: type, where: str):
    if not isinstance(obj, kind) or isinstance(obj, bool):
        raise ConfigError(f"{where}: expected {kind.__name__}, got {type(obj).__name__}")
    return obj


def _check_keys(obj: dict, allowed: set[str], where: str) -> None:
    extra = sorted(set(obj) - allowed)
    if extra:
        raise ConfigError(f"{where}: unknown field(s) {', '.join(extra)}")


def _int(value: Any, where: str, minimum: int = 0) -> int:
    _expect(value, int, where)
    if value < minimum:
        raise ConfigError(f"{where}: must be >= {minimum}")
    return value


def _measure(obj: Any, where: str) -> DiscreteMeasure:
    _expect(obj, dict, where)
    _check_keys(obj, {"atoms", "interval"}, where)
    if "atoms" not in obj:
        raise ConfigError(f"{where}: missing field atoms")
    atoms = []
    for i, pair in enumerate(_expect(obj["atoms"], list, f"{where}.atoms")):
        w = f"{where}.atoms[{i}]"
        if not isinstance(pair, list) or len(pair) != 2:
            raise ConfigError(f"{w}: expected a [point, weight] pair")
        atoms.append((parse_rational(pair[0], f"{w}[0]"), parse_rational(pair[1], f"{w}[1]")))
    interval = None
    if "interval" in obj:
        iv = obj["interval"]
        if not isinstance(iv, list) or len(iv) != 2:
            raise ConfigError(f"{where}.interval: expected [lo, hi]")
        interval = (parse_rational(iv[0], f"{where}.interval[0]"), parse_rational(iv[1], f"{where}.interval[1]"))
    try:
        return DiscreteMeasure(tuple(atoms), interval)
    except (MeasureError, ValueError) as exc:
        raise ConfigError(f"{where}: {exc}") from None


def parse_system(obj: Any, where: str = "system") -> MeasureSystem:
    _expect(obj, dict, where)
    _check_keys(obj, {"kind", "measures", "poles", "sigmas"}, where)
    kind_name = obj.get("kind")
    if kind_name not in KINDS:
        raise ConfigError(f"{where}.kind: expected one of {', '.join(sorted(KINDS))}, got {kind_name!r}")
    kind = KINDS[kind_name]
    allowed = {
        SystemKind.EXPLICIT: {"kind", "measures"},
        SystemKind.ANGELESCO: {"kind", "measures"},
        SystemKind.AT_CAUCHY_VANDERMONDE: {"kind", "measures", "poles"},
        SystemKind.NIKISHIN: {"kind", "sigmas"},
    }[kind]
    _check_keys(obj, allowed, f"{where} (kind {kind_name})")
    key = "sigmas" if kind is SystemKind.NIKISHIN else "measures"
    if key not in obj:
        raise ConfigError(f"{where}: missing field {key}")
    items = _expect(obj[key], list, f"{where}.{key}")
    measures = [_measure(m, f"{where}.{key}[{i}]") for i, m in enumerate(items)]
    if not measures:
        raise ConfigError(f"{where}.{key}: need at least one measure")
    try:
        if kind is SystemKind.EXPLICIT:
            return make_explicit(measures)
        if kind is SystemKind.ANGELESCO:
            return make_angelesco(measures)
        if kind is SystemKind.NIKISHIN:
            return make_nikishin(measures)
        if len(measures) != 1:
            raise ConfigError(f"{where}.measures: AT systems take exactly one base measure")
        poles = [parse_rational(b, f"{where}.poles[{i}]")
                 for i, b in enumerate(_expect(obj.get("poles"), list, f"{where}.poles"))]
        return make_at_cauchy(measures[0], poles)
    except MeasureError as exc:
        raise ConfigError(f"{where}: {exc}") from None


def _measure_to_obj(m: DiscreteMeasure) -> dict:
    out: dict[str, Any] = {"atoms": [[format_rational(t), format_rational(w)] for t, w in m.atoms]}
    if m.support_interval is not None:
        out["interval"] = [format_rational(m.support_interval.lo), format_rational(m.support_interval.hi)]
    return out


def system_to_obj(system: MeasureSystem) -> dict:
    """Canonical configuration object that parses back to ``system``."""
    out: dict[str, Any] = {"kind": KIND_NAMES[system.kind]}
    if system.kind is SystemKind.NIKISHIN:
        out["sigmas"] = [_measure_to_obj(s) for s in system.sigmas]
    elif system.kind is SystemKind.AT_CAUCHY_VANDERMONDE:
        out["measures"] = [_measure_to_obj(system.base)]
        out["poles"] = [format_rational(b) for b in system.poles]
    else:
        out["measures"] = [_measure_to_obj(m) for m in system.measures]
    return out


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def fingerprint(system: MeasureSystem) -> str:
    return hashlib.sha256(canonical_json(system_to_obj(system)).encode("utf-8")).hexdigest()


def parse_index(text: str, r: int | None = None) -> MultiIndex:
    """``"1,2"`` to a multi-index."""
    try:
        parts = tuple(int(p) for p in text.split(",")) if text.strip() else ()
    except ValueError:
        raise ConfigError(f"index {text!r}: expected comma-separated integers") from None
    if any(p < 0 for p in parts):
        raise ConfigError(f"index {text!r}: entries must be >= 0")
    if r is not None and len(parts) != r:
        raise ConfigError(f"index {text!r}: expected {r} entries for this system")
    return MultiIndex(parts)


def grid_indices(bounds: list[int]) -> list[MultiIndex]:
    """All indices with ``0 <= n_j <= bounds[j]``, lexicographic."""
    return [MultiIndex(p) for p in product(*(range(b + 1) for b in bounds))]


def _indices(obj: Any, r: int) -> list[MultiIndex]:
    if isinstance(obj, dict):
        _check_keys(obj, {"grid"}, "indices")
        bounds = _expect(obj.get("grid"), list, "indices.grid")
        if len(bounds) != r:
            raise ConfigError(f"indices.grid: expected {r} bounds")
        return grid_indices([_int(b, f"indices.grid[{i}]") for i, b in enumerate(bounds)])
    out = []
    for i, n in enumerate(_expect(obj, list, "indices")):
        _expect(n, list, f"indices[{i}]")
        if len(n) != r:
            raise ConfigError(f"indices[{i}]: expected {r} entries")
        out.append(MultiIndex(tuple(_int(p, f"indices[{i}][{k}]") for k, p in enumerate(n))))
    return out


def parse_polynomial(obj: Any, where: str) -> Polynomial:
    """Coefficient list, lowest degree first."""
    coeffs = _expect(obj, list, where)
    return Polynomial(parse_rational(c, f"{where}[{i}]") for i, c in enumerate(coeffs))


@dataclass
class RunConfig:
    system: MeasureSystem
    indices: list[MultiIndex] | None = None
    seed: int = 0
    options: dict[str, Any] = field(default_factory=dict)

    @property
    def fingerprint(self) -> str:
        return fingerprint(self.system)


def parse_config(text: str) -> RunConfig:
    try:
        obj = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    _expect(obj, dict, "config")
    _check_keys(obj, {"system", "indices", "seed", "options"}, "config")
    if "system" not in obj:
        raise ConfigError("config: missing field system")
    system = parse_system(obj["system"])
    indices = _indices(obj["indices"], system.r) if "indices" in obj else None
    seed = _int(obj.get("seed", 0), "seed")
    options = _expect(obj.get("options", {}), dict, "options")
    _check_keys(options, OPTION_KEYS, "options")
    return RunConfig(system, indices, seed, dict(options))


def load_config(path: str) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def config_to_obj(cfg: RunConfig) -> dict:
    out: dict[str, Any] = {"system": system_to_obj(cfg.system), "seed": cfg.seed}
    if cfg.indices is not None:
        out["indices"] = [list(n) for n in cfg.indices]
    if cfg.options:
        out["options"] = cfg.options
    return out

"""Run configuration: ``key = value`` files with command-line overrides."""
from __future__ import annotations

from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Mapping, Optional

from .amplitude import ChannelStructure, ScatterParams
from .errors import ParseError, ValidationError
from .specfun import MAX_RULE_ORDER


@dataclass(frozen=True)
class RunConfig:
    pa0_over_m: float = 0.002
    sigma_over_pa0: float = 0.1
    times: tuple = (1.0, 2.0, 3.0, 4.0)
    basis_size: int = 12
    quad_order: int = 64
    channel: str = "t"
    grid: tuple = (-4.0, 4.0, 101)
    output_dir: str = "out"

    @property
    def params(self) -> ScatterParams:
        return ScatterParams(self.pa0_over_m, self.sigma_over_pa0)

    def echo(self) -> dict:
        d = asdict(self)
        d["times"] = list(self.times)
        d["grid"] = list(self.grid)
        return d


def _floats(text):
    return tuple(float(v) for v in text.split(",") if v.strip())


def _grid(text):
    parts = [v.strip() for v in text.split(",")]
    if len(parts) != 3:
        raise ValueError("grid needs min,max,count")
    return (float(parts[0]), float(parts[1]), int(parts[2]))


_CONVERTERS = {
    "pa0_over_m": float,
    "sigma_over_pa0": float,
    "times": _floats,
    "basis_size": int,
    "quad_order": int,
    "channel": lambda s: ChannelStructure(s.strip().lower()).value,
    "grid": _grid,
    "output_dir": str.strip,
}

assert set(_CONVERTERS) == {f.name for f in fields(RunConfig)}


def parse_text(text: str) -> dict:
    """Parse config text into converted values; raises ParseError with line numbers."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, _, value = (s.strip() for s in line.partition("="))
        if key not in _CONVERTERS:
            raise ParseError(f"unknown key {key!r}", lineno)
        if key in values:
            raise ParseError(f"duplicate key {key!r}", lineno)
        try:
            values[key] = _CONVERTERS[key](value)
        except ValueError as exc:
            raise ParseError(f"bad value for {key}: {exc}", lineno) from None
    return values


def validate(cfg: RunConfig) -> RunConfig:
    try:
        cfg.params
    except ValueError as exc:
        raise ValidationError(str(exc)) from None
    if not 1 <= cfg.quad_order <= MAX_RULE_ORDER:
        raise ValidationError(f"quad_order must lie in [1, {MAX_RULE_ORDER}]")
    if cfg.basis_size < 1:
        raise ValidationError("basis_size must be positive")
    if 2 * cfg.basis_size > cfg.quad_order:
        raise ValidationError(
            f"basis_size {cfg.basis_size} exceeds quad_order/2 = {cfg.quad_order / 2:g}"
        )
    if not cfg.times:
        raise ValidationError("times must not be empty")
    if any(t < 0 for t in cfg.times):
        raise ValidationError("times must be nonnegative")
    if any(b <= a for a, b in zip(cfg.times, cfg.times[1:])):
        raise ValidationError("times must be strictly ascending")
    lo, hi, count = cfg.grid
    if not (count >= 2 and hi > lo):
        raise ValidationError("grid needs min < max and count >= 2")
    return cfg


def parse_config(path: Optional[Path] = None, overrides: Optional[Mapping] = None) -> RunConfig:
    """Defaults, then the file at ``path``, then ``overrides``; validated."""
    values = {}
    if path is not None:
        values.update(parse_text(Path(path).read_text()))
    if overrides:
        for key, value in overrides.items():
            if key not in _CONVERTERS:
                raise ValidationError(f"unknown option {key!r}")
            if value is not None:
                values[key] = value
    cfg = RunConfig(**values)
    return validate(cfg)

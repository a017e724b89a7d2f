"""Run configuration shared by the library entry points and the CLI."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

from .errors import InvalidArgument

CACHE_ENV = "MODFERMAT_CACHE"


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "modfermat"


@dataclass(frozen=True)
class Config:
    cache_dir: Path = None  # type: ignore[assignment]
    phi_max_level: int = 64
    hilbert_max_disc: int = 10_000
    float_precision_bits: int = 256
    tolerance: float = 1e-9
    thread_count: int = 1

    def __post_init__(self):
        if self.cache_dir is None:
            object.__setattr__(self, "cache_dir", default_cache_dir())
        else:
            object.__setattr__(self, "cache_dir", Path(self.cache_dir))
        for name in ("phi_max_level", "hilbert_max_disc", "float_precision_bits", "thread_count"):
            if getattr(self, name) < 1:
                raise InvalidArgument(f"{name} must be positive")
        if not self.tolerance > 0:
            raise InvalidArgument("tolerance must be positive")

    def as_lines(self):
        """``key = value`` lines in field order, for report headers."""
        return [f"{k} = {v}" for k, v in asdict(self).items()]

    def with_overrides(self, **kw):
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def _convert(name, raw: str):
    kinds = {f.name: f.type for f in fields(Config)}
    if name not in kinds:
        raise InvalidArgument(f"unknown config key {name!r}")
    if name == "cache_dir":
        return Path(raw)
    if name == "thread_count" and raw.strip() == "auto":
        return os.cpu_count() or 1
    try:
        return float(raw) if name == "tolerance" else int(raw)
    except ValueError:
        raise InvalidArgument(f"bad value for {name}: {raw!r}") from None


def load_config(path=None, **overrides) -> Config:
    """Config from an optional ``key = value`` file, then keyword overrides."""
    values = {}
    if path is not None:
        for ln in Path(path).read_text().splitlines():
            ln = ln.split("#", 1)[0].strip()
            if not ln:
                continue
            if "=" not in ln:
                raise InvalidArgument(f"config line without '=': {ln!r}")
            k, v = (s.strip() for s in ln.split("=", 1))
            values[k] = _convert(k, v)
    values.update({k: v for k, v in overrides.items() if v is not None})
    return Config(**values)

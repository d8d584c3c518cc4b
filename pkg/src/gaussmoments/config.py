"""Run configuration: tolerances, calibration settings and frozen envelope constants.

Config files are flat ``key = value`` TOML. Envelope constants use keys of
the form ``envelope_<name>``. Precedence: built-in defaults, then the file,
then command-line flags.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from importlib import resources

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

ENVELOPE_PREFIX = "envelope_"


@dataclass(frozen=True)
class Config:
    tolerance_rel: float = 1e-6
    calibration_range: tuple[int, int] = (5, 100)
    safety_factor: float = 2.0
    c_prime_limit: int = 100_000
    c_series_terms: int = 20
    c_tail_correction: bool = True
    threads: int = 0
    envelopes: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if not 0 < self.tolerance_rel <= 1e-2:
            raise ValueError("tolerance_rel must be in (0, 1e-2]")
        if self.safety_factor < 1:
            raise ValueError("safety_factor must be >= 1")
        lo, hi = self.calibration_range
        if lo > hi:
            raise ValueError("calibration_range must satisfy lo <= hi")

    def envelope(self, name: str) -> float:
        try:
            return self.envelopes[name]
        except KeyError:
            raise KeyError(f"no frozen envelope constant {name!r}; run `gaussmoments calibrate`") from None

    def resolved_threads(self) -> int:
        if self.threads > 0:
            return self.threads
        env = os.environ.get("GML_THREADS")
        if env:
            return max(1, int(env))
        return os.cpu_count() or 1

    def with_overrides(self, **kw) -> "Config":
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw) if kw else self


def _from_mapping(data: dict, base: Config) -> Config:
    kw = {}
    env = dict(base.envelopes)
    lo, hi = base.calibration_range
    for key, val in data.items():
        if key.startswith(ENVELOPE_PREFIX):
            env[key[len(ENVELOPE_PREFIX):]] = float(val)
        elif key == "calibration_lo":
            lo = int(val)
        elif key == "calibration_hi":
            hi = int(val)
        elif key in ("tolerance_rel", "safety_factor"):
            kw[key] = float(val)
        elif key == "c_tail_correction":
            kw[key] = bool(val)
        elif key in ("c_prime_limit", "c_series_terms", "threads"):
            kw[key] = int(val)
        else:
            raise ValueError(f"unknown config key {key!r}")
    return replace(base, calibration_range=(lo, hi), envelopes=env, **kw)


def default_config() -> Config:
    text = resources.files(__package__).joinpath("defaults.toml").read_text()
    return _from_mapping(tomllib.loads(text), Config())


def load_config(path: str | os.PathLike | None = None) -> Config:
    cfg = default_config()
    if path is None:
        return cfg
    with open(path, "rb") as fh:
        return _from_mapping(tomllib.load(fh), cfg)


def dump_config(cfg: Config) -> str:
    lines = [
        f"tolerance_rel = {cfg.tolerance_rel!r}",
        f"calibration_lo = {cfg.calibration_range[0]}",
        f"calibration_hi = {cfg.calibration_range[1]}",
        f"safety_factor = {cfg.safety_factor!r}",
        f"c_prime_limit = {cfg.c_prime_limit}",
        f"c_series_terms = {cfg.c_series_terms}",
        f"c_tail_correction = {str(cfg.c_tail_correction).lower()}",
        f"threads = {cfg.threads}",
    ]
    lines += [f"{ENVELOPE_PREFIX}{k} = {v!r}" for k, v in sorted(cfg.envelopes.items())]
    return "\n".join(lines) + "\n"

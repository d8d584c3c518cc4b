"""Calibrated envelopes for asymptotic claims without stated constants.

An envelope asserts deviation(p) <= c * shape(p). The constant c is the
largest observed deviation/shape over a calibration range of primes, times
a safety factor, then frozen in the default config.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

from .arith import legendre, odd_primes
from .charsums import lemma_2_7_sum, sum_N, sum_S, sum_T
from .config import Config, dump_config
from .lfun import aplusainv_moment, constant_C, family_ratio, family_target
from .moments import binom_ratio, theorem_1_4_report


@dataclass(frozen=True)
class Envelope:
    name: str
    statistic: Callable[[int, int, float], tuple[float, float]]  # (p, n, C) -> (observed, target)
    shape: Callable[[int], float]
    calibration_range: tuple[int, int] | None = None  # None: config default
    description: str = ""

    def deviation(self, p: int, n: int, C: float) -> float:
        value, target = self.statistic(p, n, C)
        return abs(value - target)

    def bound(self, c: float, p: int) -> float:
        return c * self.shape(p)


def _sqrt_inv(p):
    return p**-0.5


def _log_sqrt_inv(p):
    return math.log(p) / math.sqrt(p)


def _log2_sqrt_inv(p):
    return math.log(p) ** 2 / math.sqrt(p)


def _family_stat(family: str, k: int):
    def stat(p: int, n: int, C: float) -> tuple[float, float]:
        return family_ratio(family, p, k, n), family_target(family, k, C)

    return stat


def _build() -> dict[str, Envelope]:
    env = [
        Envelope("S", lambda p, n, C: (sum_S(p), 0), lambda p: p**2, description="|S| <= c p^2"),
        Envelope("L27", lambda p, n, C: (lemma_2_7_sum(p), 0), lambda p: p, description="|L27| <= c p"),
        Envelope("T", lambda p, n, C: (sum_T(p), p * p), lambda p: p**1.5, description="|T - p^2| <= c p^1.5"),
        Envelope("N", lambda p, n, C: (sum_N(p), 0), lambda p: p, description="|N| <= c p"),
        Envelope(
            "thm14", lambda p, n, C: (theorem_1_4_report(p, n).ratio, 126), _sqrt_inv, (101, 500),
            "|M10/p^6 - 126| <= c p^-1/2",
        ),
        Envelope(
            "thm16", lambda p, n, C: (aplusainv_moment(p, 2) / p**3, 3), _log_sqrt_inv, None,
            "|M/p^3 - 3| <= c ln p / sqrt p",
        ),
        Envelope(
            "thm15", lambda p, n, C: (family_ratio("gw", p, 5, n), 126 * C), _log2_sqrt_inv, (5, 300),
            "|W10/p^6 - 126 C| <= c ln^2 p / sqrt p",
        ),
        Envelope(
            "thm17", lambda p, n, C: (aplusainv_moment(p, 2, weighted=True) / p**3, 3 * C),
            _log2_sqrt_inv, (5, 300), "|W/p^3 - 3 C| <= c ln^2 p / sqrt p",
        ),
    ]
    shapes = {"g": (_sqrt_inv, None), "a": (_log_sqrt_inv, None),
              "gw": (_log2_sqrt_inv, (5, 300)), "aw": (_log2_sqrt_inv, (5, 300))}
    for fam, (shape, rng) in shapes.items():
        for k in range(1, 6):
            env.append(Envelope(
                f"conj_{fam}_{k}", _family_stat(fam, k), shape, rng,
                f"{fam} family k={k}: |ratio - {binom_ratio(k)}{'C' if fam.endswith('w') else ''}|",
            ))
    return {e.name: e for e in env}


ENVELOPES = _build()


def constant_for(cfg: Config):
    return constant_C(cfg.c_prime_limit, cfg.c_series_terms, cfg.c_tail_correction)


def calibration_primes(env: Envelope, cfg: Config) -> list[int]:
    lo, hi = env.calibration_range or cfg.calibration_range
    return odd_primes(max(lo, 5), hi)


def calibration_multipliers(p: int) -> tuple[int, ...]:
    """n = 1 and the least quadratic non-residue, so both (n/p) branches are covered."""
    nr = next(a for a in range(2, p) if legendre(a, p) == -1)
    return (1, nr)


def calibrate(name: str, cfg: Config) -> float:
    env = ENVELOPES[name]
    C = constant_for(cfg).value
    worst = max(
        env.deviation(p, n, C) / env.shape(p)
        for p in calibration_primes(env, cfg)
        for n in calibration_multipliers(p)
    )
    return cfg.safety_factor * worst


def calibrate_all(cfg: Config) -> dict[str, float]:
    return {name: calibrate(name, cfg) for name in ENVELOPES}


def write_frozen(cfg: Config, path) -> dict[str, float]:
    """Recalibrate every envelope and write the result as a config file."""
    constants = calibrate_all(cfg)
    with open(path, "w", newline="\n") as fh:
        fh.write(dump_config(replace(cfg, envelopes=constants)))
    return constants


@dataclass(frozen=True)
class EnvelopeResult:
    name: str
    p: int
    value: float
    target: float
    bound: float

    @property
    def deviation(self) -> float:
        return abs(self.value - self.target)

    @property
    def satisfied(self) -> bool:
        return self.deviation <= self.bound


def envelope_check(name: str, p: int, cfg: Config, C: float | None = None, n: int = 1) -> EnvelopeResult:
    env = ENVELOPES[name]
    if C is None:
        C = constant_for(cfg).value
    value, target = env.statistic(p, n, C)
    return EnvelopeResult(name, p, value, target, env.bound(cfg.envelope(name), p))

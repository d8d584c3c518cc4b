"""Range sweeps over primes, parallel across primes with deterministic output."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from functools import partial

from .arith import odd_primes
from .calibration import constant_for, envelope_check
from .checks import expand_what, rows_for_prime, validate_prime
from .config import Config
from .lfun import family_ratio, family_target
from .moments import K_MAX
from .report import SweepRow, sort_rows


def _map(fn, items, threads: int):
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    # large primes are the slow ones; chunksize 1 keeps the pool balanced
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items, chunksize=1))


def _sweep_prime(p: int, n: int, what: str, cfg: Config) -> list[SweepRow]:
    if n % p == 0:
        return []
    return rows_for_prime(p, n, what, cfg)


def sweep(what: str, p_min: int, p_max: int, n: int, cfg: Config) -> list[SweepRow]:
    """All rows of the requested groups for odd primes in [p_min, p_max].

    Primes dividing n are skipped.
    """
    expand_what(what)
    primes = odd_primes(p_min, p_max)
    chunks = _map(partial(_sweep_prime, n=n, what=what, cfg=cfg), primes, cfg.resolved_threads())
    return sort_rows(r for rows in chunks for r in rows)


def verify(p: int, n: int, cfg: Config) -> list[SweepRow]:
    validate_prime(p, n)
    return sort_rows(rows_for_prime(p, n, "all", cfg))


FAMILIES = ("g", "a")


def _conjecture_prime(p: int, k: int, weighted: bool, cfg: Config) -> list[SweepRow]:
    C = constant_for(cfg).value
    fams = FAMILIES + (("gw", "aw") if weighted else ())
    out = []
    for fam in fams:
        name = f"CONJ_{fam.upper()}{k}"
        if k <= K_MAX:
            r = envelope_check(f"conj_{fam}_{k}", p, cfg, C)
            out.append(SweepRow.make(p, name, r.value, r.target, r.deviation / r.bound, r.satisfied))
        else:
            value, target = family_ratio(fam, p, k), family_target(fam, k, C)
            out.append(SweepRow.make(p, name, value, target, value / target, None))
    return out


def conjecture_sweep(k: int, p_min: int, p_max: int, weighted: bool, cfg: Config) -> list[SweepRow]:
    """Normalized moment ratios for the Gauss and a + a^-1 families.

    Envelopes are enforced for k <= 5; larger k is reported only.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if p_min >= p_max:
        raise ValueError("p_min must be < p_max")
    primes = odd_primes(max(p_min, 5), p_max)
    fn = partial(_conjecture_prime, k=k, weighted=weighted, cfg=cfg)
    chunks = _map(fn, primes, cfg.resolved_threads())
    return sort_rows(r for rows in chunks for r in rows)

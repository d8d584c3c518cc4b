"""Modular arithmetic over a prime field: primality, primitive roots,
Legendre symbols, inverses and discrete-log tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

# Deterministic for every n < 3.3e24 (covers the whole 64-bit range).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin test."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_odd_prime(n: int) -> bool:
    return n != 2 and is_prime(n)


def odd_primes(lo: int, hi: int) -> list[int]:
    """Odd primes p with lo <= p <= hi, ascending."""
    if hi < 3:
        return []
    sieve = np.ones(hi + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, int(hi**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    sieve[2] = False
    return [int(p) for p in np.flatnonzero(sieve) if p >= lo]


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Smallest generator of (Z/pZ)*."""
    if not is_odd_prime(p):
        raise ValueError(f"{p} is not prime (odd prime required)")
    qs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    # p = 3 lands here only if the loop above is empty, which it is not
    raise AssertionError("unreachable")


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion; a is reduced mod p first."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def mod_inverse(a: int, p: int) -> int:
    if a % p == 0:
        raise ZeroDivisionError(f"{a} is not invertible mod {p}")
    return pow(a, -1, p)


@dataclass(frozen=True)
class OddPrime:
    p: int
    g: int = field(init=False)
    residue_class: int = field(init=False)

    def __post_init__(self):
        if not is_odd_prime(self.p):
            raise ValueError(f"{self.p} is not prime (odd prime required)")
        object.__setattr__(self, "g", primitive_root(self.p))
        object.__setattr__(self, "residue_class", self.p % 4)


@dataclass(frozen=True, eq=False)
class DlogTable:
    """Discrete logarithms to the smallest primitive root.

    ``dlog[a]`` is k with g**k == a (mod p) for a in [1, p-1]; ``dlog[0]`` is
    unused and set to -1. ``powers[k]`` is g**k mod p, the inverse map.
    """

    p: int
    g: int
    dlog: np.ndarray
    powers: np.ndarray

    @property
    def half(self) -> int:
        return (self.p - 1) // 2

    def __getitem__(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ValueError("dlog(0) is undefined")
        return int(self.dlog[a])


@lru_cache(maxsize=64)
def build_dlog_table(p: int) -> DlogTable:
    g = primitive_root(p)
    powers = np.empty(p - 1, dtype=np.int64)
    dlog = np.full(p, -1, dtype=np.int64)
    x = 1
    for k in range(p - 1):
        powers[k] = x
        dlog[x] = k
        x = x * g % p
    powers.setflags(write=False)
    dlog.setflags(write=False)
    return DlogTable(p, g, dlog, powers)


@lru_cache(maxsize=64)
def legendre_table(p: int) -> np.ndarray:
    """rho[t] = (t/p) for t in [0, p), as int64; index with ``t % p``."""
    rho = -np.ones(p, dtype=np.int64)
    rho[0] = 0
    sq = np.unique(np.arange(1, p, dtype=np.int64) ** 2 % p)
    rho[sq] = 1
    rho.setflags(write=False)
    return rho


def inverse_table(p: int) -> np.ndarray:
    """inv[a] = a^-1 mod p for a in [1, p); inv[0] = 0."""
    t = build_dlog_table(p)
    inv = np.zeros(p, dtype=np.int64)
    k = t.dlog[1:]
    inv[1:] = t.powers[(-k) % (p - 1)]
    return inv

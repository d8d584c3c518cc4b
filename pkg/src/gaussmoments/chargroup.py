"""Dirichlet characters modulo an odd prime.

The character group is cyclic of order p-1. Characters are labelled by an
exponent j against the smallest primitive root g:

    chi_j(g**k) = e(j*k / (p-1)),    e(y) = exp(2*pi*i*y),

extended by chi_j(0) = 0. j = 0 is the principal character and
j = (p-1)/2 is the Legendre symbol.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import DlogTable, OddPrime, build_dlog_table


def unit_roots(n: int) -> np.ndarray:
    """e(k/n) for k in [0, n), with the k/n reduction done before scaling."""
    k = np.arange(n)
    # fold to [-1/2, 1/2) so the angle is small and symmetric
    frac = ((2 * k + n) % (2 * n) - n) / (2 * n)
    return np.exp(2j * np.pi * frac)


@dataclass(frozen=True, eq=False)
class CharacterTable:
    prime: OddPrime
    dlog: DlogTable
    unit_roots: np.ndarray

    @property
    def p(self) -> int:
        return self.prime.p

    @property
    def order(self) -> int:
        return self.prime.p - 1

    def check_index(self, j: int) -> int:
        if not 0 <= j < self.order:
            raise IndexError(f"character index {j} outside [0, {self.order - 1}]")
        return j

    def values(self, j: int) -> np.ndarray:
        """chi_j(a) for a in [0, p), index 0 being the zero value."""
        self.check_index(j)
        out = np.zeros(self.p, dtype=complex)
        out[1:] = self.unit_roots[(j * self.dlog.dlog[1:]) % self.order]
        return out

    def matrix(self) -> np.ndarray:
        """M[j, a] = chi_j(a) for j in [0, p-1), a in [0, p)."""
        n = self.order
        m = np.zeros((n, self.p), dtype=complex)
        idx = np.outer(np.arange(n), self.dlog.dlog[1:]) % n
        m[:, 1:] = self.unit_roots[idx]
        return m


@lru_cache(maxsize=16)
def character_table(p: int) -> CharacterTable:
    prime = OddPrime(p)
    roots = unit_roots(p - 1)
    roots.setflags(write=False)
    return CharacterTable(prime, build_dlog_table(p), roots)


def chi_eval(table: CharacterTable, j: int, a: int) -> complex:
    table.check_index(j)
    a %= table.p
    if a == 0:
        return 0j
    return complex(table.unit_roots[(j * int(table.dlog.dlog[a])) % table.order])


def chi_parity(j: int) -> int:
    """chi_j(-1), which is (-1)**j because dlog(-1) = (p-1)/2."""
    return -1 if j % 2 else 1


def all_characters(p: int) -> list[int]:
    return list(range(p - 1))


def conjugate_index(table: CharacterTable, j: int) -> int:
    return (-j) % table.order

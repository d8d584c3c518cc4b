"""Quadratic Gauss sums for a prime modulus.

For chi mod p and n coprime to p the generalized sum is

    G(n, chi; p) = sum_{a=1}^{p} chi(a) e(n a^2 / p),

and for non-principal chi its squared modulus satisfies

    |G(n, chi; p)|^2 = A p + B s(chi),
    A = 1 + chi(-1),  B = (n/p) G(1; p),  s(chi) = sum_{a=2}^{p-2} chi(a) ((a^2-1)/p).

``s_chi_all`` gets s(chi_j) for every j at once: with a = g**k the sum is a
length-(p-1) DFT of k -> ((g^{2k} - 1)/p).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import legendre, legendre_table
from .chargroup import CharacterTable, character_table, chi_parity, unit_roots


def csum(values) -> complex:
    """Compensated (exactly rounded) sum of a complex array."""
    v = np.asarray(values)
    if np.iscomplexobj(v):
        return complex(math.fsum(v.real.ravel()), math.fsum(v.imag.ravel()))
    return complex(math.fsum(v.ravel()), 0.0)


def gauss_closed_form(q: int) -> complex:
    """G(1; q) by residue of q mod 4."""
    if q < 1:
        raise ValueError("q must be >= 1")
    r = math.sqrt(q)
    return {1: complex(r, 0), 2: 0j, 3: complex(0, r), 0: complex(r, r)}[q % 4]


def classical_gauss_sum(q: int) -> complex:
    """Direct evaluation of sum_{a=1}^{q} e(a^2/q)."""
    if q < 1:
        raise ValueError("q must be >= 1")
    a = np.arange(1, q + 1, dtype=np.int64)
    return csum(unit_roots(q)[a * a % q])


@dataclass(frozen=True, eq=False)
class GaussContext:
    table: CharacterTable
    n: int
    B: complex
    quad_exp: np.ndarray  # e(n a^2 / p) for a in [0, p)

    @property
    def p(self) -> int:
        return self.table.p

    @property
    def legendre_n(self) -> int:
        return legendre(self.n, self.p)


@lru_cache(maxsize=16)
def gauss_context(p: int, n: int = 1) -> GaussContext:
    table = character_table(p)
    if n % p == 0:
        raise ValueError(f"n={n} is not coprime to p={p}")
    B = legendre(n, p) * gauss_closed_form(p)
    a = np.arange(p, dtype=np.int64)
    quad = unit_roots(p)[(n % p) * (a * a % p) % p]
    quad.setflags(write=False)
    return GaussContext(table, n, B, quad)


def generalized_gauss_sum(ctx: GaussContext, j: int) -> complex:
    # the a = p term is chi(0) = 0, so summing over [0, p) is the same sum
    return csum(ctx.table.values(j) * ctx.quad_exp)


def gauss_sums_direct(ctx: GaussContext) -> np.ndarray:
    """G(n, chi_j; p) for every j by definition-level summation, O(p^2)."""
    m = ctx.table.matrix() * ctx.quad_exp[None, :]
    return np.array([csum(row) for row in m])


def principal_abs_square(p: int, n: int) -> float:
    if p % 4 == 1:
        return p + 1 - 2 * math.sqrt(p) * legendre(n, p)
    return float(p + 1)


def _quadratic_shift_sequence(p: int) -> np.ndarray:
    """k -> ((g^{2k} - 1)/p) for k in [0, p-1)."""
    t = character_table(p).dlog
    rho = legendre_table(p)
    x = t.powers
    return rho[(x * x - 1) % p]


def s_chi(ctx: GaussContext, j: int) -> complex:
    p = ctx.p
    a = np.arange(2, p - 1, dtype=np.int64)
    rho = legendre_table(p)
    return csum(ctx.table.values(j)[a] * rho[(a * a - 1) % p])


def s_chi_all(ctx: GaussContext, method: str = "fft") -> np.ndarray:
    """s(chi_j) for j in [0, p-1).

    ``fft`` is O(p log p) (numpy's FFT handles lengths with large prime
    factors by Bluestein). ``naive`` is the O(p^2) termwise sum.
    """
    p = ctx.p
    if method == "fft":
        seq = _quadratic_shift_sequence(p).astype(float)
        # sum_k seq[k] e(+jk/n) is n * ifft
        return np.fft.ifft(seq) * (p - 1)
    if method == "naive":
        return np.array([s_chi(ctx, j) for j in range(p - 1)])
    raise ValueError(f"unknown method {method!r}")


def abs_square_via_lemma(ctx: GaussContext, j: int, s: complex | None = None) -> float:
    """A p + B s(chi_j), with its vanishing imaginary part checked."""
    if j % (ctx.p - 1) == 0:
        raise ValueError("principal character: use closed form")
    if s is None:
        s = s_chi(ctx, j)
    A = 1 + chi_parity(j)
    val = A * ctx.p + ctx.B * s
    if abs(val.imag) > 1e-9 * ctx.p:
        raise ArithmeticError(f"A p + B s(chi) not real: imag={val.imag:.3e}")
    return val.real


def abs_squares(ctx: GaussContext, s_all: np.ndarray | None = None) -> np.ndarray:
    """|G(n, chi_j; p)|^2 for every j from the A p + B s(chi) identity."""
    p = ctx.p
    if s_all is None:
        s_all = s_chi_all(ctx)
    A = np.where(np.arange(p - 1) % 2 == 0, 2, 0)
    val = A * p + ctx.B * s_all
    if np.max(np.abs(val.imag[1:]), initial=0.0) > 1e-9 * p:
        raise ArithmeticError("A p + B s(chi) has a non-vanishing imaginary part")
    out = val.real.copy()
    out[0] = principal_abs_square(p, ctx.n)
    return out

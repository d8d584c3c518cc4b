"""L(1, chi) for characters mod p, the Euler-product constant C, and the
L-weighted moment families.

For non-principal chi mod p,

    L(1, chi) = -(1/p) sum_{a=1}^{p-1} chi(a) digamma(a/p),

which after a = g**k is a single length-(p-1) DFT over all characters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from .arith import build_dlog_table, odd_primes
from .charsums import kloosterman_all, lemma_2_8_rhs_all
from .moments import abs_squares_fast, binom_ratio

# Bernoulli coefficients B_{2k} / (2k) of the asymptotic digamma series
_DIGAMMA_SERIES = (
    1 / 12, -1 / 120, 1 / 252, -1 / 240, 1 / 132, -691 / 32760, 1 / 12,
)
_DIGAMMA_SHIFT = 10.0


def digamma(x):
    """Digamma for x > 0 by upward recurrence and the asymptotic series.

    Relative error near machine precision on (0, 1]; absolute error below
    1e-12 down to x = 1e-4.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("digamma implemented for x > 0 only")
    shift = np.maximum(0, np.ceil(_DIGAMMA_SHIFT - x))
    acc = np.zeros_like(x)
    y = x.copy()
    for _ in range(int(shift.max(initial=0))):
        mask = y < _DIGAMMA_SHIFT
        acc = np.where(mask, acc + 1 / y, acc)
        y = np.where(mask, y + 1, y)
    inv2 = 1 / (y * y)
    series = np.zeros_like(y)
    for c in reversed(_DIGAMMA_SERIES):
        series = (series + c) * inv2
    return np.log(y) - 0.5 / y - series - acc


@dataclass(frozen=True, eq=False)
class LValueTable:
    """|L(1, chi_j)| indexed by j; entry 0 (principal, a pole) is inf."""

    p: int
    values: np.ndarray
    method: str
    complex_values: np.ndarray
    tail_bound: float = 0.0


def _dlog_dft(p: int, seq_by_residue: np.ndarray) -> np.ndarray:
    """sum_{a=1}^{p-1} chi_j(a) w(a) for all j, given w indexed by residue."""
    t = build_dlog_table(p)
    return np.fft.ifft(seq_by_residue[t.powers]) * (p - 1)


def _partial_sum_blocks(p: int, tol: float) -> int:
    # truncation error after the mean-value correction is <= p(p-1)/M^2
    m = math.sqrt(p * (p - 1) / tol)
    return max(1, math.ceil(m / p))


def _partial_sum_values(p: int, tol: float) -> tuple[np.ndarray, float]:
    """sum_{n<=M} chi(n)/n over M = blocks * p, plus the Abel tail correction.

    With S(t) = sum_{n<=t} chi(n) (period p, S(M) = 0) and mean mu over a
    period, Abel summation gives tail = mu/M + E with |E| <= p(p-1)/M^2.
    """
    blocks = _partial_sum_blocks(p, tol)
    a = np.arange(1, p, dtype=float)
    h = np.zeros(p - 1)
    step = max(1, (1 << 21) // p)
    for lo in range(0, blocks, step):
        m = np.arange(lo, min(blocks, lo + step), dtype=float)
        h += (1.0 / (a[None, :] + p * m[:, None])).sum(axis=0)
    w = np.zeros(p)
    w[1:] = h
    partial = _dlog_dft(p, w)
    lin = np.zeros(p)
    lin[1:] = a
    mu = -_dlog_dft(p, lin) / p
    M = blocks * p
    return partial + mu / M, p * (p - 1) / M**2


@lru_cache(maxsize=32)
def l_one_all(p: int, method: str = "digamma", tol: float = 1e-9) -> LValueTable:
    if method == "digamma":
        w = np.zeros(p)
        w[1:] = digamma(np.arange(1, p) / p)
        vals = -_dlog_dft(p, w) / p
        bound = 0.0
    elif method == "partial_sum":
        vals, bound = _partial_sum_values(p, tol)
    else:
        raise ValueError(f"unknown method {method!r}")
    vals = vals.copy()
    vals[0] = np.inf
    mods = np.abs(vals)
    mods.setflags(write=False)
    return LValueTable(p, mods, method, vals, bound)


# ---------------------------------------------------------------------------
# Euler-product constant


def euler_factor(p: int, series_terms: int) -> float:
    """sum_{j=0}^{J} binom(2j,j)^2 / (16^j p^{2j})."""
    terms = [1.0]
    t = 1.0
    for j in range(1, series_terms + 1):
        t *= ((2 * j - 1) / (2 * j)) ** 2 / (p * p)
        terms.append(t)
    return math.fsum(terms)


@dataclass(frozen=True)
class EulerConstantC:
    value: float
    prime_limit: int
    series_terms: int
    tail_bound: float
    series_tail: float
    product_tail: float
    tail_corrected: bool


@lru_cache(maxsize=None)
def _prime_square_tail(prime_limit: int) -> float:
    """sum_{p > prime_limit} p^-2 from the prime zeta function."""
    with mpmath.workdps(40):
        head = mpmath.fsum(mpmath.mpf(1) / q**2 for q in [2] + odd_primes(3, prime_limit))
        return float(mpmath.primezeta(2) - head)


@lru_cache(maxsize=None)
def constant_C(prime_limit: int = 10**5, series_terms: int = 20, tail_correction: bool = True) -> EulerConstantC:
    """The Euler product over primes of the truncated series, with explicit tail bounds.

    With ``tail_correction`` the primes above the limit are accounted for by
    their leading term 1/(4p^2), and only the O(p^-4) residue is left in the
    bound; without it the bound is exp(sum_{p>P} 2/p^2) - 1.
    """
    if prime_limit < 100:
        raise ValueError("prime_limit must be >= 100")
    if series_terms < 1:
        raise ValueError("series_terms must be >= 1")
    primes = [2] + odd_primes(3, prime_limit)
    log_c = math.fsum(math.log(euler_factor(q, series_terms)) for q in primes)
    # each truncated factor misses at most sum_{j>J} p^{-2j}
    series_rel = math.expm1(
        math.fsum(math.log1p(q ** (-2.0 * (series_terms + 1)) / (1 - q**-2.0)) for q in primes)
    )
    tail2 = _prime_square_tail(prime_limit)
    if tail_correction:
        log_c += tail2 / 4
        product_rel = math.expm1(2 / (3 * prime_limit**3))
    else:
        product_rel = math.expm1(2 * tail2)
    value = math.exp(log_c)
    rounding_rel = (len(primes) + 10) * 2.0**-52
    tail_bound = value * (series_rel + product_rel + rounding_rel)
    return EulerConstantC(
        value=value,
        prime_limit=prime_limit,
        series_terms=series_terms,
        tail_bound=tail_bound,
        series_tail=value * series_rel,
        product_tail=value * product_rel,
        tail_corrected=tail_correction,
    )


# ---------------------------------------------------------------------------
# weighted and a + a^-1 families


def _validate_k(k: int) -> None:
    if not 1 <= k <= 5:
        raise ValueError(f"k={k} outside [1, 5]")


def gauss_family(p: int, n: int, k: int, weighted: bool) -> float:
    """sum over chi (all chi if unweighted, chi != chi_0 if weighted) of |G|^{2k} [|L(1,chi)|]."""
    x = abs_squares_fast(p, n)
    if not weighted:
        return math.fsum(x**k)
    lv = l_one_all(p).values
    return math.fsum(x[1:] ** k * lv[1:])


def weighted_moment(p: int, n: int, k: int) -> float:
    _validate_k(k)
    if n % p == 0:
        raise ValueError(f"n={n} is not coprime to p={p}")
    return gauss_family(p, n, k, weighted=True)


def aplusainv_moment(p: int, k: int, weighted: bool = False, route: str = "direct") -> float:
    """sum over chi != chi_0 of |sum_a chi(a + a^-1)|^{2k} [|L(1,chi)|].

    ``route="lemma"`` replaces the inner sum by sum_a chi(a)((a^2-1)/p),
    which has the same modulus.
    """
    if route == "direct":
        inner = kloosterman_all(p, 1)
    elif route == "lemma":
        inner = lemma_2_8_rhs_all(p, 1)
    else:
        raise ValueError(f"unknown route {route!r}")
    v = np.abs(inner[1:]) ** (2 * k)
    if weighted:
        v = v * l_one_all(p).values[1:]
    return math.fsum(v)


def aplusainv_fourth_moment(p: int) -> float:
    return aplusainv_moment(p, 2)


def weighted_aplusainv_fourth(p: int) -> float:
    return aplusainv_moment(p, 2, weighted=True)


def family_ratio(family: str, p: int, k: int, n: int = 1) -> float:
    """Normalized value for one conjecture family: g, gw (Gauss), a, aw (a + a^-1)."""
    if family in ("g", "gw"):
        v = gauss_family(p, n, k, weighted=family == "gw")
    elif family in ("a", "aw"):
        v = aplusainv_moment(p, k, weighted=family == "aw")
    else:
        raise ValueError(f"unknown family {family!r}")
    return v / p ** (k + 1)


def family_target(family: str, k: int, C: float) -> float:
    b = binom_ratio(k)
    return b * C if family.endswith("w") else float(b)


def l_weight_average_bound(p: int) -> float:
    """sum_a |sum_{chi != chi_0} chi(a) |L(1,chi)|| / (p ln p); observational only."""
    w = l_one_all(p).values.copy()
    w[0] = 0.0
    col = np.fft.ifft(w) * (p - 1)
    return float(np.abs(col).sum() / (p * math.log(p)))

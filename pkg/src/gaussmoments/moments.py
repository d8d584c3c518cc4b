"""Power moments sum_chi |G(n, chi; p)|^{2k} and their closed forms.

Three independent routes are available:

* fast: |G|^2 = A p + B s(chi) with s(chi) for all chi from one FFT;
* direct: |G|^2 from definition-level Gauss sums, O(p^2);
* exact: the moment as an element x + y sqrt(p) of Z[sqrt(p)].

The exact route expands (A p + B s)^k binomially. Orthogonality turns every
character power sum into a value of an integer convolution:

    sum_{chi} chi(c) s(chi)^i = (p - 1) * L^{*i}(c^-1),

where L(a) = ((a^2-1)/p) and * is multiplicative convolution on (Z/pZ)*,
done as cyclic convolution after a = g**k. Only c = +-1 are needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import legendre
from .charsums import _cyclic_convolve_int, lemma_2_1_sum, sum_N, sum_S, sum_T
from .chargroup import character_table, chi_eval
from .gauss import (
    _quadratic_shift_sequence,
    abs_squares,
    gauss_context,
    gauss_sums_direct,
    s_chi_all,
)

K_MAX = 5


@dataclass(frozen=True)
class Surd:
    """x + y*sqrt(r) with integer x, y."""

    x: int
    y: int
    r: int

    def _coerce(self, other) -> "Surd":
        if isinstance(other, Surd):
            if other.r != self.r:
                raise ValueError("mismatched radicands")
            return other
        if isinstance(other, int):
            return Surd(other, 0, self.r)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return Surd(self.x + o.x, self.y + o.y, self.r)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return Surd(self.x - o.x, self.y - o.y, self.r)

    def __mul__(self, other):
        o = self._coerce(other)
        return Surd(self.x * o.x + self.r * self.y * o.y, self.x * o.y + self.y * o.x, self.r)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Surd(1, 0, self.r)
        for _ in range(k):
            out = out * self
        return out

    def __float__(self) -> float:
        # exact rational combination rounded once, so huge x, y stay accurate
        if self.y == 0:
            return float(self.x)
        return float(self.x) + self.y * math.sqrt(self.r)

    @property
    def is_integer(self) -> bool:
        return self.y == 0


def binom_ratio(k: int) -> int:
    """The conjectured normalized limit binom(2k-1, k)."""
    return math.comb(2 * k - 1, k)


# ---------------------------------------------------------------------------
# exact route


@lru_cache(maxsize=64)
def shift_convolution_values(p: int, k: int) -> tuple[tuple[int, int], ...]:
    """(L^{*i}(1), L^{*i}(-1)) for i = 0..k; entry 0 is unused."""
    if k > 6:
        raise ValueError("exact convolution values are implemented for k <= 6")
    n = p - 1
    h = n // 2
    L1 = _quadratic_shift_sequence(p).astype(np.int64)
    powers = {1: L1}
    if k >= 2:
        powers[2] = _cyclic_convolve_int(L1, L1)
    if k >= 3:
        powers[3] = _cyclic_convolve_int(powers[2], L1)

    def at(i: int, k0: int) -> int:
        if i in powers:
            return int(powers[i][k0])
        a = i // 2
        u, v = powers[a], powers[i - a]
        idx = (k0 - np.arange(n)) % n
        return sum((u.astype(object) * v[idx].astype(object)).tolist())

    return ((0, 0),) + tuple((at(i, 0), at(i, h)) for i in range(1, k + 1))


def _character_power_sum(p: int, m: int, i: int, conv, lam: int) -> int:
    """sum over non-principal chi of A^m s(chi)^i, exactly."""
    if i == 0:
        base, minus = p - 1, 0
    else:
        base, minus = (p - 1) * conv[i][0], (p - 1) * conv[i][1]
    total = base if m == 0 else 2 ** (m - 1) * (base + minus)
    # principal character: A = 2, s = lam
    return total - 2**m * lam**i


def exact_nonprincipal_terms(p: int, n: int, k: int) -> list[Surd]:
    """Binomial terms binom(k,i) (Ap)^{k-i} (B s)^i summed over chi != chi_0, i = 0..k."""
    eps = legendre(n, p)
    if eps == 0:
        raise ValueError(f"n={n} is not coprime to p={p}")
    delta = legendre(-1, p)
    conv = shift_convolution_values(p, k)
    lam = lemma_2_1_sum(p) if p >= 5 else 0
    terms = []
    imaginary = 0
    for i in range(k + 1):
        c = math.comb(k, i) * p ** (k - i) * _character_power_sum(p, k - i, i, conv, lam)
        # B^i = eps^i (delta p)^{i//2} G1^{i%2}, G1 = sqrt(p) or i sqrt(p)
        c *= eps**i * (delta * p) ** (i // 2)
        if i % 2 == 0:
            terms.append(Surd(c, 0, p))
        elif p % 4 == 1:
            terms.append(Surd(0, c, p))
        else:
            imaginary += c
            terms.append(Surd(0, 0, p))
    if imaginary != 0:
        raise ArithmeticError(f"moment has imaginary part {imaginary} sqrt(p)")
    return terms


def principal_term_exact(p: int, n: int, k: int) -> Surd:
    base = Surd(p + 1, -2 * legendre(n, p), p) if p % 4 == 1 else Surd(p + 1, 0, p)
    return base**k


def exact_moment(p: int, n: int, k: int) -> Surd:
    return principal_term_exact(p, n, k) + sum(exact_nonprincipal_terms(p, n, k), Surd(0, 0, p))


# ---------------------------------------------------------------------------
# floating routes


def _validate(p: int, n: int, k: int, kmax: int | None = K_MAX) -> None:
    if n % p == 0:
        raise ValueError(f"n={n} is not coprime to p={p}")
    if k < 1 or (kmax is not None and k > kmax):
        raise ValueError(f"k={k} outside [1, {kmax}]")


def abs_squares_fast(p: int, n: int = 1) -> np.ndarray:
    return abs_squares(gauss_context(p, n))


def abs_squares_direct(p: int, n: int = 1) -> np.ndarray:
    return np.abs(gauss_sums_direct(gauss_context(p, n))) ** 2


def moment_value(p: int, n: int, k: int, method: str = "fast") -> float:
    """sum over all chi mod p of |G(n, chi; p)|^{2k}; any k >= 1."""
    _validate(p, n, k, kmax=None)
    x = abs_squares_fast(p, n) if method == "fast" else abs_squares_direct(p, n)
    return math.fsum(x**k)


def closed_form_surd(p: int, n: int, k: int) -> Surd:
    """Published closed forms for k = 2, 3, 4 as elements of Z[sqrt(p)]."""
    if k not in (2, 3, 4):
        raise ValueError(f"no closed form for k={k}")
    eps = legendre(n, p)
    if eps == 0:
        raise ValueError(f"n={n} is not coprime to p={p}")
    one_mod_4 = p % 4 == 1
    if k == 2:
        if one_mod_4:
            return Surd((p - 1) * (3 * p * p - 6 * p - 1), 4 * eps * (p - 1), p)
        return Surd((p - 1) * (3 * p * p - 6 * p - 1), 0, p)
    if k == 3:
        if one_mod_4:
            N = sum_N(p)
            return Surd(
                (p - 1) * (10 * p**3 - 25 * p**2 - 16 * p - 1),
                eps * (p * (p - 1) * N + 18 * p * p - 12 * p - 6),
                p,
            )
        return Surd((p - 1) * (10 * p**3 - 25 * p**2 - 4 * p - 1), 0, p)
    T = sum_T(p)
    if one_mod_4:
        N = sum_N(p)
        return Surd(
            (p - 1) * (34 * p**4 - 99 * p**3 - 65 * p**2 - 29 * p - 1) + p * p * (p - 1) * T,
            eps * (56 * p**3 + 8 * p**2 - 56 * p - 8 + 8 * p * p * (p - 1) * N),
            p,
        )
    return Surd((p - 1) * (34 * p**4 - 99 * p**3 + 7 * p**2 - 5 * p - 1) + p * p * (p - 1) * T, 0, p)


def moment_closed_form(p: int, n: int, k: int) -> float:
    return float(closed_form_surd(p, n, k))


@dataclass(frozen=True)
class MomentReport:
    p: int
    n: int
    k: int
    value: float
    closed_form: float | None
    ratio: float
    predicted_ratio: float
    exact: Surd | None = None
    rounded: int | None = None
    direct: float | None = None
    residual: float | None = None

    @property
    def closed_form_matches(self) -> bool | None:
        if self.closed_form is None:
            return None
        return abs(self.value - self.closed_form) <= 1e-6 * abs(self.closed_form)


def moment(
    p: int, n: int, k: int, *, exact: bool | None = None, cross_check: bool | None = None
) -> MomentReport:
    """The 2k-th moment with its closed form (k = 2..4) and normalized ratio.

    ``exact`` and ``cross_check`` default to on for p <= 200.
    """
    _validate(p, n, k)
    if exact is None:
        exact = p <= 200
    if cross_check is None:
        cross_check = p <= 200
    value = moment_value(p, n, k)
    cf = moment_closed_form(p, n, k) if k in (2, 3, 4) and p >= 5 else None
    ex = exact_moment(p, n, k) if exact else None
    rounded = ex.x if ex is not None and ex.is_integer else None
    direct = moment_value(p, n, k, method="direct") if cross_check else None
    return MomentReport(
        p=p, n=n, k=k, value=value, closed_form=cf,
        ratio=value / p ** (k + 1), predicted_ratio=float(binom_ratio(k)),
        exact=ex, rounded=rounded, direct=direct,
    )


def theorem_1_4_report(p: int, n: int = 1) -> MomentReport:
    """Tenth moment normalized by p^6, with sqrt(p)|ratio - 126| as residual."""
    _validate(p, n, 5)
    value = moment_value(p, n, 5)
    ratio = value / p**6
    return MomentReport(
        p=p, n=n, k=5, value=value, closed_form=None, ratio=ratio,
        predicted_ratio=126.0, residual=math.sqrt(p) * abs(ratio - 126),
    )


# ---------------------------------------------------------------------------
# tenth moment decomposition


@dataclass(frozen=True)
class DecompositionReport:
    p: int
    n: int
    parts: tuple[float, ...]
    total: float
    direct: float
    parts_exact: tuple[Surd, ...]

    @property
    def consistent(self) -> bool:
        return abs(self.total - self.direct) <= 1e-6 * abs(self.direct)


def decomposition_closed_parts(p: int, n: int) -> tuple[Surd, ...]:
    """N_1..N_6 from their closed expressions in N, T and S."""
    eps = legendre(n, p)
    if eps == 0:
        raise ValueError(f"n={n} is not coprime to p={p}")
    T = sum_T(p)
    n1 = Surd(16 * p**5 * (p - 3), 0, p)
    if p % 4 == 1:
        N, S = sum_N(p), sum_S(p)
        return (
            n1,
            Surd(0, 160 * p**4 * eps, p),
            Surd(80 * p**4 * (p * p - 4 * p - 1), 0, p),
            Surd(0, 40 * p**3 * eps * (8 + (p - 1) * N), p),
            Surd(10 * p**3 * (2 * p**3 - 14 * p * p + 30 * p - 34 + (p - 1) * T), 0, p),
            Surd(0, eps * p * p * (32 + (p - 1) * S + 4 * (p - 3) * (p - 1) * N), p),
        )
    zero = Surd(0, 0, p)
    return (
        n1,
        zero,
        Surd(80 * p**4 * (p * p - 4 * p + 3), 0, p),
        zero,
        Surd(10 * p**3 * (2 * p**3 - 14 * p * p + 30 * p - 18 + (p - 1) * T), 0, p),
        zero,
    )


def moment10_decomposition(p: int, n: int = 1, direct_method: str | None = None) -> DecompositionReport:
    if p < 5:
        raise ValueError("p must be >= 5")
    closed = decomposition_closed_parts(p, n)
    parts = tuple(float(c) for c in closed)
    if direct_method is None:
        direct_method = "direct" if p <= 400 else "fast"
    x = abs_squares_direct(p, n) if direct_method == "direct" else abs_squares_fast(p, n)
    direct = math.fsum(x[1:] ** 5)
    # exact per-part values: term i of (Ap + Bs)^5 is N_{i+1}
    exact_parts = tuple(exact_nonprincipal_terms(p, n, 5)) if p <= 5000 else ()
    total = float(sum(closed, Surd(0, 0, p)))
    return DecompositionReport(p, n, parts, total, direct, exact_parts)


# ---------------------------------------------------------------------------
# character-parity lemmas


def lemma_2_4_sum(p: int, m: int) -> int:
    """sum over chi != chi_0 of (1 + chi(-1))^m, by direct evaluation."""
    if m < 1:
        raise ValueError("m must be >= 1")
    tab = character_table(p)
    total = sum((1 + chi_eval(tab, j, -1)) ** m for j in range(1, p - 1))
    return int(round(total.real))


def lemma_2_4_prediction(p: int, m: int) -> int:
    return (p - 3) * sum(math.comb(m, 2 * i) for i in range(m // 2 + 1))


def lemma_2_5_sum(p: int, m: int) -> float:
    """sum over chi != chi_0 of (1 + chi(-1))^m s(chi); real up to rounding."""
    if m < 1:
        raise ValueError("m must be >= 1")
    tab = character_table(p)
    s = s_chi_all(gauss_context(p, 1))
    parity = np.array([chi_eval(tab, j, -1) for j in range(p - 1)])
    w = (1 + parity[1:]) ** m * s[1:]
    return math.fsum(w.real)


def lemma_2_5_prediction(p: int, m: int) -> int:
    return 2 ** (m + 1) if p % 4 == 1 else 0

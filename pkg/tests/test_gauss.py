import cmath
import math

import numpy as np
import pytest

from gaussmoments.arith import legendre, odd_primes
from gaussmoments.chargroup import chi_eval, chi_parity
from gaussmoments.gauss import (
    abs_square_via_lemma,
    abs_squares,
    classical_gauss_sum,
    csum,
    gauss_closed_form,
    gauss_context,
    gauss_sums_direct,
    generalized_gauss_sum,
    principal_abs_square,
    s_chi,
    s_chi_all,
)


def literal_gauss(p, n, j):
    """Term-by-term sum with its own exponentials, no shared tables."""
    from gaussmoments.chargroup import character_table

    t = character_table(p)
    return sum(chi_eval(t, j, a) * cmath.exp(2j * math.pi * n * a * a / p) for a in range(1, p + 1))


def literal_s(p, j):
    from gaussmoments.chargroup import character_table

    t = character_table(p)
    return sum(chi_eval(t, j, a) * legendre(a * a - 1, p) for a in range(2, p - 1))


def test_csum_is_compensated():
    vals = [1e16, 1.0, -1e16, 1j * 1e16, 1j, -1j * 1e16]
    assert csum(vals) == 1 + 1j


@pytest.mark.parametrize("q,expect", [
    (5, math.sqrt(5)), (6, 0), (4, 2 + 2j), (3, 1j * math.sqrt(3)), (1, 1), (8, (1 + 1j) * 2 * math.sqrt(2)),
])
def test_classical_examples(q, expect):
    assert abs(classical_gauss_sum(q) - expect) < 1e-9 * math.sqrt(q)
    assert abs(gauss_closed_form(q) - expect) < 1e-12 * math.sqrt(q)


def test_closed_form_matches_product_expression():
    # (1/2) sqrt(q) (1 + i)(1 + e^{-pi i q / 2}) covers all four cases
    for q in range(1, 200):
        ref = 0.5 * math.sqrt(q) * (1 + 1j) * (1 + cmath.exp(-0.5j * math.pi * q))
        assert abs(gauss_closed_form(q) - ref) < 1e-12 * math.sqrt(q)


def test_principal_examples():
    g = generalized_gauss_sum(gauss_context(5, 1), 0)
    assert abs(abs(g) ** 2 - (6 - 2 * math.sqrt(5))) < 1e-12
    g = generalized_gauss_sum(gauss_context(3, 1), 0)
    assert abs(abs(g) ** 2 - 4) < 1e-12


def test_context_rejects_multiple_of_p():
    with pytest.raises(ValueError):
        gauss_context(7, 14)


def test_quad_exp_unimodular():
    ctx = gauss_context(101, 3)
    assert np.max(np.abs(np.abs(ctx.quad_exp) - 1)) < 1e-12
    assert ctx.legendre_n == legendre(3, 101)


def test_direct_vs_literal():
    for p, n in ((7, 1), (13, 2), (31, 3)):
        ctx = gauss_context(p, n)
        d = gauss_sums_direct(ctx)
        for j in range(p - 1):
            assert abs(d[j] - literal_gauss(p, n, j)) < 1e-10 * p
            assert abs(d[j] - generalized_gauss_sum(ctx, j)) < 1e-10 * p


def test_orthogonality_of_abs_squares():
    for p in odd_primes(3, 150):
        for n in (1, 2):
            if n % p == 0:
                continue
            d = gauss_sums_direct(gauss_context(p, n))
            assert abs(np.sum(np.abs(d) ** 2) - (p - 1) ** 2) < 1e-8 * p * p


def test_s_chi_examples():
    assert abs(s_chi(gauss_context(5), 0) + 2) < 1e-12
    assert abs(s_chi(gauss_context(7), 0)) < 1e-12
    assert abs(s_chi(gauss_context(13), 1) - literal_s(13, 1)) < 1e-9 * 13


def test_s_chi_fast_vs_naive():
    for p in odd_primes(3, 300):
        ctx = gauss_context(p)
        fast, naive = s_chi_all(ctx), s_chi_all(ctx, method="naive")
        assert np.max(np.abs(fast - naive)) < 1e-9 * p


def test_s_chi_parseval_and_realness():
    for p in odd_primes(5, 400):
        s = s_chi_all(gauss_context(p))
        assert abs(np.sum(np.abs(s) ** 2) - (p - 1) * (p - 3)) < 1e-8 * p * p
        # odd characters give s = 0; p = 1 mod 4 real, p = 3 mod 4 imaginary
        assert np.max(np.abs(s[1::2])) < 1e-9 * p
        part = s.imag if p % 4 == 1 else s.real
        assert np.max(np.abs(part)) < 1e-9 * p


def test_lemma_identity_small():
    for p, n in ((7, 1), (5, 2), (13, 1), (11, 3)):
        ctx = gauss_context(p, n)
        d = np.abs(gauss_sums_direct(ctx)) ** 2
        for j in range(1, p - 1):
            assert abs(abs_square_via_lemma(ctx, j) - d[j]) < 1e-9 * p**1.5
            if p % 4 == 3:
                assert 1 + chi_parity(j) in (0, 2)


def test_lemma_rejects_principal():
    with pytest.raises(ValueError, match="principal character: use closed form"):
        abs_square_via_lemma(gauss_context(7), 0)


def test_principal_closed_form():
    for p in odd_primes(3, 101):
        for n in (1, 2, 3):
            if n % p == 0:
                continue
            d = abs(generalized_gauss_sum(gauss_context(p, n), 0)) ** 2
            assert abs(d - principal_abs_square(p, n)) < 1e-9 * p


def test_abs_squares_vector():
    ctx = gauss_context(61, 2)
    d = np.abs(gauss_sums_direct(ctx)) ** 2
    assert np.max(np.abs(abs_squares(ctx) - d)) < 1e-9 * 61**1.5

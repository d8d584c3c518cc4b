"""Acceptance criteria 1-13, one pass/fail line per criterion.

Run ``pytest tests/test_acceptance.py -v`` (the lines are printed even
under output capture), or ``python tests/test_acceptance.py`` for the lines alone.
"""

import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from test_charsums import literal_S, literal_T  # noqa: E402

from gaussmoments.arith import odd_primes  # noqa: E402
from gaussmoments.calibration import envelope_check  # noqa: E402
from gaussmoments.charsums import (  # noqa: E402
    affine_point_count,
    lemma_2_1_prediction,
    lemma_2_1_sum,
    lemma_2_2_prediction,
    lemma_2_2_sum,
    phi_table,
    psi_bound_check,
    sum_S,
    sum_T,
    th3_bound_check,
)
from gaussmoments.config import default_config  # noqa: E402
from gaussmoments.gauss import (  # noqa: E402
    abs_squares,
    classical_gauss_sum,
    gauss_closed_form,
    gauss_context,
    gauss_sums_direct,
    principal_abs_square,
)
from gaussmoments.lfun import aplusainv_moment, constant_C, l_one_all  # noqa: E402
from gaussmoments.moments import exact_moment, moment10_decomposition, moment_closed_form, moment_value  # noqa: E402

CFG = default_config()


def coprime_ns(p, ns=(1, 2, 3)):
    return [n for n in ns if n % p]


def brute_abs_squares(p, n):
    return np.abs(gauss_sums_direct(gauss_context(p, n))) ** 2


def envelope_worst(name, primes, ns=(1,)):
    worst, where = 0.0, None
    for p in primes:
        for n in coprime_ns(p, ns):
            r = envelope_check(name, p, CFG, n=n)
            if r.deviation / r.bound > worst:
                worst, where = r.deviation / r.bound, (p, n)
    return worst, where


def crit_1():
    t = time.perf_counter()
    bad = [p for p in odd_primes(5, 1000)
           if lemma_2_1_sum(p) != lemma_2_1_prediction(p) or lemma_2_2_sum(p) != lemma_2_2_prediction(p)]
    dt = time.perf_counter() - t
    return not bad and dt < 30, f"mismatches={bad} runtime={dt:.2f}s (limit 30s)"


def crit_2():
    worst = max(abs(classical_gauss_sum(q) - gauss_closed_form(q)) / math.sqrt(q) for q in range(1, 2001))
    return worst < 1e-9, f"max |G - closed| / sqrt(q) = {worst:.2e} (limit 1e-9)"


def crit_3():
    worst = 0.0
    for p in odd_primes(3, 101):
        for n in coprime_ns(p):
            direct = brute_abs_squares(p, n)
            fast = abs_squares(gauss_context(p, n))
            err = max(np.max(np.abs(fast[1:] - direct[1:])), abs(direct[0] - principal_abs_square(p, n)))
            worst = max(worst, err / p**1.5)
    return worst < 1e-9, f"max err / p^1.5 = {worst:.2e} (limit 1e-9)"


def _closed_vs_brute(ks):
    worst = 0.0
    for p in odd_primes(5, 200):
        for n in coprime_ns(p):
            x = brute_abs_squares(p, n)
            for k in ks:
                b = math.fsum(x**k)
                worst = max(worst, abs(moment_closed_form(p, n, k) - b) / b)
    return worst


def crit_4():
    w = _closed_vs_brute((2,))
    # p = 3 has no separate closed-form branch issue: check it against the same formula
    x = brute_abs_squares(3, 1)
    w3 = abs(math.fsum(x**2) - 2 * (27 - 18 - 1)) / math.fsum(x**2)
    return max(w, w3) < 1e-6, f"max relative err = {max(w, w3):.2e} (limit 1e-6)"


def crit_5():
    w = _closed_vs_brute((3, 4))
    return w < 1e-6, f"max relative err = {w:.2e} (limit 1e-6)"


def crit_6():
    nonzero = [p for p in odd_primes(5, 500) if p % 4 == 3 and sum_S(p) != 0]
    s_bad = [p for p in odd_primes(5, 37) if sum_S(p) != literal_S(p)]
    t_bad = [p for p in odd_primes(5, 61) if sum_T(p) != literal_T(p)]
    ok = not (nonzero or s_bad or t_bad)
    return ok, f"S!=0 at {nonzero}; S oracle mismatches {s_bad}; T oracle mismatches {t_bad}"


def crit_7():
    parts = {name: envelope_worst(name, odd_primes(5, 500)) for name in ("S", "L27", "T")}
    ok = all(w <= 1 for w, _ in parts.values())
    return ok, " ".join(f"{k}:{w:.3f}" for k, (w, _) in parts.items()) + " (fraction of frozen bound)"


def crit_8():
    th3 = [p for p in odd_primes(5, 1000) if not th3_bound_check(p).satisfied]
    psi = [p for p in odd_primes(5, 500) if not psi_bound_check(p).satisfied]
    pc = [p for p in odd_primes(3, 101)
          if any(affine_point_count(p, t) != p + phi_table(p)[t] for t in range(p))]
    return not (th3 or psi or pc), f"TH3 failures {th3}; PSI failures {psi}; point-count failures {pc}"


def crit_9():
    t = time.perf_counter()
    primes = odd_primes(101, 3000)
    worst, where = envelope_worst("thm14", primes, ns=(1, 2))
    last = envelope_check("thm14", primes[-1], CFG).value
    rel = abs(last - 126) / 126
    dt = time.perf_counter() - t
    ok = worst <= 1 and rel < 0.05 and dt < 600
    return ok, f"worst fraction of envelope {worst:.3f} at {where}; M10/p^6 at p={primes[-1]} is {last:.4f} ({rel:.2%} off); {dt:.1f}s"


def crit_10():
    worst, seen = 0.0, set()
    for p in odd_primes(5, 200):
        for n in coprime_ns(p, (1, 2)):
            d = moment10_decomposition(p, n, direct_method="direct")
            worst = max(worst, abs(d.total - d.direct) / d.direct)
            seen.add(p % 4)
    return worst < 1e-6 and seen == {1, 3}, f"max relative err = {worst:.2e} (limit 1e-6), classes {sorted(seen)}"


def crit_11():
    routes = max(
        abs(aplusainv_moment(p, 2) - aplusainv_moment(p, 2, route="lemma")) / aplusainv_moment(p, 2)
        for p in odd_primes(5, 200)
    )
    worst, where = envelope_worst("thm16", odd_primes(5, 2000))
    return routes < 1e-6 and worst <= 1, f"route rel err {routes:.2e}; envelope fraction {worst:.3f} at {where}"


def crit_12():
    dual = max(
        float(np.max(np.abs(l_one_all(p).values[1:] - l_one_all(p, method="partial_sum").values[1:])))
        for p in odd_primes(3, 101)
    )
    primes = odd_primes(5, 1000)
    w15, _ = envelope_worst("thm15", primes, ns=(1, 2))
    w17, _ = envelope_worst("thm17", primes)
    c = constant_C(CFG.c_prime_limit, CFG.c_series_terms, CFG.c_tail_correction)
    ok = dual < 1e-7 and w15 <= 1 and w17 <= 1 and c.tail_bound < 1e-10
    return ok, (f"L dual max diff {dual:.1e}; THM15 {w15:.3f}, THM17 {w17:.3f} of envelope; "
                f"C={c.value:.12f} tail_bound={c.tail_bound:.1e}")


def crit_13():
    primes = odd_primes(5, 1000)
    worst = max(
        (envelope_worst(f"conj_{fam}_{k}", primes)[0], f"{fam}{k}")
        for fam in ("g", "gw", "a", "aw") for k in range(1, 6)
    )
    orth_exact = [p for p in odd_primes(3, 1000) if exact_moment(p, 1, 1).x != (p - 1) ** 2]
    orth_float = [p for p in odd_primes(3, 1000) for n in coprime_ns(p)
                  if round(moment_value(p, n, 1)) != (p - 1) ** 2]
    ok = worst[0] <= 1 and not orth_exact and not orth_float
    return ok, f"worst envelope fraction {worst[0]:.3f} ({worst[1]}); k=1 mismatches exact {orth_exact} float {orth_float}"


CRITERIA = [crit_1, crit_2, crit_3, crit_4, crit_5, crit_6, crit_7, crit_8, crit_9, crit_10, crit_11, crit_12, crit_13]


def run(i):
    ok, detail = CRITERIA[i - 1]()
    line = f"criterion {i:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    return ok, line


@pytest.mark.parametrize("i", range(1, 14))
def test_criterion(i, capsys):
    ok, line = run(i)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run(i) for i in range(1, 14)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)

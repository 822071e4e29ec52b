import math
import random

import pytest

from multsidon.decompose import Case
from multsidon.encode import build_graph
from multsidon.errors import InvalidArgument
from multsidon.ledger import (EXPONENT, BoundConstants, PartKey, band_count, band_exponents,
                              band_thresholds, census, g3_bound_report, hard_cap_violations,
                              partition_edges, theoretical_caps)
from multsidon.sidonkit import base_construction, greedy_3sidon

from conftest import naive_omega


def check_membership(led_graph, n, sieve):
    g, led = led_graph
    K, T = led.K, band_thresholds(n, led.K)
    lnln = math.log(math.log(n))
    from multsidon.ledger import classify_edge
    for e in g.edges:
        key = classify_edge(e, n, K, T, sieve.omega, lnln)
        if key.part == "GK1":
            assert e.case is Case.LARGE_PRIME and e.u ** 3 > n * n
        elif key.part == "G0":
            assert e.u ** 2 <= n and e.v ** 2 <= n
        else:
            top = max(e.u, e.v)
            h = key.h
            # n^(1/2+(h-1)/(6K)) < top <= n^(1/2+h/(6K)), exactly
            assert top ** (6 * K) > n ** (3 * K + h - 1)
            assert top ** (6 * K) <= n ** (3 * K + h)
            assert (key.part == "Gprime") == (top == e.u)
            if key.sub == "Hkl":
                assert 2 * key.k - 2 <= key.l
                assert key.k == naive_omega(e.u) and key.l == naive_omega(e.v)


def test_band_geometry():
    assert band_count(100) == 1
    assert band_count(10 ** 6) == 2
    assert band_count(10 ** 7) == 2
    assert band_thresholds(10 ** 4, 1) == [100, 464]
    T = band_thresholds(10 ** 6, 2)
    assert T[0] == 1000 and T[-1] == 10000
    assert T[1] == 3162  # floor(10^3.5)
    a, b = band_exponents(1, 2)
    assert a + b == pytest.approx(1 + 1 / 12)
    for h in range(1, 3):
        a, b = band_exponents(h, 2)
        assert 1 / 3 <= b <= a <= 2 / 3


def test_part_examples(sieve_small):
    g = build_graph({36, 97}, 100, sieve_small)
    led = partition_edges(g, 100, sieve_small)
    labels = {k.part for k in led.parts}
    assert labels == {"G0", "GK1"}
    assert led.counted() == led.total == 2
    g = build_graph({97}, 100, sieve_small)
    led = partition_edges(g, 100, sieve_small)
    assert led.counted() == 1


def test_mismatched_n(sieve_small):
    g = build_graph({36}, 100, sieve_small)
    with pytest.raises(InvalidArgument):
        partition_edges(g, 200, sieve_small)


@pytest.mark.parametrize("n", [16, 100, 500, 2000])
def test_partition_exact_random(n, sieve_small):
    rng = random.Random(n)
    for _ in range(5):
        A = rng.sample(range(1, n + 1), rng.randint(1, n // 2))
        g = build_graph(A, n, sieve_small)
        led = partition_edges(g, n, sieve_small)
        assert led.counted() == len(g.edges) == led.total
        assert led.skipped_squares <= math.isqrt(n)
        check_membership((g, led), n, sieve_small)


def test_bands_populated_at_1e6(sieve_1e6):
    n = 10 ** 6
    A = random.Random(1).sample(range(1, n + 1), 20000)
    g = build_graph(A, n, sieve_1e6)
    led = partition_edges(g, n, sieve_1e6)
    assert led.K == 2
    assert {k.h for k in led.parts if k.h} == {1, 2}
    assert {k.part for k in led.parts} == {"G0", "Gprime", "Gdoubleprime", "GK1"}
    check_membership((g, led), n, sieve_1e6)
    assert led.counted() == led.total


def test_caps(sieve_small, sieve_1e4, sieve_1e6):
    assert theoretical_caps(10 ** 6, sieve_1e6).g0() == pytest.approx(10 ** 4)
    assert theoretical_caps(100, sieve_small).gk1() == pytest.approx(25 + 15 + 100 ** (2 / 3) / 2)
    assert theoretical_caps(100, sieve_small).gk1() == pytest.approx(50.77, abs=0.01)
    caps = theoretical_caps(10 ** 4, sieve_1e4, BoundConstants(c2=2.0))
    a, b = 0.5 + 1 / 6, 0.5
    want = 2.0 * 10 ** (8 / 3) / math.log(10 ** 4) ** 0.08 + 16 * (10 ** (4 * a) + 10 ** (4 * b))
    assert caps.h12(1) == pytest.approx(want)


def test_constants_validation():
    with pytest.raises(InvalidArgument):
        BoundConstants(c2=0)
    with pytest.raises(InvalidArgument):
        BoundConstants(delta=1.5)


def test_hard_caps_on_sidon_sets(sieve_1e4, sieve_small):
    n = 10 ** 4
    led = partition_edges(build_graph(base_construction(n, sieve_1e4), n, sieve_1e4), n, sieve_1e4)
    assert hard_cap_violations(led) == []
    for n in (50, 200, 400):
        led = partition_edges(build_graph(greedy_3sidon(n), n, sieve_small), n, sieve_small)
        assert hard_cap_violations(led) == []


def test_ledger_csv(sieve_small):
    g = build_graph(greedy_3sidon(200), 200, sieve_small)
    text = partition_edges(g, 200, sieve_small).to_csv()
    lines = text.splitlines()
    assert lines[0] == "part_key,h,subkey,k,l,edge_count,cap,cap_kind"
    assert all(len(ln.split(",")) == 8 for ln in lines)


# -- census ------------------------------------------------------------------

def test_census_examples(sieve_small):
    r = census(20, 2, sieve_small)
    assert (r.N_exact, r.M_exact) == (15, 11)
    assert census(20, 3, sieve_small).M_exact == 5
    r = census(16, 0, sieve_small)
    assert r.N_exact == 1 and r.bound_value is None
    with pytest.raises(InvalidArgument):
        census(10, 0, sieve_small)


def test_census_identity(sieve_1e4):
    for x in (16, 100, 1000, 9999, 10000):
        prev_n, prev_m = -1, 10 ** 9
        for i in range(0, 15):
            r = census(x, i, sieve_1e4)
            assert r.N_exact + census(x, i + 1, sieve_1e4).M_exact == x
            assert r.N_exact >= prev_n and r.M_exact <= prev_m
            prev_n, prev_m = r.N_exact, r.M_exact


def test_census_formulas(sieve_1e4):
    x, i = 10000, 3
    r = census(x, i, sieve_1e4, BoundConstants(C_delta=2.0))
    L = math.log(math.log(x))
    assert r.bound_value == pytest.approx(2.0 * x / math.log(x) * L ** 2 / 2)
    alpha = 2 / L
    assert r.remark_exponent == pytest.approx(alpha - alpha * math.log(alpha))
    # (e/alpha)^(alpha L) == (ln x)^(alpha - alpha ln alpha)
    assert (math.e / alpha) ** (alpha * L) == pytest.approx(math.log(x) ** r.remark_exponent)
    assert census(x, 1, sieve_1e4).remark_exponent == 0.0


# -- report ------------------------------------------------------------------

def test_report(sieve_small, sieve_1e6):
    r = g3_bound_report(100, sieve_small)
    assert (r["pi_n"], r["pi_half"]) == (25, 15)
    assert r["main_error"] == pytest.approx(88.7, abs=0.5)
    assert round(r["exponent"], 4) == 0.9266 == round(EXPONENT, 4)
    assert r["error_exponent_note"] == "o(1)"
    r = g3_bound_report(10 ** 6, sieve_1e6)
    assert r["pi_n"] == 78498
    assert r["n_two_thirds"] == pytest.approx(10 ** 4)
    assert set(r["formulas"]) >= {k for k, v in r.items() if isinstance(v, float)}

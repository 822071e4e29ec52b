import pytest
from hypothesis import given, strategies as st

from multsidon.arith import big_omega, build_sieve, factor_desc, iroot, prime_pi, two_thirds_floor
from multsidon.errors import InvalidArgument, OutOfRange

from conftest import naive_is_prime, naive_omega


def test_spf_examples():
    s = build_sieve(100)
    assert s.spf[12] == 2
    assert s.spf[97] == 97
    assert s.spf[91] == 7


def test_sieve_rejects_tiny_limit():
    with pytest.raises(InvalidArgument):
        build_sieve(1)


def test_spf_invariants(sieve_small):
    for m in range(2, sieve_small.limit + 1):
        p = int(sieve_small.spf[m])
        assert m % p == 0 and naive_is_prime(p)
        assert (p == m) == naive_is_prime(m)


@pytest.mark.parametrize("m,expected", [(1, 0), (12, 3), (97, 1), (1024, 10), (30030, 6)])
def test_big_omega(m, expected):
    assert big_omega(m, build_sieve(40000)) == expected


def test_big_omega_out_of_range():
    with pytest.raises(OutOfRange):
        big_omega(101, build_sieve(100))


def test_prime_pi():
    s = build_sieve(100)
    assert prime_pi(10, s) == 4
    assert prime_pi(2, s) == 1
    # independent count by trial division
    assert prime_pi(100, s) == sum(naive_is_prime(m) for m in range(101)) == 25
    with pytest.raises(OutOfRange):
        prime_pi(101, s)


def test_prime_pi_steps(sieve_small):
    vals = [prime_pi(x, sieve_small) for x in range(1, 2001)]
    assert all(b - a in (0, 1) for a, b in zip(vals, vals[1:]))


def test_factor_desc_examples():
    s = build_sieve(100)
    assert factor_desc(60, s) == [5, 3, 2, 2]
    assert factor_desc(1, s) == []
    assert factor_desc(97, s) == [97]


@given(st.integers(min_value=1, max_value=2000))
def test_factorization_properties(m):
    s = _SIEVE
    fs = factor_desc(m, s)
    prod = 1
    for p in fs:
        prod *= p
    assert prod == m
    assert fs == sorted(fs, reverse=True)
    assert len(fs) == big_omega(m, s) == naive_omega(m)
    if fs:
        assert s.spf[m] == min(fs)


_SIEVE = build_sieve(2000)


@given(st.integers(min_value=0, max_value=10 ** 30), st.integers(min_value=1, max_value=12))
def test_iroot(x, k):
    r = iroot(x, k)
    assert r ** k <= x < (r + 1) ** k


def test_iroot_huge():
    x = 7 ** 900
    assert iroot(x, 9) == 7 ** 100
    assert iroot(x - 1, 9) == 7 ** 100 - 1


def test_two_thirds_floor():
    assert two_thirds_floor(100) == 21
    assert two_thirds_floor(10 ** 6) == 10 ** 4
    assert two_thirds_floor(150) == 28

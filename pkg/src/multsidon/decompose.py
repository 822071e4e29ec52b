"""
Splitting m <= n as m = u * v.

Two admissible shapes:

* ``LARGE_PRIME``: u is a prime with u > n^(2/3);
* ``BALANCED``: u, v <= n^(2/3) and 2*Omega(u) - 2 <= Omega(v).

All threshold comparisons are done on integers (u**3 vs n**2, u**3 vs m).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import isqrt

from .arith import FactorSieve, factor_desc
from .errors import InvalidArgument


class Case(str, enum.Enum):
    LARGE_PRIME = "LargePrime"
    BALANCED = "Balanced"


@dataclass(frozen=True, order=True)
class Decomposition:
    m: int
    u: int
    v: int
    case: Case


def _check_args(m: int, n: int, sieve: FactorSieve) -> None:
    if m < 1:
        raise InvalidArgument(f"m must be positive, got {m}")
    if m > n:
        raise InvalidArgument(f"m={m} exceeds n={n}")
    sieve._check(n)


def above_two_thirds(x: int, n: int) -> bool:
    """x > n^(2/3)."""
    return x ** 3 > n * n


def split_case(u: int, v: int, n: int, sieve: FactorSieve) -> Case | None:
    """Which admissible shape (u, v) has for scale n, or None."""
    if above_two_thirds(u, n):
        return Case.LARGE_PRIME if sieve.is_prime(u) else None
    if above_two_thirds(v, n):
        return None
    if 2 * int(sieve.omega[u]) - 2 <= int(sieve.omega[v]):
        return Case.BALANCED
    return None


def lemma_decompose(m: int, n: int, sieve: FactorSieve) -> Decomposition:
    """
    The constructive split: peel off the largest prime if it exceeds
    n^(2/3), otherwise take the shortest prefix of the descending prime
    factorization whose product reaches m^(1/3).
    """
    _check_args(m, n, sieve)
    primes = factor_desc(m, sieve)
    if primes and above_two_thirds(primes[0], n):
        return Decomposition(m, primes[0], m // primes[0], Case.LARGE_PRIME)
    u = 1
    for p in primes:
        if u ** 3 >= m:
            break
        u *= p
    return Decomposition(m, u, m // u, Case.BALANCED)


def _divisors(primes_desc: list[int]) -> list[int]:
    divs = [1]
    i = len(primes_desc) - 1
    while i >= 0:
        p = primes_desc[i]
        e = 0
        while i >= 0 and primes_desc[i] == p:
            e += 1
            i -= 1
        divs = [d * p ** j for d in divs for j in range(e + 1)]
    divs.sort()
    return divs


def min_v_decompose(m: int, n: int, sieve: FactorSieve) -> Decomposition:
    """Admissible split of m with the smallest v."""
    _check_args(m, n, sieve)
    primes = factor_desc(m, sieve)
    # A prime factor above n^(2/3) fits in neither side of a balanced split.
    if primes and above_two_thirds(primes[0], n):
        return Decomposition(m, primes[0], m // primes[0], Case.LARGE_PRIME)
    for v in _divisors(primes):
        u = m // v
        case = split_case(u, v, n, sieve)
        if case is not None:
            return Decomposition(m, u, v, case)
    raise AssertionError(f"no admissible split for m={m}, n={n}")


def enumerate_valid_splits(m: int, n: int, sieve: FactorSieve) -> list[Decomposition]:
    """Every admissible (u, v) pair for m by plain trial division, v ascending."""
    _check_args(m, n, sieve)
    out = []
    for d in range(1, isqrt(m) + 1):
        if m % d:
            continue
        for v in {d, m // d}:
            case = split_case(m // v, v, n, sieve)
            if case is not None:
                out.append(Decomposition(m, m // v, v, case))
    out.sort(key=lambda s: s.v)
    return out


def check_decomposition(d: Decomposition, n: int, sieve: FactorSieve) -> bool:
    """Recheck every invariant of d from scratch."""
    if d.u * d.v != d.m or d.u < 1 or d.v < 1:
        return False
    return split_case(d.u, d.v, n, sieve) == d.case


def scan_range(lo: int, hi: int, n: int, sieve: FactorSieve) -> dict:
    """
    Decompose every m in [lo, hi] with the constructive rule and verify it.

    Returns counts per case, the failures (should be empty) and the number
    of Balanced splits whose prefix length broke 3(i-1) < Omega(m).
    """
    counts = {Case.LARGE_PRIME.value: 0, Case.BALANCED.value: 0}
    failures = []
    prefix_violations = 0
    omega = sieve.omega
    for m in range(lo, hi + 1):
        d = lemma_decompose(m, n, sieve)
        if not check_decomposition(d, n, sieve):
            failures.append(m)
            continue
        counts[d.case.value] += 1
        if d.case is Case.BALANCED and 3 * (int(omega[d.u]) - 1) >= int(omega[m]):
            prefix_violations += 1
    return {"counts": counts, "failures": failures, "prefix_violations": prefix_violations}

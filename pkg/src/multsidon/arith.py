"""
Smallest-prime-factor sieve and the counting primitives built on it.

Everything downstream (decompositions, graph encoding, census) asks the
same questions over and over: what is Omega(m), what are m's prime
factors, how many primes are below x.  One SPF table answers all of them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from .errors import InvalidArgument, OutOfRange


@dataclass(frozen=True)
class FactorSieve:
    """
    Immutable smallest-prime-factor table for 0..limit.

    Attributes
    ----------
    limit : int
        Largest integer covered (inclusive).
    spf : np.ndarray
        ``spf[m]`` is the smallest prime factor of m for m >= 2.
        ``spf[0] = spf[1] = 0``.
    omega : np.ndarray
        ``omega[m]`` is Omega(m), prime factors counted with multiplicity.
    pi : np.ndarray
        ``pi[x]`` is the number of primes <= x.
    """

    limit: int
    spf: np.ndarray = field(repr=False)
    omega: np.ndarray = field(repr=False)
    pi: np.ndarray = field(repr=False)

    def is_prime(self, m: int) -> bool:
        self._check(m, lo=0)
        return m >= 2 and int(self.spf[m]) == m

    def primes(self, lo: int = 2, hi: int | None = None) -> list[int]:
        """Primes p with lo <= p <= hi, ascending."""
        hi = self.limit if hi is None else hi
        self._check(hi, lo=0)
        lo = max(lo, 2)
        if hi < lo:
            return []
        idx = np.arange(lo, hi + 1)
        return [int(p) for p in idx[self.spf[lo:hi + 1] == idx]]

    def _check(self, m: int, lo: int = 1) -> None:
        if m < lo:
            raise InvalidArgument(f"{m} is below {lo}")
        if m > self.limit:
            raise OutOfRange(f"{m} exceeds sieve limit {self.limit}")


def build_sieve(limit: int) -> FactorSieve:
    if limit < 2:
        raise InvalidArgument(f"sieve limit must be >= 2, got {limit}")
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p::p]
            block[block == 0] = p
    idx = np.arange(limit + 1, dtype=np.int64)
    unmarked = spf == 0
    unmarked[:2] = False
    spf[unmarked] = idx[unmarked]

    is_prime = spf == idx
    is_prime[:2] = False
    pi = np.cumsum(is_prime, dtype=np.int64)

    # Omega(m) = number of prime powers p^j dividing m.
    omega = np.zeros(limit + 1, dtype=np.int64)
    for p in np.flatnonzero(is_prime):
        q = int(p)
        while q <= limit:
            omega[q::q] += 1
            q *= int(p)

    for arr in (spf, omega, pi):
        arr.setflags(write=False)
    return FactorSieve(limit=limit, spf=spf, omega=omega, pi=pi)


def big_omega(m: int, sieve: FactorSieve) -> int:
    sieve._check(m)
    return int(sieve.omega[m])


def prime_pi(x: int, sieve: FactorSieve) -> int:
    """Number of primes <= x.  Values of x below 2 give 0."""
    if x > sieve.limit:
        raise OutOfRange(f"{x} exceeds sieve limit {sieve.limit}")
    if x < 2:
        return 0
    return int(sieve.pi[x])


def factor_desc(m: int, sieve: FactorSieve) -> list[int]:
    """Prime factors of m with multiplicity, largest first; [] for m = 1."""
    sieve._check(m)
    spf = sieve.spf
    out = []
    while m > 1:
        p = int(spf[m])
        out.append(p)
        m //= p
    out.reverse()
    return out


def iroot(x: int, k: int) -> int:
    """Largest integer r with r**k <= x (x >= 0)."""
    if x < 0 or k < 1:
        raise InvalidArgument("iroot needs x >= 0 and k >= 1")
    if x < 2:
        return x
    # integer Newton from above; float guesses drift for large x
    r = 1 << (x.bit_length() // k + 1)
    while True:
        nxt = ((k - 1) * r + x // r ** (k - 1)) // k
        if nxt >= r:
            break
        r = nxt
    while r ** k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def two_thirds_floor(n: int) -> int:
    """floor(n^(2/3)), exact."""
    return iroot(n * n, 3)

"""
Verifiers and builders for multiplicative k-Sidon and square-product-free
sets.

A violation of the k-Sidon property is a pair of disjoint k-subsets with
equal products.  A 2k-subset with square product splits into two
k-subsets with equal squarefree parity, so both properties reduce to the
same search: bucket k-subsets by a key, then look for a disjoint pair in
one bucket.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from math import isqrt, prod
from typing import Callable, Iterable, Sequence

import numpy as np

from .arith import FactorSieve, factor_desc
from .errors import InvalidArgument

_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class Violation:
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]
    product: int

    def is_valid(self) -> bool:
        elems = self.lhs + self.rhs
        return (
            len(self.lhs) == len(self.rhs)
            and len(set(elems)) == len(elems)
            and prod(self.lhs) == self.product == prod(self.rhs)
        )

    def as_dict(self) -> dict:
        return {"lhs": list(self.lhs), "rhs": list(self.rhs), "product": self.product}


@dataclass
class SearchResult:
    n: int
    best_set: list[int]
    size: int
    optimal: bool
    nodes_explored: int
    budget_hit: bool
    kind: str = "3-sidon"

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "kind": self.kind,
            "size": self.size,
            "optimal": self.optimal,
            "budget_hit": self.budget_hit,
            "nodes_explored": self.nodes_explored,
            "best_set": self.best_set,
        }


# -- bucketing ---------------------------------------------------------------

def _combo_index(N: int, k: int) -> np.ndarray:
    """All k-combinations of range(N) as rows, lexicographic order."""
    c = np.arange(N, dtype=np.int64)[:, None]
    for _ in range(k - 1):
        last = c[:, -1]
        counts = N - 1 - last
        rows = np.repeat(np.arange(len(c)), counts)
        starts = np.repeat(np.cumsum(counts) - counts, counts)
        newcol = last[rows] + 1 + (np.arange(rows.size) - starts)
        c = np.column_stack([c[rows], newcol])
    return c


def _buckets(keys: np.ndarray) -> list[np.ndarray]:
    """Row-index groups (size >= 2) of equal keys, each ascending."""
    order = np.argsort(keys, kind="stable")
    sk = keys[order]
    if sk.size < 2:
        return []
    same = sk[1:] == sk[:-1]
    if not same.any():
        return []
    edges = np.flatnonzero(np.diff(np.concatenate(([0], same.astype(np.int8), [0]))))
    return [np.sort(order[s:e + 1]) for s, e in zip(edges[::2], edges[1::2])]


def _first_disjoint(rows: list[tuple[int, ...]]) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Lexicographically smallest (a, b), a < b, a and b disjoint."""
    rows = sorted(rows)
    for i, a in enumerate(rows):
        sa = set(a)
        for b in rows[i + 1:]:
            if sa.isdisjoint(b):
                return a, b
    return None


def _disjoint_pairs(rows: list[tuple[int, ...]]):
    rows = sorted(rows)
    for i, a in enumerate(rows):
        sa = set(a)
        for b in rows[i + 1:]:
            if sa.isdisjoint(b):
                yield a, b


def _candidate_groups(elems: Sequence[int], k: int, key: str, sieve: FactorSieve | None):
    """
    Yield lists of k-tuples (values, ascending) that share a product
    ("product") or a squarefree parity ("parity").  Buckets may contain
    hash collisions for "parity"; callers confirm exactly.
    """
    N = len(elems)
    if N < 2 * k:
        return
    vals = np.asarray(elems, dtype=np.int64) if elems[-1] < _INT64_SAFE else None
    if key == "product" and (vals is None or elems[-1] ** k >= _INT64_SAFE):
        groups: dict[int, list[tuple[int, ...]]] = defaultdict(list)
        for c in combinations(elems, k):
            groups[prod(c)].append(c)
        for g in groups.values():
            if len(g) > 1:
                yield g
        return
    idx = _combo_index(N, k)
    if key == "product":
        keys = np.prod(vals[idx], axis=1)
    else:
        h = np.asarray([_parity_hash(a, sieve) for a in elems], dtype=np.uint64)
        keys = np.bitwise_xor.reduce(h[idx], axis=1)
    for b in _buckets(keys):
        rows = idx[b]
        yield [tuple(int(elems[j]) for j in r) for r in rows]


_PRIME_HASH: dict[int, int] = {}


def _prime_hash(p: int) -> int:
    h = _PRIME_HASH.get(p)
    if h is None:
        # splitmix64 of p: deterministic across runs and platforms
        z = (p * 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
        h = _PRIME_HASH[p] = z ^ (z >> 31)
    return h


def _parity_hash(a: int, sieve: FactorSieve | None) -> int:
    h = 0
    for p in (factor_desc(a, sieve) if sieve is not None else _trial_factor(a)):
        h ^= _prime_hash(p)
    return h


def _trial_factor(a: int) -> list[int]:
    out, p = [], 2
    while p * p <= a:
        while a % p == 0:
            out.append(p)
            a //= p
        p += 1
    if a > 1:
        out.append(a)
    return out


def _is_square(x: int) -> bool:
    r = isqrt(x)
    return r * r == x


def _normalize(A: Iterable[int], sieve: FactorSieve | None) -> list[int]:
    elems = sorted(set(int(a) for a in A))
    if elems and elems[0] < 1:
        raise InvalidArgument("elements must be positive integers")
    if sieve is not None and elems:
        sieve._check(elems[-1])
    return elems


# -- verifiers ---------------------------------------------------------------

def verify_k_sidon(A: Iterable[int], k: int = 3, sieve: FactorSieve | None = None) -> Violation | None:
    """
    None when A is multiplicative k-Sidon, else the lexicographically
    smallest violation (lhs < rhs, both sorted).
    """
    if k < 2:
        raise InvalidArgument("k must be at least 2")
    elems = _normalize(A, sieve)
    best = None
    for group in _candidate_groups(elems, k, "product", sieve):
        pair = _first_disjoint(group)
        if pair is not None and (best is None or pair < best):
            best = pair
    if best is None:
        return None
    return Violation(best[0], best[1], prod(best[0]))


def verify_square_free_products(A: Iterable[int], count: int = 6,
                                sieve: FactorSieve | None = None) -> tuple[int, ...] | None:
    """None if no ``count``-subset of A multiplies to a perfect square,
    else one such subset (the union of the smallest disjoint half-pair)."""
    if count < 2 or count % 2:
        raise InvalidArgument("count must be a positive even integer")
    k = count // 2
    elems = _normalize(A, sieve)
    best = None
    for group in _candidate_groups(elems, k, "parity", sieve):
        for a, b in _disjoint_pairs(group):
            if _is_square(prod(a) * prod(b)):
                if best is None or (a, b) < best:
                    best = (a, b)
                break
    if best is None:
        return None
    return tuple(sorted(best[0] + best[1]))


# -- incremental 3-Sidon check -----------------------------------------------

class TripleIndex:
    """Products of all 3-subsets of a growing set, for O(|A|^2) insertion checks."""

    def __init__(self) -> None:
        self.elems: list[int] = []
        self.by_product: dict[int, list[tuple[int, int, int]]] = defaultdict(list)

    def conflict(self, m: int) -> Violation | None:
        """A violation that adding m would create, or None."""
        if m in self.elems:
            raise InvalidArgument(f"{m} already present")
        es = self.elems
        for i in range(len(es)):
            a = es[i]
            for j in range(i + 1, len(es)):
                b = es[j]
                tris = self.by_product.get(m * a * b)
                if not tris:
                    continue
                for t in tris:
                    if a not in t and b not in t:
                        lhs = tuple(sorted((m, a, b)))
                        lo, hi = sorted((lhs, t))
                        return Violation(lo, hi, m * a * b)
        return None

    def add(self, m: int) -> None:
        es = self.elems
        for i in range(len(es)):
            for j in range(i + 1, len(es)):
                self.by_product[m * es[i] * es[j]].append(tuple(sorted((es[i], es[j], m))))
        es.append(m)


def greedy_extend(candidates: Iterable[int]) -> list[int]:
    """Take candidates in the given order, keeping each that leaves the set 3-Sidon."""
    idx = TripleIndex()
    for m in candidates:
        if m in idx.elems:
            continue
        if idx.conflict(m) is None:
            idx.add(m)
    return sorted(idx.elems)


def greedy_3sidon(n: int, sieve: FactorSieve | None = None) -> list[int]:
    if n < 1:
        raise InvalidArgument("n must be positive")
    if sieve is not None:
        sieve._check(n)
    return greedy_extend(range(1, n + 1))


# -- exact search ------------------------------------------------------------

def forbidden_sets(n: int, key: str = "product", sieve: FactorSieve | None = None) -> list[int]:
    """
    Bitmasks (bit e for element e) of 6-subsets of {1..n} that are a
    3-Sidon violation ("product") or have square product ("parity").
    """
    elems = list(range(1, n + 1))
    masks = set()
    for group in _candidate_groups(elems, 3, key, sieve):
        for a, b in _disjoint_pairs(group):
            if key == "parity" and not _is_square(prod(a) * prod(b)):
                continue
            m = 0
            for x in a + b:
                m |= 1 << x
            masks.add(m)
    return sorted(masks)


def exact_max_avoiding(n: int, forbidden: Iterable[int], budget: int = 10_000_000,
                       kind: str = "custom") -> SearchResult:
    """
    Largest subset of {1..n} containing no forbidden mask.

    Elements in no forbidden mask belong to every optimum and are taken
    up front.  The rest is a Russian-doll search: ``ub[e]`` is the exact
    optimum inside the core elements >= e, computed from the top down;
    nodes carry a mask of elements that would complete a forbidden set
    and are counted out of the bound.  A final include-first pass returns
    the first optimal set in that order, i.e. the lexicographically
    smallest one.
    """
    if n < 0:
        raise InvalidArgument("n must be nonnegative")
    forbidden = list(forbidden)
    touched = 0
    for f in forbidden:
        touched |= f
    core = [x for x in range(1, n + 1) if touched >> x & 1]
    free = sum(1 << x for x in range(1, n + 1) if not touched >> x & 1)
    pos = {x: i for i, x in enumerate(core)}
    c = len(core)
    # forbidden sets re-indexed over core positions
    by_max: list[list[int]] = [[] for _ in range(c)]
    by_elem: list[list[int]] = [[] for _ in range(c)]
    for f in forbidden:
        g, top = 0, -1
        for x in core:
            if f >> x & 1:
                g |= 1 << pos[x]
                top = pos[x]
        by_max[top].append(g)
        for i in range(c):
            if g >> i & 1:
                by_elem[i].append(g)
    suffix = [((1 << c) - 1) >> j << j for j in range(c + 1)]
    ub = [0] * (c + 1)
    nodes = 0

    def dfs(j0: int, cur0: int, size0: int, dead0: int, target: int) -> int | None:
        nonlocal nodes
        stack = [(j0, cur0, size0, dead0)]
        while stack:
            j, cur, size, dead = stack.pop()
            nodes += 1
            if nodes > budget:
                return None
            if size >= target:
                return cur
            if j >= c:
                continue
            need = target - size
            if ub[j] < need or bin(suffix[j] & ~dead).count("1") < need:
                continue
            stack.append((j + 1, cur, size, dead))
            if dead >> j & 1:
                continue
            with_j = cur | (1 << j)
            if all(f & ~with_j for f in by_max[j]):
                nd = dead
                for f in by_elem[j]:
                    rest = f & ~with_j
                    if rest & (rest - 1) == 0:
                        nd |= rest
                stack.append((j + 1, with_j, size + 1, nd))
        return None

    def include(cur: int, j: int) -> int:
        d = 0
        for f in by_elem[j]:
            rest = f & ~(cur | 1 << j)
            if rest & (rest - 1) == 0:
                d |= rest
        return d

    hit = False
    for e in range(c - 1, -1, -1):
        found = dfs(e + 1, 1 << e, 1, include(0, e), ub[e + 1] + 1)
        if nodes > budget:
            hit = True
            break
        ub[e] = ub[e + 1] + (found is not None)

    best_core = 0
    if not hit:
        found = dfs(0, 0, 0, 0, ub[0]) if c else 0
        if found is None:
            hit = True
        else:
            best_core = found
    if hit:
        # best-found fallback: include-first greedy completion
        best_core = 0
        for j in range(c):
            with_j = best_core | (1 << j)
            if all(f & ~with_j for f in by_max[j]):
                best_core = with_j

    best_mask = free | sum(1 << x for i, x in enumerate(core) if best_core >> i & 1)
    best = [x for x in range(1, n + 1) if best_mask >> x & 1]
    return SearchResult(n=n, best_set=best, size=len(best), optimal=not hit,
                        nodes_explored=min(nodes, budget), budget_hit=hit, kind=kind)


def exact_max_3sidon(n: int, budget: int = 10_000_000, sieve: FactorSieve | None = None) -> SearchResult:
    if n < 1:
        raise InvalidArgument("n must be positive")
    if sieve is not None:
        sieve._check(n)
    return exact_max_avoiding(n, forbidden_sets(n, "product"), budget, kind="3-sidon")


def exact_max_square_product_free(n: int, budget: int = 10_000_000,
                                  sieve: FactorSieve | None = None) -> SearchResult:
    """Largest subset of {1..n} with no 6 elements multiplying to a square."""
    if n < 1:
        raise InvalidArgument("n must be positive")
    return exact_max_avoiding(n, forbidden_sets(n, "parity", sieve), budget, kind="square-product-free")


def base_construction(n: int, sieve: FactorSieve) -> list[int]:
    """Primes up to n together with their doubles up to n."""
    if n < 2:
        raise InvalidArgument("n must be at least 2")
    sieve._check(n)
    ps = sieve.primes(2, n)
    return sorted(set(ps) | {2 * p for p in ps if 2 * p <= n})

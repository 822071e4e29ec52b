"""
C6-extremal numbers: closed-form bounds plus an exact search for tiny
orders that serves as an oracle against them.

Graphs inside the brute-force search are tuples of neighbour bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .encode import EdgeGraph, six_cycle
from .errors import BudgetExceeded, InvalidArgument

MAX_GENERAL_ORDER = 9
MAX_BIPARTITE_SIDE = 5
FUREDI_CONSTANT = 0.6272
CBRT2 = 2.0 ** (1.0 / 3.0)


@dataclass(frozen=True)
class ExtremalResult:
    kind: str  # "general" or "bipartite"
    sizes: tuple[int, ...]
    max_edges: int
    witness: tuple[tuple[int, int], ...]


def _adjacency(edges: Iterable[tuple[int, int]]) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {}
    for a, b in edges:
        if a == b:
            raise InvalidArgument(f"loop at {a}")
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    return adj


def is_c6_free(g: EdgeGraph | Iterable[tuple[int, int]]) -> bool:
    adj = g.adjacency if isinstance(g, EdgeGraph) else _adjacency(g)
    return six_cycle(adj) is None


# -- closed forms ------------------------------------------------------------

def bound_furedi_balanced(n: int) -> tuple[float, float]:
    """(0.6272 n^(4/3), n^(4/3)): strong and weak forms."""
    if n < 1:
        raise InvalidArgument("n must be positive")
    weak = float(n) ** (4.0 / 3.0)
    return FUREDI_CONSTANT * weak, weak


def bound_furedi_unbalanced(u: int, v: int) -> float:
    if u < 1 or v < 1:
        raise InvalidArgument("class sizes must be positive")
    return CBRT2 * float(u * v) ** (2.0 / 3.0) + 16.0 * (u + v)


def bound_gyori(u: int, v: int) -> float:
    """2u + v^2/2, valid for v <= u."""
    if u < 1 or v < 1:
        raise InvalidArgument("class sizes must be positive")
    if v > u:
        raise InvalidArgument(f"needs v <= u, got u={u}, v={v}")
    return 2.0 * u + v * v / 2.0


# -- bitmask helpers ---------------------------------------------------------

def _path4_conflicts(adj: Sequence[int]) -> list[int]:
    """
    conf[a] has bit b set when a and b are the ends of a path with four
    edges on five distinct vertices.  A new vertex adjacent to both a and b
    would close a 6-cycle.
    """
    k = len(adj)
    conf = [0] * k
    for a in range(k):
        acc = 0
        m1 = adj[a]
        while m1:
            x = (m1 & -m1).bit_length() - 1
            m1 &= m1 - 1
            used1 = (1 << a) | (1 << x)
            m2 = adj[x] & ~used1
            while m2:
                y = (m2 & -m2).bit_length() - 1
                m2 &= m2 - 1
                used2 = used1 | (1 << y)
                m3 = adj[y] & ~used2
                while m3:
                    z = (m3 & -m3).bit_length() - 1
                    m3 &= m3 - 1
                    acc |= adj[z] & ~(used2 | (1 << z))
        conf[a] = acc
    return conf


def _independent_subsets(conf: Sequence[int], allowed: int) -> list[int]:
    """All subsets of ``allowed`` containing no conflicting pair."""
    out = [0]
    m = allowed
    while m:
        b = (m & -m).bit_length() - 1
        m &= m - 1
        out += [s | (1 << b) for s in out if not (conf[b] & s)]
    return out


def _edge_count(adj: Sequence[int]) -> int:
    return sum(bin(x).count("1") for x in adj) // 2


def _edges_of(adj: Sequence[int]) -> tuple[tuple[int, int], ...]:
    return tuple((a, b) for a in range(len(adj)) for b in range(a + 1, len(adj)) if adj[a] >> b & 1)


def _extend(adj: tuple[int, ...], nbhd: int) -> tuple[int, ...]:
    k = len(adj)
    new = [x | (1 << k) if nbhd >> i & 1 else x for i, x in enumerate(adj)]
    new.append(nbhd)
    return tuple(new)


# -- canonical form (individualisation/refinement, twin pruning) -------------

_LEAF_CAP = 5000


def _refine(adj: Sequence[int], colors: list[int]) -> list[int]:
    k = len(adj)
    while True:
        sig = []
        for v in range(k):
            nb = adj[v]
            sig.append((colors[v], tuple(sorted(colors[w] for w in range(k) if nb >> w & 1))))
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(ranks) == len(set(colors)):
            return new
        colors = new


def canonical_key(adj: tuple[int, ...]) -> tuple:
    """Isomorphism-invariant key; falls back to the labelled graph if the
    search tree is too wide (then duplicates survive, nothing is lost)."""
    k = len(adj)
    best = None
    leaves = 0

    def code(order: list[int]) -> int:
        c = 0
        for i in range(k):
            ai = adj[order[i]]
            for j in range(i + 1, k):
                c = (c << 1) | (ai >> order[j] & 1)
        return c

    def rec(colors: list[int]) -> bool:
        nonlocal best, leaves
        colors = _refine(adj, colors)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        if len(cells) == k:
            leaves += 1
            order = sorted(range(k), key=lambda v: colors[v])
            c = code(order)
            if best is None or c > best:
                best = c
            return leaves <= _LEAF_CAP
        target = min((c for c, vs in cells.items() if len(vs) > 1), key=lambda c: (len(cells[c]), c))
        tried: list[int] = []
        for v in cells[target]:
            if any(_twins(adj, v, w) for w in tried):
                continue
            tried.append(v)
            nxt = [2 * c for c in colors]
            nxt[v] -= 1
            if not rec(nxt):
                return False
        return True

    if rec([0] * k):
        return ("canon", k, best)
    return ("raw", adj)


def _twins(adj: Sequence[int], v: int, w: int) -> bool:
    mask = ~((1 << v) | (1 << w))
    return adj[v] & mask == adj[w] & mask


# -- exact searches ----------------------------------------------------------

def brute_force_ex_c6(n: int) -> ExtremalResult:
    """
    ex(n, C6) for n <= 9, with a witness.

    Every C6-free graph on k+1 vertices minus its last vertex is C6-free
    on k vertices, so all of them arise by extending the isomorphism
    classes of the previous level by a neighbourhood that avoids the
    conflict pairs.  The last level only needs the best extension.
    """
    if n < 1:
        raise InvalidArgument("n must be positive")
    if n > MAX_GENERAL_ORDER:
        raise BudgetExceeded(f"general brute force is capped at n={MAX_GENERAL_ORDER}")
    if n == 1:
        return ExtremalResult("general", (1,), 0, ())
    level = {canonical_key((0,)): (0,)}
    for k in range(1, n - 1):
        nxt: dict[tuple, tuple[int, ...]] = {}
        for adj in level.values():
            conf = _path4_conflicts(adj)
            for nb in _independent_subsets(conf, (1 << k) - 1):
                g = _extend(adj, nb)
                key = canonical_key(g)
                if key not in nxt:
                    nxt[key] = g
        level = nxt
    best_adj: tuple[int, ...] | None = None
    best = -1
    for adj in sorted(level.values()):
        conf = _path4_conflicts(adj)
        base = _edge_count(adj)
        for nb in _independent_subsets(conf, (1 << (n - 1)) - 1):
            e = base + bin(nb).count("1")
            if e > best:
                best, best_adj = e, _extend(adj, nb)
    assert best_adj is not None
    return ExtremalResult("general", (n,), best, _edges_of(best_adj))


def brute_force_ex_c6_bipartite(u: int, v: int) -> ExtremalResult:
    """
    ex(u, v, C6) for u, v <= 5.  Class U is vertices 0..u-1; the v
    vertices of class V are interchangeable, so their neighbourhoods
    are chosen as a nondecreasing sequence of subsets of U.
    """
    if u < 1 or v < 1:
        raise InvalidArgument("class sizes must be positive")
    if u > MAX_BIPARTITE_SIDE or v > MAX_BIPARTITE_SIDE:
        raise BudgetExceeded(f"bipartite brute force is capped at {MAX_BIPARTITE_SIDE} per side")
    full = (1 << u) - 1
    best = [-1, ()]

    def rec(adj: tuple[int, ...], placed: int, lo: int, edges: int) -> None:
        if placed == v:
            if edges > best[0]:
                best[0], best[1] = edges, adj
            return
        conf = _path4_conflicts(adj)
        cands = [nb for nb in _independent_subsets(conf, full) if nb >= lo]
        cands.sort(key=lambda nb: (-bin(nb).count("1"), nb))
        if not cands:
            return
        top = bin(cands[0]).count("1")
        for nb in cands:
            d = bin(nb).count("1")
            # later vertices can only lose options, never gain degree beyond top
            if edges + d + (v - placed - 1) * top <= best[0]:
                break
            rec(_extend(adj, nb), placed + 1, nb, edges + d)

    rec(tuple([0] * u), 0, 0, 0)
    return ExtremalResult("bipartite", (u, v), best[0], _edges_of(best[1]))

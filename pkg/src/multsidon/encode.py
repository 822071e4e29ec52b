"""
Set -> graph encoding.

Each element a of A becomes the edge {u, v} of its minimal-v split.
Squares whose minimal split has u == v would be loops and are set aside.
Any 6-cycle x1..x6 in the resulting graph is a witness that A is not
multiplicative 3-Sidon: x1x2 * x3x4 * x5x6 == x2x3 * x4x5 * x6x1.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .arith import FactorSieve, prime_pi, two_thirds_floor
from .decompose import Case, Decomposition, min_v_decompose
from .errors import InvalidArgument


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    label: int
    case: Case

    @property
    def key(self) -> tuple[int, int]:
        return (min(self.u, self.v), max(self.u, self.v))


@dataclass
class EdgeGraph:
    n: int
    edges: list[Edge]
    adjacency: dict[int, list[int]]
    skipped_squares: list[int] = field(default_factory=list)

    @property
    def cube_bound(self) -> int:
        """Largest integer vertex, floor(n^(2/3))."""
        return two_thirds_floor(self.n)

    def num_vertices(self, sieve: FactorSieve) -> int:
        """Size of the full vertex set, isolated vertices included."""
        t = self.cube_bound
        return prime_pi(self.n, sieve) + t - prime_pi(t, sieve)

    def vertices(self, sieve: FactorSieve) -> list[int]:
        t = self.cube_bound
        return list(range(1, t + 1)) + sieve.primes(t + 1, self.n)

    def active_vertices(self) -> list[int]:
        return sorted(self.adjacency)

    def isolated_count(self, sieve: FactorSieve) -> int:
        return self.num_vertices(sieve) - len(self.adjacency)

    def export_lines(self) -> list[str]:
        """``u v label`` per edge, u < v, ascending."""
        return [f"{e.key[0]} {e.key[1]} {e.label}" for e in sorted(self.edges, key=lambda e: e.key)]


@dataclass(frozen=True)
class Hexagon:
    vertices: tuple[int, ...]
    edge_labels: tuple[int, ...]

    def __post_init__(self):
        vs = self.vertices
        if len(vs) != 6 or len(set(vs)) != 6:
            raise InvalidArgument(f"a hexagon needs six distinct vertices, got {vs}")
        want = tuple(vs[i] * vs[(i + 1) % 6] for i in range(6))
        if tuple(self.edge_labels) != want:
            raise InvalidArgument(f"labels {self.edge_labels} do not match cycle {vs}")

    @classmethod
    def from_cycle(cls, vertices: Iterable[int]) -> "Hexagon":
        vs = tuple(vertices)
        if len(vs) != 6:
            raise InvalidArgument(f"a hexagon needs six vertices, got {len(vs)}")
        return cls(vs, tuple(vs[i] * vs[(i + 1) % 6] for i in range(6)))


def build_graph(A: Iterable[int], n: int, sieve: FactorSieve) -> EdgeGraph:
    sieve._check(n)
    elems = sorted(set(A))
    for a in elems:
        if a < 1 or a > n:
            raise InvalidArgument(f"element {a} outside 1..{n}")
    edges: list[Edge] = []
    skipped: list[int] = []
    adj: dict[int, list[int]] = defaultdict(list)
    for a in elems:
        d: Decomposition = min_v_decompose(a, n, sieve)
        if d.u == d.v:
            skipped.append(a)
            continue
        edges.append(Edge(d.u, d.v, a, d.case))
        adj[d.u].append(d.v)
        adj[d.v].append(d.u)
    for nbrs in adj.values():
        nbrs.sort()
    return EdgeGraph(n=n, edges=edges, adjacency=dict(adj), skipped_squares=skipped)


def six_cycle(adjacency: Mapping[int, Iterable[int]]) -> tuple[int, ...] | None:
    """
    First 6-cycle found, as a vertex tuple starting at its smallest vertex.

    For each start s (ascending) we walk paths s-a-b-t over vertices
    larger than s and join two of them that meet at t and are otherwise
    disjoint.  Neighbours are visited in ascending order so the result is
    a function of the graph alone.
    """
    adj = {x: sorted(set(ns)) for x, ns in adjacency.items()}
    for s in sorted(adj):
        seen: dict[int, list[tuple[int, int]]] = defaultdict(list)
        for a in adj[s]:
            if a <= s:
                continue
            for b in adj.get(a, ()):
                if b <= s or b == a:
                    continue
                for t in adj.get(b, ()):
                    if t <= s or t == a or t == b:
                        continue
                    for c, d in seen[t]:
                        if c != a and c != b and d != a and d != b:
                            return (s, c, d, t, b, a)
                    seen[t].append((a, b))
    return None


def find_hexagon(g: EdgeGraph) -> Hexagon | None:
    cyc = six_cycle(g.adjacency)
    return None if cyc is None else Hexagon.from_cycle(cyc)


def hexagon_to_solution(h: Hexagon) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
    """
    Alternate the cycle's edge labels into (s1, s2, s3) and (t1, t2, t3);
    both sides multiply to the product of the six vertices.
    """
    lab = h.edge_labels
    return (lab[0], lab[2], lab[4]), (lab[1], lab[3], lab[5])

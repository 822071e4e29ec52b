"""
Edge accounting for the graph of a set, the closed-form caps attached to
each part, the Omega census, and the G_3(n) bound report.

Logarithms are natural.  Band thresholds are integers computed with
exact roots so every membership test is exact.
"""

from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import dataclass, field, asdict
from math import isqrt, lgamma, log

import numpy as np

from .arith import FactorSieve, iroot, prime_pi, two_thirds_floor
from .decompose import Case
from .encode import Edge, EdgeGraph
from .errors import InvalidArgument

EXPONENT = 2.0 ** (1.0 / 3.0) - 1.0 / 3.0
LOWER_EXPONENT = 4.0 / 3.0
HKL_LOG_EXPONENT = 4.0 / 3.0 - 2.0 ** (1.0 / 3.0)
H1_FRACTION = 0.55
H2_FRACTION = 1.6
MIN_LEDGER_N = 16
HARD_CAP_FLOOR = 10_000


@dataclass(frozen=True)
class BoundConstants:
    """Unspecified constants of the asymptotic caps; any positive values."""

    c2: float = 2.5  # must exceed 2^(1/3) e^(2/3) ~ 2.4545 for the H1/H2 step
    c7: float = 1.0
    c8: float = 1.0
    c9: float = 1.0
    c10: float = 3.0
    delta: float = 0.1
    C_delta: float = 1.0

    def __post_init__(self):
        for name in ("c2", "c7", "c8", "c9", "c10", "C_delta"):
            if not getattr(self, name) > 0:
                raise InvalidArgument(f"{name} must be positive")
        if not 0 < self.delta < 1:
            raise InvalidArgument("delta must lie in (0, 1)")


@dataclass(frozen=True, order=True)
class PartKey:
    part: str  # G0 | Gprime | Gdoubleprime | GK1
    h: int = 0
    sub: str = ""  # H1 | H2 | Hkl | "" ; for GK1: "deleted" | "rest"
    k: int = -1
    l: int = -1

    def label(self) -> str:
        s = self.part
        if self.h:
            s += f"[{self.h}]"
        if self.sub:
            s += f".{self.sub}"
        if self.sub == "Hkl":
            s += f"({self.k},{self.l})"
        return s


@dataclass
class PartEntry:
    edge_count: int
    cap: float | None
    cap_kind: str  # hard | asymptotic | none
    formula: str


@dataclass
class PartitionLedger:
    n: int
    K: int
    parts: dict[PartKey, PartEntry]
    total: int
    skipped_squares: int
    aggregates: list[dict] = field(default_factory=list)

    def counted(self) -> int:
        return sum(e.edge_count for e in self.parts.values())

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["part_key", "h", "subkey", "k", "l", "edge_count", "cap", "cap_kind"])
        for key in sorted(self.parts):
            e = self.parts[key]
            w.writerow([key.part, key.h if key.h else "", key.sub,
                        key.k if key.k >= 0 else "", key.l if key.l >= 0 else "",
                        e.edge_count, _fmt(e.cap), e.cap_kind])
        for row in self.aggregates:
            w.writerow([row["part_key"], row.get("h", ""), "", "", "", row["edge_count"],
                        _fmt(row["cap"]), row["cap_kind"]])
        return buf.getvalue()

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "K": self.K,
            "total": self.total,
            "skipped_squares": self.skipped_squares,
            "parts": [
                {"part_key": k.label(), "edge_count": e.edge_count, "cap": e.cap,
                 "cap_kind": e.cap_kind, "formula": e.formula}
                for k, e in sorted(self.parts.items())
            ],
            "aggregates": self.aggregates,
        }


def _fmt(x: float | None) -> str:
    return "" if x is None else repr(float(x))


# -- band geometry -----------------------------------------------------------

def band_count(n: int) -> int:
    """K = max(1, floor(ln n / 6))."""
    return max(1, int(math.floor(log(n) / 6.0)))


def band_thresholds(n: int, K: int) -> list[int]:
    """
    T[h] = floor(n^(1/2 + h/(6K))) for h = 0..K, so band h is
    T[h-1] < max(u, v) <= T[h] (for integers, x <= y  <=>  x <= floor(y)).
    T[0] = isqrt(n), T[K] = floor(n^(2/3)).
    """
    return [iroot(n ** (3 * K + h), 6 * K) for h in range(K + 1)]


def band_exponents(h: int, K: int) -> tuple[float, float]:
    """(alpha, beta) for band h: u <= n^alpha, v <= n^beta on its edges."""
    return 0.5 + h / (6.0 * K), 0.5 - (h - 1) / (6.0 * K)


def _band_of(x: int, T: list[int]) -> int:
    for h in range(1, len(T)):
        if T[h - 1] < x <= T[h]:
            return h
    raise AssertionError(f"{x} outside all bands {T}")


# -- partition ---------------------------------------------------------------

def classify_edge(e: Edge, n: int, K: int, T: list[int], omega: np.ndarray,
                  lnln: float) -> PartKey:
    if e.case is Case.LARGE_PRIME:
        sub = "deleted" if e.v == 1 and 2 * e.u > n else "rest"
        return PartKey("GK1", 0, sub)
    u, v = e.u, e.v
    if u * u <= n and v * v <= n:
        return PartKey("G0")
    top = max(u, v)
    h = _band_of(top, T)
    side = "Gprime" if u == top else "Gdoubleprime"
    ou, ov = int(omega[u]), int(omega[v])
    if ou <= H1_FRACTION * lnln:
        return PartKey(side, h, "H1")
    if ov >= H2_FRACTION * lnln:
        return PartKey(side, h, "H2")
    return PartKey(side, h, "Hkl", ou, ov)


def partition_edges(g: EdgeGraph, n: int, sieve: FactorSieve,
                    constants: BoundConstants | None = None) -> PartitionLedger:
    if g.n != n:
        raise InvalidArgument(f"graph was built for n={g.n}, not n={n}")
    if n < MIN_LEDGER_N:
        raise InvalidArgument(f"ledger needs n >= {MIN_LEDGER_N}")
    sieve._check(n)
    constants = constants or BoundConstants()
    K = band_count(n)
    T = band_thresholds(n, K)
    lnln = log(log(n))
    counts = Counter(classify_edge(e, n, K, T, sieve.omega, lnln) for e in g.edges)

    caps = theoretical_caps(n, sieve, constants)
    parts = {}
    for key, c in counts.items():
        cap, kind, formula = caps.leaf(key)
        parts[key] = PartEntry(c, cap, kind, formula)

    led = PartitionLedger(n=n, K=K, parts=parts, total=len(g.edges),
                          skipped_squares=len(g.skipped_squares))
    led.aggregates = caps.aggregate_rows(counts, len(g.skipped_squares), len(g.edges))
    return led


# -- caps --------------------------------------------------------------------

@dataclass
class CapTable:
    n: int
    K: int
    constants: BoundConstants
    pi_n: int
    pi_half: int
    pi_cube: int

    @property
    def ln(self) -> float:
        return log(self.n)

    @property
    def lnln(self) -> float:
        return log(log(self.n))

    @property
    def n23(self) -> float:
        return float(self.n) ** (2.0 / 3.0)

    def _side(self, h: int) -> float:
        a, b = band_exponents(h, self.K)
        return float(self.n) ** a + float(self.n) ** b

    def g0(self) -> float:
        return self.n23

    def h12(self, h: int) -> float:
        return self.constants.c2 * self.n23 / self.ln ** 0.08 + 16.0 * self._side(h)

    def hkl(self, h: int) -> float:
        return self.constants.c7 * self.n23 / self.ln ** HKL_LOG_EXPONENT + 16.0 * self._side(h)

    def band_total(self, h: int) -> float:
        c7 = self.constants.c7
        return ((c7 + 1.0) * self.n23 * self.lnln ** 2 / self.ln ** HKL_LOG_EXPONENT
                + 17.0 * self.lnln ** 2 * self._side(h))

    def side_sum(self) -> float:
        c = self.constants
        return (c.c8 * self.n23 * self.ln ** EXPONENT * self.lnln ** 2
                + c.c9 * self.n23 * self.lnln ** 2)

    def gk1_deleted(self) -> float:
        return float(self.pi_n - self.pi_half)

    def gk1_rest(self) -> float:
        return 2.0 * (self.pi_half - self.pi_cube) + self.n23 / 2.0

    def gk1(self) -> float:
        return self.pi_n + self.pi_half + self.n23 / 2.0

    def total(self) -> float:
        return self.pi_n + self.pi_half + self.constants.c10 * self.n23 * self.ln ** EXPONENT * self.lnln ** 2

    def leaf(self, key: PartKey) -> tuple[float | None, str, str]:
        if key.part == "G0":
            return self.g0(), "hard", "n^(2/3)"
        if key.part == "GK1":
            if key.sub == "deleted":
                return self.gk1_deleted(), "hard", "pi(n)-pi(n/2)"
            return self.gk1_rest(), "hard", "2(pi(n/2)-pi(n^(2/3)))+n^(2/3)/2"
        if key.sub in ("H1", "H2"):
            return self.h12(key.h), "asymptotic", "c2*n^(2/3)/ln(n)^0.08+16(n^alpha+n^beta)"
        return self.hkl(key.h), "asymptotic", "c7*n^(2/3)/ln(n)^(4/3-2^(1/3))+16(n^alpha+n^beta)"

    def aggregate_rows(self, counts: Counter, skipped: int, total: int) -> list[dict]:
        rows = []
        for side in ("Gprime", "Gdoubleprime"):
            for h in range(1, self.K + 1):
                c = sum(v for k, v in counts.items() if k.part == side and k.h == h)
                rows.append({"part_key": f"{side}_band", "h": h, "edge_count": c,
                             "cap": self.band_total(h), "cap_kind": "asymptotic",
                             "formula": "(c7+1)n^(2/3)lnln(n)^2/ln(n)^(4/3-2^(1/3))+17 lnln(n)^2(n^alpha+n^beta)"})
            c = sum(v for k, v in counts.items() if k.part == side)
            rows.append({"part_key": f"{side}_total", "h": "", "edge_count": c,
                         "cap": self.side_sum(), "cap_kind": "asymptotic",
                         "formula": "c8 n^(2/3)ln(n)^(2^(1/3)-1/3)lnln(n)^2+c9 n^(2/3)lnln(n)^2"})
        c = sum(v for k, v in counts.items() if k.part == "GK1")
        rows.append({"part_key": "GK1_total", "h": "", "edge_count": c, "cap": self.gk1(),
                     "cap_kind": "hard", "formula": "pi(n)+pi(n/2)+n^(2/3)/2"})
        rows.append({"part_key": "skipped_squares", "h": "", "edge_count": skipped,
                     "cap": float(isqrt(self.n)), "cap_kind": "hard", "formula": "floor(sqrt(n))"})
        rows.append({"part_key": "total", "h": "", "edge_count": total, "cap": self.total(),
                     "cap_kind": "asymptotic",
                     "formula": "pi(n)+pi(n/2)+c10 n^(2/3)ln(n)^(2^(1/3)-1/3)lnln(n)^2"})
        return rows


def theoretical_caps(n: int, sieve: FactorSieve, constants: BoundConstants | None = None) -> CapTable:
    if n < MIN_LEDGER_N:
        raise InvalidArgument(f"caps need n >= {MIN_LEDGER_N}")
    return CapTable(
        n=n, K=band_count(n), constants=constants or BoundConstants(),
        pi_n=prime_pi(n, sieve), pi_half=prime_pi(n // 2, sieve),
        pi_cube=prime_pi(two_thirds_floor(n), sieve),
    )


def hard_cap_violations(led: PartitionLedger, floor: int = HARD_CAP_FLOOR) -> list[str]:
    """
    Labels of hard caps exceeded.  The G0 cap only binds for large n, so
    below ``floor`` it is reported but not counted as a violation.
    """
    bad = []
    for key, e in led.parts.items():
        if e.cap_kind != "hard" or e.cap is None:
            continue
        if key.part == "G0" and led.n < floor:
            continue
        if e.edge_count > e.cap:
            bad.append(key.label())
    for row in led.aggregates:
        if row["cap_kind"] == "hard" and row["edge_count"] > row["cap"]:
            bad.append(row["part_key"])
    return bad


# -- census ------------------------------------------------------------------

@dataclass
class CensusRow:
    x: int
    i: int
    N_exact: int
    M_exact: int
    bound_value: float | None
    remark_exponent: float | None

    FIELDS = ("x", "i", "N_exact", "M_exact", "bound_value", "remark_exponent")

    def as_dict(self) -> dict:
        return {f: getattr(self, f) for f in self.FIELDS}


def census(x: int, i: int, sieve: FactorSieve, constants: BoundConstants | None = None) -> CensusRow:
    """
    N_i(x) = #{m <= x : Omega(m) <= i}, M_i(x) = #{m <= x : Omega(m) >= i},
    with C(delta) x/ln x (lnln x)^(i-1)/(i-1)! and the exponent
    alpha - alpha ln alpha, alpha = (i-1)/lnln x.
    """
    if x < MIN_LEDGER_N:
        raise InvalidArgument(f"census needs x >= {MIN_LEDGER_N}")
    if i < 0:
        raise InvalidArgument("i must be nonnegative")
    sieve._check(x)
    constants = constants or BoundConstants()
    om = sieve.omega[1:x + 1]
    N = int(np.count_nonzero(om <= i))
    M = int(np.count_nonzero(om >= i))
    if i == 0:
        return CensusRow(x, i, N, M, None, None)
    L = log(log(x))
    bound = constants.C_delta * x / log(x) * math.exp((i - 1) * log(L) - lgamma(i))
    alpha = (i - 1) / L
    expo = 0.0 if alpha == 0 else alpha - alpha * log(alpha)
    return CensusRow(x, i, N, M, bound, expo)


# -- report ------------------------------------------------------------------

FORMULAS = {
    "pi_n": "pi(n)",
    "pi_half": "pi(floor(n/2))",
    "main_term": "pi(n)+pi(n/2)",
    "exponent": "2^(1/3)-1/3",
    "main_error": "n^(2/3)*ln(n)^(2^(1/3)-1/3)",
    "proof_error": "n^(2/3)*ln(n)^(2^(1/3)-1/3)*lnln(n)^2",
    "lower_error": "n^(2/3)/ln(n)^(4/3)",
    "upper_main": "pi(n)+pi(n/2)+n^(2/3)*ln(n)^(2^(1/3)-1/3)",
    "gk1_cap": "pi(n)+pi(n/2)+n^(2/3)/2",
    "n_two_thirds": "n^(2/3)",
}


def g3_bound_report(n: int, sieve: FactorSieve) -> dict:
    if n < MIN_LEDGER_N:
        raise InvalidArgument(f"report needs n >= {MIN_LEDGER_N}")
    sieve._check(n)
    pn, ph = prime_pi(n, sieve), prime_pi(n // 2, sieve)
    n23 = float(n) ** (2.0 / 3.0)
    ln = log(n)
    main_err = n23 * ln ** EXPONENT
    return {
        "n": n,
        "pi_n": pn,
        "pi_half": ph,
        "main_term": pn + ph,
        "exponent": EXPONENT,
        "n_two_thirds": n23,
        "main_error": main_err,
        "proof_error": main_err * log(ln) ** 2,
        "lower_error": n23 / ln ** LOWER_EXPONENT,
        "upper_main": pn + ph + main_err,
        "gk1_cap": pn + ph + n23 / 2.0,
        "error_exponent_note": "o(1)",
        "formulas": FORMULAS,
    }

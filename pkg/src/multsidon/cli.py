"""
Command-line front end.

    multsidon <command> [options]

Commands: decompose, verify, encode, ledger, census, search, extremal,
bounds.  Exit status is 0 on success, 1 when a check finds a
counterexample, 2 on bad input.  A flat ``key=value`` file passed with
--config supplies defaults for any option; flags given on the command
line win.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict

from . import __version__
from .arith import FactorSieve, build_sieve
from .decompose import lemma_decompose, min_v_decompose, scan_range
from .encode import build_graph, find_hexagon, hexagon_to_solution
from .errors import BudgetExceeded, InvalidArgument, OutOfRange
from .extremal import (bound_furedi_balanced, bound_furedi_unbalanced, bound_gyori,
                       brute_force_ex_c6, brute_force_ex_c6_bipartite, is_c6_free)
from .ledger import (BoundConstants, census, g3_bound_report, hard_cap_violations,
                     partition_edges, CensusRow)
from .sidonkit import (base_construction, exact_max_3sidon, exact_max_square_product_free,
                       greedy_3sidon, verify_k_sidon, verify_square_free_products)

ENV_SIEVE_LIMIT = "MULTSIDON_SIEVE_LIMIT"


class UsageError(Exception):
    pass


# -- io helpers --------------------------------------------------------------

def read_set_file(path: str) -> list[int]:
    """Newline-delimited decimal integers; '#' starts a comment."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                out.append(int(line, 10))
            except ValueError:
                raise UsageError(f"{path}:{lineno}: not an integer: {line!r}") from None
    return out


def write_set(values) -> str:
    return "".join(f"{v}\n" for v in values)


def read_config(path: str) -> dict[str, str]:
    cfg = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            k, v = line.split("=", 1)
            cfg[k.strip().replace("-", "_")] = v.strip()
    return cfg


def _emit(report: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(report, indent=2) + "\n")
    elif fmt == "text":
        for k, v in report.items():
            if k == "formulas":
                continue
            out.write(f"{k}: {json.dumps(v) if isinstance(v, (dict, list)) else v}\n")
    else:
        raise UsageError(f"format {fmt!r} not supported for this command")


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(["" if x is None else (repr(x) if isinstance(x, float) else x) for x in r])
    return buf.getvalue()


def _sieve(args, need: int) -> FactorSieve:
    limit = args.sieve_limit
    if limit is None:
        env = os.environ.get(ENV_SIEVE_LIMIT)
        limit = int(env) if env else None
    if limit is None:
        limit = max(need, 2)
    if limit < need:
        raise UsageError(f"sieve limit {limit} is below required {need}")
    return build_sieve(max(limit, 2))


def _constants(args) -> BoundConstants:
    return BoundConstants(c2=args.c2, c7=args.c7, c8=args.c8, c9=args.c9, c10=args.c10,
                          delta=args.delta, C_delta=args.C_delta)


def _input_set(args) -> list[int]:
    if getattr(args, "file", None):
        return read_set_file(args.file)
    if getattr(args, "random", None):
        if not args.n:
            raise UsageError("--random needs --n")
        rng = random.Random(args.seed)
        return sorted(rng.sample(range(1, args.n + 1), min(args.random, args.n)))
    raise UsageError("give a set file or --random SIZE")


# -- parallel helpers --------------------------------------------------------

_WORKER_SIEVE: FactorSieve | None = None


def _init_worker(limit: int) -> None:
    global _WORKER_SIEVE
    _WORKER_SIEVE = build_sieve(limit)


def _scan_chunk(job):
    lo, hi, n = job
    return scan_range(lo, hi, n, _WORKER_SIEVE)


def _census_job(job):
    x, i, consts = job
    return census(x, i, _WORKER_SIEVE, consts)


def _map(fn, jobs, workers: int, limit: int, sieve: FactorSieve):
    """Ordered map; serial when workers == 1."""
    global _WORKER_SIEVE
    if workers <= 1 or len(jobs) <= 1:
        _WORKER_SIEVE = sieve
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=(limit,)) as ex:
        return list(ex.map(fn, jobs))


# -- commands ----------------------------------------------------------------

def cmd_decompose(args, out) -> int:
    n = args.n
    if n is None or n < 1:
        raise UsageError("--n must be a positive integer")
    sieve = _sieve(args, n)
    if args.emit:
        rule = lemma_decompose if args.rule == "lemma" else min_v_decompose
        rows = []
        for m in range(1, n + 1):
            d = rule(m, n, sieve)
            rows.append((m, d.u, d.v, d.case.value))
        out.write(_csv(["m", "u", "v", "case"], rows))
        return 0
    step = max(1, -(-n // (4 * max(args.workers, 1))))
    jobs = [(lo, min(lo + step - 1, n), n) for lo in range(1, n + 1, step)]
    parts = _map(_scan_chunk, jobs, args.workers, sieve.limit, sieve)
    counts = {"LargePrime": 0, "Balanced": 0}
    failures: list[int] = []
    prefix = 0
    for p in parts:
        for k, v in p["counts"].items():
            counts[k] += v
        failures += p["failures"]
        prefix += p["prefix_violations"]
    report = {
        "command": "decompose",
        "n": n,
        "rule": "lemma",
        "scanned": n,
        "counts": counts,
        "failures": len(failures),
        "first_failures": failures[:10],
        "prefix_violations": prefix,
        "totality": not failures,
        "formulas": {"counts": "#{m<=n} per case", "prefix_violations": "#{3(i-1) >= Omega(m)}"},
    }
    _emit(report, args.format, out)
    return 0 if not failures and not prefix else 1


def cmd_verify(args, out) -> int:
    A = _input_set(args)
    need = max(A) if A else 2
    sieve = _sieve(args, need)
    k = args.k
    viol = verify_k_sidon(A, k, sieve)
    witness = verify_square_free_products(A, 2 * k, sieve)
    report = {
        "command": "verify",
        "k": k,
        "size": len(set(A)),
        "k_sidon": viol is None,
        "violation": None if viol is None else viol.as_dict(),
        "square_product_free": witness is None,
        "square_witness": None if witness is None else list(witness),
        "formulas": {"violation.product": "prod(lhs)=prod(rhs)",
                     "square_witness": f"{2 * k}-subset with square product"},
    }
    if args.format == "csv":
        out.write(_csv(["check", "ok", "witness"], [
            ("k_sidon", viol is None, "" if viol is None else " ".join(map(str, viol.lhs + viol.rhs))),
            ("square_product_free", witness is None, "" if witness is None else " ".join(map(str, witness))),
        ]))
    else:
        _emit(report, args.format, out)
    return 0 if viol is None and witness is None else 1


def cmd_encode(args, out) -> int:
    A = _input_set(args)
    n = args.n or (max(A) if A else 1)
    sieve = _sieve(args, n)
    g = build_graph(A, n, sieve)
    hexagon = find_hexagon(g)
    if args.format == "text":
        out.write("".join(line + "\n" for line in g.export_lines()))
        if hexagon is not None:
            s, t = hexagon_to_solution(hexagon)
            out.write(f"# hexagon {' '.join(map(str, hexagon.vertices))}\n")
            out.write(f"# solution {' '.join(map(str, s))} | {' '.join(map(str, t))}\n")
    elif args.format == "json":
        report = {
            "command": "encode",
            "n": n,
            "edges": [[e.key[0], e.key[1], e.label] for e in sorted(g.edges, key=lambda e: e.key)],
            "skipped_squares": g.skipped_squares,
            "active_vertices": len(g.adjacency),
            "vertex_count": g.num_vertices(sieve),
            "hexagon": None if hexagon is None else list(hexagon.vertices),
            "solution": None if hexagon is None else [list(x) for x in hexagon_to_solution(hexagon)],
            "formulas": {"vertex_count": "pi(n)+floor(n^(2/3))-pi(n^(2/3))"},
        }
        _emit(report, "json", out)
    else:
        out.write(_csv(["u", "v", "label"], [ln.split() for ln in g.export_lines()]))
    return 0 if hexagon is None else 1


def _construction(args, n: int, sieve: FactorSieve) -> list[int]:
    c = args.construction
    if c == "base":
        return base_construction(n, sieve)
    if c == "greedy":
        return greedy_3sidon(n, sieve)
    if c == "exact":
        r = exact_max_3sidon(n, args.budget, sieve)
        return r.best_set
    raise UsageError(f"unknown construction {c!r}")


def cmd_ledger(args, out) -> int:
    if args.file:
        A = read_set_file(args.file)
        n = args.n or (max(A) if A else 0)
    else:
        n = args.n
        if not n:
            raise UsageError("--n is required with --construction")
        A = None
    sieve = _sieve(args, n)
    if A is None:
        A = _construction(args, n, sieve)
    g = build_graph(A, n, sieve)
    led = partition_edges(g, n, sieve, _constants(args))
    bad = hard_cap_violations(led)
    if args.format == "csv":
        out.write(led.to_csv())
    else:
        report = {"command": "ledger", **led.as_dict(), "hard_cap_violations": bad,
                  "formulas": {"cap": "see parts[].formula", "total": "|E(G)|"}}
        _emit(report, args.format, out)
    return 0 if not bad else 1


def cmd_census(args, out) -> int:
    x = args.x
    if x is None:
        raise UsageError("--x is required")
    if args.i is not None:
        irange = [args.i]
    else:
        lo, _, hi = args.i_range.partition(":")
        irange = list(range(int(lo), int(hi) + 1))
    sieve = _sieve(args, x)
    consts = _constants(args)
    rows = _map(_census_job, [(x, i, consts) for i in irange], args.workers, sieve.limit, sieve)
    if args.format == "csv":
        out.write(_csv(CensusRow.FIELDS, [[getattr(r, f) for f in CensusRow.FIELDS] for r in rows]))
    else:
        _emit({"command": "census", "rows": [r.as_dict() for r in rows],
               "formulas": {"N_exact": "#{m<=x: Omega(m)<=i}", "M_exact": "#{m<=x: Omega(m)>=i}",
                            "bound_value": "C_delta*x/ln(x)*lnln(x)^(i-1)/(i-1)!",
                            "remark_exponent": "alpha-alpha*ln(alpha), alpha=(i-1)/lnln(x)"}},
              args.format, out)
    return 0


def cmd_search(args, out) -> int:
    n = args.n
    if not n or n < 1:
        raise UsageError("--n must be a positive integer")
    sieve = _sieve(args, n)
    if args.greedy:
        best = greedy_3sidon(n, sieve)
        report = {"command": "search", "mode": "greedy", "n": n, "size": len(best), "best_set": best}
    elif args.square_free:
        report = {"command": "search", "mode": "exact",
                  **exact_max_square_product_free(n, args.budget, sieve).as_dict()}
    else:
        report = {"command": "search", "mode": "exact", **exact_max_3sidon(n, args.budget, sieve).as_dict()}
    report["formulas"] = {"size": "|best_set|"}
    _emit(report, args.format, out)
    return 0


def cmd_extremal(args, out) -> int:
    rows = []
    if args.u is not None or args.v is not None:
        u, v = args.u, args.v
        if u is None or v is None:
            raise UsageError("--u and --v go together")
        r = brute_force_ex_c6_bipartite(u, v)
        gy = bound_gyori(max(u, v), min(u, v))
        report = {
            "command": "extremal", "kind": "bipartite", "u": u, "v": v,
            "ex": r.max_edges, "witness": [list(e) for e in r.witness],
            "witness_c6_free": is_c6_free(r.witness),
            "gyori": gy, "below_gyori": r.max_edges < gy,
            "furedi_unbalanced": bound_furedi_unbalanced(u, v),
            "formulas": {"ex": "ex(u,v,C6) by exhaustive search", "gyori": "2u+v^2/2 (v<=u)",
                         "furedi_unbalanced": "2^(1/3)(uv)^(2/3)+16(u+v)"},
        }
        _emit(report, args.format, out)
        return 0 if report["below_gyori"] and report["witness_c6_free"] else 1
    n = args.n
    if n is None:
        raise UsageError("give --n or --u/--v")
    for m in range(1, n + 1):
        r = brute_force_ex_c6(m)
        strong, weak = bound_furedi_balanced(m)
        rows.append({"n": m, "ex": r.max_edges, "furedi_strong": strong, "furedi_weak": weak,
                     "witness_c6_free": is_c6_free(r.witness)})
    if args.format == "csv":
        out.write(_csv(["n", "ex", "furedi_strong", "furedi_weak", "witness_c6_free"],
                       [list(r.values()) for r in rows]))
    else:
        _emit({"command": "extremal", "kind": "general", "rows": rows,
               "formulas": {"ex": "ex(n,C6) by exhaustive search", "furedi_strong": "0.6272 n^(4/3)",
                            "furedi_weak": "n^(4/3)"}}, args.format, out)
    return 0 if all(r["witness_c6_free"] for r in rows) else 1


def cmd_bounds(args, out) -> int:
    ns = [int(t) for t in args.ns.split(",")] if args.ns else []
    if args.n_range:
        lo, hi, step = (int(t) for t in (args.n_range.split(":") + ["1"])[:3])
        ns += list(range(lo, hi + 1, step))
    if not ns:
        raise UsageError("give --ns or --n-range")
    sieve = _sieve(args, max(ns))
    reps = [g3_bound_report(n, sieve) for n in ns]
    cols = ["n", "pi_n", "pi_half", "main_term", "exponent", "main_error", "proof_error",
            "lower_error", "upper_main", "gk1_cap"]
    if args.format == "csv":
        out.write(_csv(cols, [[r[c] for c in cols] for r in reps]))
    else:
        _emit({"command": "bounds", "rows": [{c: r[c] for c in cols} for r in reps],
               "error_exponent_note": "o(1)", "formulas": reps[0]["formulas"]}, args.format, out)
    return 0


COMMANDS = {
    "decompose": cmd_decompose, "verify": cmd_verify, "encode": cmd_encode,
    "ledger": cmd_ledger, "census": cmd_census, "search": cmd_search,
    "extremal": cmd_extremal, "bounds": cmd_bounds,
}


def build_parser(config: dict[str, str] | None = None) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value defaults file")
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--sieve-limit", type=int, default=None)
    common.add_argument("--budget", type=int, default=10_000_000)
    for name, default in asdict(BoundConstants()).items():
        common.add_argument(f"--{name.replace('_', '-')}", dest=name, type=float, default=default)

    p = argparse.ArgumentParser(prog="multsidon", description=__doc__.strip().splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("decompose", parents=[common], help="split every m <= n and check totality")
    s.add_argument("--n", type=int)
    s.add_argument("--rule", choices=["lemma", "minv"], default="lemma")
    s.add_argument("--emit", action="store_true", help="CSV of every split instead of a summary")

    s = sub.add_parser("verify", parents=[common], help="k-Sidon and square-product checks on a set")
    s.add_argument("file", nargs="?")
    s.add_argument("--k", type=int, default=3)
    s.add_argument("--n", type=int)
    s.add_argument("--random", type=int, help="sample SIZE elements of 1..n instead of reading a file")

    s = sub.add_parser("encode", parents=[common], help="set -> graph export and hexagon search")
    s.add_argument("file", nargs="?")
    s.add_argument("--n", type=int)
    s.add_argument("--random", type=int)

    s = sub.add_parser("ledger", parents=[common], help="edge partition with caps")
    s.add_argument("file", nargs="?")
    s.add_argument("--n", type=int)
    s.add_argument("--construction", choices=["base", "greedy", "exact"], default="base")

    s = sub.add_parser("census", parents=[common], help="Omega census rows")
    s.add_argument("--x", type=int)
    s.add_argument("--i", type=int)
    s.add_argument("--i-range", default="0:14")

    s = sub.add_parser("search", parents=[common], help="exact or greedy extremal 3-Sidon sets")
    s.add_argument("--n", type=int)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--greedy", action="store_true")
    mode.add_argument("--square-free", action="store_true",
                      help="exact search for square-product-free sets instead")

    s = sub.add_parser("extremal", parents=[common], help="brute-force ex(n,C6) and bound tables")
    s.add_argument("--n", type=int)
    s.add_argument("--u", type=int)
    s.add_argument("--v", type=int)

    s = sub.add_parser("bounds", parents=[common], help="G_3(n) bound report table")
    s.add_argument("--ns", help="comma-separated n values")
    s.add_argument("--n-range", help="lo:hi[:step]")

    if config:
        for sp in sub.choices.values():
            known = {a.dest for a in sp._actions}
            sp.set_defaults(**{k: v for k, v in config.items() if k in known})
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        pre = argparse.ArgumentParser(add_help=False)
        pre.add_argument("--config")
        known, _ = pre.parse_known_args(argv)
        config = read_config(known.config) if known.config else None
        args = build_parser(config).parse_args(argv)
        if args.workers < 1 or args.budget < 1:
            raise UsageError("--workers and --budget must be positive")
        return COMMANDS[args.command](args, out)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    except (UsageError, InvalidArgument, OutOfRange, BudgetExceeded, OSError, ValueError) as e:
        print(f"multsidon: error: {e}", file=sys.stderr)
        return 2


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()

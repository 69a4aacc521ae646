"""``domlab`` command line.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 capacity exceeded or time limit reached.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from ._ntheory import first_primes
from .bounds import best_bounds
from .certificates import Certificate, certificate_from_dict, certificate_to_dict, dump_certificate
from .classify import check_reduction_hypotheses, classify_gamma
from .constructions import (
    LiftRecipe,
    diagonal_tplus1,
    lift_total_dominating,
    mekis_triple,
    prefix_total_dominating,
    tplus2_construction,
)
from .errors import (
    CapacityError,
    CertificateRejected,
    DomlabError,
    InvalidArgumentError,
    InvalidInstanceError,
    NotApplicableError,
    SchemaError,
    SolverTimeout,
)
from .exact import brute_force_value, check_certificate, gamma_exact, gamma_t_exact
from .jacobsthal import H_bounded, dominated_pair_search, g_of, h_of
from .products import ProductGraph, SquarefreeModulus

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3
CACHE_ENV = "DOMLAB_CACHE"
DEFAULT_CACHE = "domlab-cache.jsonl"
SCHEMA_PATH = Path(__file__).with_name("schema.json")


class UsageError(DomlabError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage already; route it through our error type
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"expected a comma separated list of integers, got {text!r}") from None


def _dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


# -- cache -------------------------------------------------------------------


@dataclass
class RunRecord:
    command: str
    descriptor: str
    payload: dict
    wall_time: float
    nodes: int
    version: str

    def to_json(self) -> str:
        return _dumps(
            {
                "command": self.command,
                "descriptor": self.descriptor,
                "payload": self.payload,
                "wall_time": round(self.wall_time, 6),
                "nodes": self.nodes,
                "version": self.version,
            }
        )


def cache_path() -> Path:
    return Path(os.environ.get(CACHE_ENV, DEFAULT_CACHE))


def cache_lookup(command: str, descriptor: str):
    path = cache_path()
    if not path.exists():
        return None
    hit = None
    with path.open(encoding="utf-8") as fh:
        for line in fh:
            try:
                rec = json.loads(line)
            except json.JSONDecodeError:
                continue  # a torn line from an interrupted run
            if (rec.get("command"), rec.get("descriptor"), rec.get("version")) == (command, descriptor, __version__):
                hit = rec["payload"]
    return hit


def cache_store(record: RunRecord) -> None:
    with cache_path().open("a", encoding="utf-8") as fh:
        fh.write(record.to_json() + "\n")


def _cached(args, command: str, descriptor: str, compute):
    """Run ``compute() -> (payload, nodes, exit_code)`` through the cache when enabled."""
    if getattr(args, "cache", False):
        payload = cache_lookup(command, descriptor)
        if payload is not None:
            return payload, EXIT_OK
    t0 = time.monotonic()
    payload, nodes, code = compute()
    if getattr(args, "cache", False) and code == EXIT_OK:
        cache_store(RunRecord(command, descriptor, payload, time.monotonic() - t0, nodes, __version__))
    return payload, code


# -- output --------------------------------------------------------------------


def _flatten(row: dict, prefix: str = "") -> dict:
    out = {}
    for key, value in row.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            out.update(_flatten(value, name + "."))
        elif isinstance(value, list):
            out[name] = json.dumps(value, separators=(",", ":"))
        else:
            out[name] = value
    return out


def _csv(rows) -> str:
    rows = [_flatten(r) for r in rows]
    fields = []
    for r in rows:
        fields += [k for k in r if k not in fields]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _emit(args, payload: dict, text: str, rows=None) -> None:
    fmt = getattr(args, "format", "text")
    if fmt == "json":
        print(_dumps(payload))
    elif fmt == "csv":
        print(_csv(rows if rows is not None else [payload]))
    else:
        print(text)


def _sizes(args) -> ProductGraph:
    if args.sizes is None:
        raise UsageError("--sizes is required")
    return ProductGraph(tuple(_int_list(args.sizes)))


# -- commands ------------------------------------------------------------------


def cmd_gamma(args) -> int:
    G = _sizes(args)
    kind = "total_dominating" if args.total else "dominating"
    method = "brute-force" if args.oracle else "branch-and-bound"
    descriptor = f"sizes={','.join(map(str, G.sizes))};kind={kind};method={method}"

    def compute():
        if args.oracle:
            value = brute_force_value(G, "total" if args.total else "dominating")
            payload = {
                "command": "gamma",
                "instance": {"sizes": list(G.sizes)},
                "kind": kind,
                "method": method,
                "status": "exact",
                "value": value,
                "lower": value,
                "upper": value,
                "lower_source": "enumeration",
                "nodes": 0,
            }
            return payload, 0, EXIT_OK
        solve = gamma_t_exact if args.total else gamma_exact
        try:
            res = solve(G, time_limit=args.time_limit, threads=args.threads)
        except SolverTimeout as exc:
            payload = {
                "command": "gamma",
                "instance": {"sizes": list(G.sizes)},
                "kind": kind,
                "method": method,
                "status": "interval",
                "value": None,
                "lower": exc.lower,
                "upper": exc.upper,
                "lower_source": "search",
                "nodes": exc.nodes_explored,
            }
            if exc.witness is not None:
                payload["certificate"] = certificate_to_dict(exc.witness)
            return payload, exc.nodes_explored, EXIT_CAPACITY
        payload = {
            "command": "gamma",
            "instance": {"sizes": list(G.sizes)},
            "kind": kind,
            "method": method,
            "status": "exact",
            "value": res.value,
            "lower": res.value,
            "upper": res.value,
            "lower_source": res.lower_source,
            "nodes": res.nodes_explored,
            "certificate": certificate_to_dict(res.witness),
        }
        return payload, res.nodes_explored, EXIT_OK

    payload, code = _cached(args, "gamma", descriptor, compute)
    symbol = "gamma_t" if args.total else "gamma"
    if payload["status"] == "exact":
        text = f"{symbol}({G}) = {payload['value']}  [{method}, lower bound from {payload['lower_source']}]"
    else:
        text = f"{symbol}({G}) in [{payload['lower']}, {payload['upper']}]  (time limit reached)"
    if args.output and "certificate" in payload:
        Path(args.output).write_text(json.dumps(payload["certificate"], indent=2) + "\n", encoding="utf-8")
        text += f"\ncertificate written to {args.output}"
    _emit(args, payload, text)
    return code


def cmd_classify(args) -> int:
    G = _sizes(args)
    verdict = classify_gamma(G)
    red = check_reduction_hypotheses(G)
    payload = {
        "command": "classify",
        "instance": {"sizes": list(G.sizes)},
        "classification": verdict.as_row(),
        "reduction": {"applicable": red.applicable, "branch": red.branch, "note": red.note},
    }
    word = {"exact": "Exact", "at_least": "AtLeast", "small_t": "Exact", "reduced_k2": "ReducedK2"}[verdict.verdict]
    text = f"{G}: {word} {verdict.value}  rule: {verdict.matched_rule}"
    if verdict.verdict == "reduced_k2":
        exactness = "exact" if verdict.value_is_exact else "lower bound"
        text += f"\n  = {verdict.multiplier} * gamma({verdict.inner}); inner {verdict.inner_class.verdict} ({exactness})"
    if red.applicable:
        text += f"\n  branch: {red.branch} ({red.note})"
    _emit(args, payload, text, [{"sizes": list(G.sizes), **verdict.as_row()}])
    return EXIT_OK


def cmd_bounds(args) -> int:
    G = _sizes(args)
    if args.k is not None and not 1 <= args.k <= G.t:
        raise InvalidArgumentError(f"k must lie in 1..{G.t}, got {args.k}")
    b = best_bounds(G, args.k)
    rows = [r.as_row() for r in b.reports]
    payload = {
        "command": "bounds",
        "instance": {"sizes": list(G.sizes)},
        "k": args.k,
        "lower": b.lower,
        "upper": b.upper,
        "lower_source": b.lower_source,
        "reports": rows,
    }
    lines = [f"{G}: {b.lower} <= gamma <= {b.upper}  (lower from {b.lower_source})"]
    for r in rows:
        value = "n/a" if r["value"] is None else r["value"]
        tag = "certified" if r["certified"] else "not certified"
        lines.append(f"  {r['name']:<14} {r['kind']:<5} {str(value):>8}  {tag}; {r['hypothesis_note']}")
    _emit(args, payload, "\n".join(lines), rows)
    return EXIT_OK


def _pool(args) -> tuple:
    if args.pool:
        return tuple(_int_list(args.pool))
    return tuple(first_primes(args.pool_first))


def cmd_jacobsthal(args) -> int:
    warning = None
    if args.mode == "g":
        if args.primes is None:
            raise UsageError("g needs --primes")
        res = g_of(SquarefreeModulus(tuple(_int_list(args.primes))))
        label = f"g({res.modulus.n})"
    elif args.mode == "h":
        if args.n is None:
            raise UsageError("h needs --n")
        res = h_of(args.n)
        label = f"h({args.n})"
    else:
        if args.n is None:
            raise UsageError("H needs --n")
        pool = _pool(args)
        best = H_bounded(args.n, pool)
        res = g_of(best.argmax)
        label = f"H({args.n}) over the pool"
        warning = (
            f"pool-bounded: only moduli built from {list(pool)} were tried; "
            "the true H may be larger"
        )
    payload = {"command": "jacobsthal", "mode": args.mode, "result": res.as_row()}
    if warning:
        payload["warning"] = warning
        payload["pool"] = list(_pool(args))
    w = res.witness
    text = f"{label} = {res.g_value}  witness: start {w.start}, length {w.length}"
    if args.mode == "H":
        text += f"  (attained at primes {list(res.modulus.primes)})"
    if warning:
        text += f"\nwarning: {warning}"
        if args.format != "text":
            print(f"warning: {warning}", file=sys.stderr)
    _emit(args, payload, text, [res.as_row()])
    return EXIT_OK


def cmd_construct(args) -> int:
    gap = None
    if args.kind == "prefix":
        if args.primes is None:
            raise UsageError("prefix needs --primes")
        cert = prefix_total_dominating(SquarefreeModulus(tuple(_int_list(args.primes))))
    elif args.kind == "mekis3":
        G = _sizes(args)
        cert = Certificate("dominating", G, mekis_triple(G), claimed_value=4)
    elif args.kind == "diagonal":
        cert = diagonal_tplus1(_sizes(args))
    elif args.kind == "tplus2":
        cert = tplus2_construction(_sizes(args))
    else:
        if args.s is None or args.r is None:
            raise UsageError("lift needs --s and --r")
        recipe = LiftRecipe(SquarefreeModulus(tuple(_int_list(args.s))), args.k, tuple(_int_list(args.r)))
        gap = lift_total_dominating(recipe)
        cert = gap.total_dominating
    report = check_certificate(cert)
    payload = {
        "command": "construct",
        "kind": args.kind,
        "verified": report.ok,
        "certificate": certificate_to_dict(cert),
    }
    lines = [f"{args.kind}: {cert.kind.replace('_', ' ')} set of size {cert.size}, verified {report.ok}"]
    if gap is not None:
        run = gap.run_witness
        run_ok = check_certificate(run.as_certificate()).ok
        payload["gap_certification"] = gap.as_row()
        lines.append(
            f"n = {gap.modulus.n}; run {run.start}..{run.start + run.length - 1} (length {run.length}) "
            f"verified {run_ok}; certified gap {gap.certified_gap}"
        )
        report_ok = report.ok and run_ok
    else:
        report_ok = report.ok
    if args.output:
        dump_certificate(cert, args.output)
        lines.append(f"certificate written to {args.output}")
        if gap is not None:
            run_path = Path(args.output).with_suffix(".run.json")
            dump_certificate(gap.run_witness.as_certificate(), run_path)
            lines.append(f"run witness written to {run_path}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if report_ok else EXIT_VERIFY


def cmd_verify(args) -> int:
    try:
        text = Path(args.path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.path} is not JSON: {exc}") from None
    try:
        cert = certificate_from_dict(data)
        report = check_certificate(cert)
        ok, reason, bad = report.ok, report.reason, report.counterexample
    except SchemaError as exc:
        ok, reason, bad = False, f"malformed certificate: {exc}", None
    payload = {"command": "verify", "path": str(args.path), "ok": ok, "reason": reason}
    if bad is not None:
        payload["counterexample"] = list(bad) if isinstance(bad, tuple) else str(bad)
    _emit(args, payload, f"{'PASS' if ok else 'FAIL'}: {reason}")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_repro(args) -> int:
    from . import repro

    only = _int_list(args.only) if args.only else None

    def progress(res):
        print(f"[{res.number}] {'pass' if res.passed else 'FAIL'} ({res.elapsed:.1f}s)", file=sys.stderr)

    results = repro.run_all(only, progress=progress)
    rows = [r.as_row() for r in results]
    payload = {"command": "repro", "rows": rows}
    _emit(args, payload, repro.markdown_table(results), rows)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def cmd_conjecture(args) -> int:
    pool = _pool(args)
    best = dominated_pair_search(args.n, pool)
    payload = {
        "command": "conjecture-search",
        "count": args.n,
        "pool": list(pool),
        "gap": best.gap,
        "q": list(best.q),
        "r": list(best.r),
        "g_q": best.g_q,
        "g_r": best.g_r,
        "warning": "exploratory: restricted to the pool, no claim beyond it",
    }
    text = (
        f"largest g(r) - g(q) with q_i <= r_i over {args.n}-subsets of {list(pool)}: {best.gap}\n"
        f"  q = {list(best.q)} (g = {best.g_q}), r = {list(best.r)} (g = {best.g_r})\n"
        "  exploratory only"
    )
    _emit(args, payload, text)
    return EXIT_OK


# -- wiring --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="domlab", description="Domination numbers of products of complete graphs.")
    p.add_argument("--version", action="version", version=f"domlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, sizes=True):
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
        if sizes:
            sp.add_argument("--sizes", help="comma separated factor sizes, e.g. 3,3,3")

    sp = sub.add_parser("gamma", help="exact (total) domination number")
    common(sp)
    sp.add_argument("--total", action="store_true", help="total domination number instead")
    sp.add_argument("--oracle", action="store_true", help="brute-force enumeration (<= 64 vertices)")
    sp.add_argument("--time-limit", type=float, default=None, metavar="SECONDS")
    sp.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    sp.add_argument("-o", "--output", help="write the witness certificate here")
    sp.add_argument("--cache", action="store_true", help=f"use the JSONL cache (${CACHE_ENV})")
    sp.set_defaults(func=cmd_gamma)

    sp = sub.add_parser("classify", help="t+1 / t+2 / >= t+3 verdict")
    common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("bounds", help="all bounds and the best certified interval")
    common(sp)
    sp.add_argument("--k", type=int, default=None, help="parameter of the asymptotic lower bound")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("jacobsthal", help="Jacobsthal function g, h, pool-bounded H")
    sp.add_argument("mode", choices=("g", "h", "H"))
    common(sp, sizes=False)
    sp.add_argument("--primes")
    sp.add_argument("--n", type=int)
    sp.add_argument("--pool", help="explicit prime pool for H")
    sp.add_argument("--pool-first", type=int, default=10, help="pool = first N primes (default 10)")
    sp.set_defaults(func=cmd_jacobsthal)

    sp = sub.add_parser("construct", help="build and verify an explicit certificate")
    sp.add_argument("kind", choices=("prefix", "mekis3", "diagonal", "tplus2", "lift"))
    common(sp)
    sp.add_argument("--primes", help="modulus primes for prefix")
    sp.add_argument("--s", help="primes of the base modulus for lift")
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--r", help="large primes for lift")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="re-check a certificate file")
    sp.add_argument("path")
    common(sp, sizes=False)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("repro", help="run the reproduction suite, print a markdown table")
    common(sp, sizes=False)
    sp.add_argument("--only", help="comma separated criterion numbers")
    sp.set_defaults(func=cmd_repro)

    sp = sub.add_parser("conjecture-search", help="exploratory search for dominated prime tuples")
    common(sp, sizes=False)
    sp.add_argument("--n", type=int, required=True, help="number of primes per tuple")
    sp.add_argument("--pool")
    sp.add_argument("--pool-first", type=int, default=10)
    sp.set_defaults(func=cmd_conjecture)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (UsageError, InvalidInstanceError, InvalidArgumentError, NotApplicableError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CapacityError, SolverTimeout) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except CertificateRejected as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())

"""Reproduction suite: one function per checkable claim.

Each ``criterion_*`` function returns a :class:`CriterionResult`; ``run_all``
runs them in order and feeds the instances solved by 1-3 into the bound
sandwich check. The CLI ``repro`` command renders the results as a
markdown table, and the acceptance tests assert on the same objects.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from math import gcd, prod

from ._ntheory import factorize, first_primes
from .bounds import all_reports
from .certificates import Certificate
from .classify import classify_gamma, k2_reduce
from .constructions import (
    LiftRecipe,
    certify_mj_membership,
    diagonal_tplus1,
    lift_total_dominating,
    mekis_triple,
    tplus2_construction,
)
from .errors import CertificateRejected
from .exact import brute_force_value, find_set, gamma_exact, gamma_t_exact, is_dominating, undominated_residue
from .jacobsthal import REFERENCE_VALUES, GapWitness, H_bounded, g_by_windows, g_of, h_of
from .products import ProductGraph, SquarefreeModulus


@dataclass
class CriterionResult:
    number: int
    claim: str
    passed: bool
    detail: str
    elapsed: float = 0.0
    solved: list = field(default_factory=list, repr=False)
    oracle: dict = field(default_factory=dict, repr=False)

    def as_row(self) -> dict:
        return {
            "criterion": self.number,
            "claim": self.claim,
            "status": "pass" if self.passed else "fail",
            "detail": self.detail,
        }


def small_instances(max_vertices: int = 60, lo: int = 2, hi: int = 6) -> list[tuple]:
    """Every multiset of factor sizes in ``[lo, hi]`` with at most ``max_vertices`` vertices."""
    out = []

    def walk(cur, start):
        if cur:
            out.append(tuple(cur))
        for n in range(start, hi + 1):
            if prod(cur) * n <= max_vertices:
                walk(cur + [n], n)

    walk([], lo)
    return out


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.monotonic()
        res = fn(*args, **kwargs)
        res.elapsed = time.monotonic() - t0
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_timed
def criterion_1() -> CriterionResult:
    """Solver against exhaustive enumeration on every instance with <= 60 vertices."""
    bad, solved, oracle = [], [], {}
    instances = small_instances()
    for sizes in instances:
        G = ProductGraph(sizes)
        g = gamma_exact(G, seed_bounds=False).value
        gt = gamma_t_exact(G, seed_bounds=False).value
        bg = brute_force_value(G, "dominating")
        bgt = brute_force_value(G, "total")
        solved.append((G, g))
        oracle[sizes] = bg
        if (g, gt) != (bg, bgt):
            bad.append(f"{list(sizes)}: solver ({g}, {gt}) vs oracle ({bg}, {bgt})")
    detail = f"{len(instances)} instances, gamma and gamma_t" if not bad else "; ".join(bad)
    return CriterionResult(1, "branch-and-bound equals brute force (<= 60 vertices)", not bad, detail, solved=solved, oracle=oracle)


@_timed
def criterion_2() -> CriterionResult:
    """Two factors up to 12 and three factors up to 500 vertices, searched without bound seeding."""
    bad, solved = [], []
    for a in range(2, 13):
        for b in range(a, 13):
            G = ProductGraph((a, b))
            g = gamma_exact(G, seed_bounds=False).value
            solved.append((G, g))
            if g != (2 if a == 2 else 3):
                bad.append(f"{[a, b]} -> {g}")
    three = 0
    for a in range(2, 9):
        for b in range(a, 251):
            for c in range(b, 251):
                if a * b * c > 500:
                    break
                G = ProductGraph((a, b, c))
                g = gamma_exact(G, seed_bounds=False).value
                solved.append((G, g))
                three += 1
                if g != 4:
                    bad.append(f"{[a, b, c]} -> {g}")
    detail = f"66 two-factor and {three} three-factor instances" if not bad else "; ".join(bad)
    return CriterionResult(2, "small-t values 2/3 (t=2) and 4 (t=3)", not bad, detail, solved=solved)


SPOT_SUITE = [
    ((5, 5, 5, 5), 5),
    ((4, 4, 4, 6), 6),
    ((4, 6, 6, 6), 6),
    ((3, 6, 6, 6), 6),
    ((4, 4, 4, 5), None),
    ((3, 5, 6, 6), None),
]


@_timed
def criterion_3() -> CriterionResult:
    """t = 4 spot checks; ``None`` means no dominating set of size <= 6 exists."""
    bad, solved, parts = [], [], []
    for sizes, expected in SPOT_SUITE:
        G = ProductGraph(sizes)
        verdict = classify_gamma(G)
        if expected is None:
            found, nodes = find_set(G, 6)
            ok = found is None and verdict.verdict == "at_least" and verdict.value == 7
            parts.append(f"{list(sizes)} refuted <= 6 ({nodes} nodes)")
        else:
            res = gamma_exact(G, seed_bounds=False)
            solved.append((G, res.value))
            ok = res.value == expected and verdict.verdict == "exact" and verdict.value == expected
            parts.append(f"{list(sizes)} = {res.value}")
        if not ok:
            bad.append(f"{list(sizes)}: classify {verdict.verdict} {verdict.value}")
    detail = "; ".join(bad or parts)
    return CriterionResult(3, "t=4 solver confirms classify_gamma", not bad, detail, solved=solved)


@_timed
def criterion_4() -> CriterionResult:
    bad, count = [], 0
    for t in range(4, 9):
        sizes = (t, t, t) + (t + 2,) * (t - 3)
        cert = tplus2_construction(sizes)
        count += 1
        if not is_dominating(cert.instance, cert.vertices) or cert.size != t + 2:
            bad.append(f"tplus2 {list(sizes)}")
    for t in range(2, 7):
        cert = diagonal_tplus1((t + 1,) * t)
        count += 1
        if not is_dominating(cert.instance, cert.vertices) or cert.size != t + 1:
            bad.append(f"diagonal t={t}")
    for sizes in small_instances(10**9, 2, 6):
        if len(sizes) == 3:
            count += 1
            if not is_dominating(ProductGraph(sizes), mekis_triple()):
                bad.append(f"triple {list(sizes)}")
    detail = f"{count} constructions verified" if not bad else "; ".join(bad)
    return CriterionResult(4, "explicit constructions dominate", not bad, detail)


@_timed
def criterion_5(oracle: dict | None = None) -> CriterionResult:
    """``multiplier * gamma(inner) = gamma(G)``; gamma(G) comes from the brute-force oracle."""
    bad, count = [], 0
    for sizes in small_instances():
        if 2 not in sizes or all(n == 2 for n in sizes):
            continue
        G = ProductGraph(sizes)
        mult, inner = k2_reduce(G)
        whole = oracle[sizes] if oracle and sizes in oracle else brute_force_value(G, "dominating")
        part = gamma_exact(inner, seed_bounds=False).value
        count += 1
        if mult * part != whole:
            bad.append(f"{list(sizes)}: {mult} * {part} != {whole}")
    detail = f"{count} instances" if not bad else "; ".join(bad)
    return CriterionResult(5, "K_2 reduction multiplier", not bad, detail)


def _random_pair(rng: random.Random):
    bigger = rng.choice(small_instances(60, 2, 60))
    smaller = tuple(rng.randint(2, m) for m in bigger)
    return smaller, bigger


@_timed
def criterion_6(pairs: int = 200, seed: int = 20190101) -> CriterionResult:
    rng = random.Random(seed)
    bad = []
    for _ in range(pairs):
        small, big = _random_pair(rng)
        a = gamma_t_exact(small).value
        b = gamma_t_exact(big).value
        if a < b:
            bad.append(f"{list(small)} -> {a} < {list(big)} -> {b}")
    detail = f"{pairs} pairs, seed {seed}" if not bad else "; ".join(bad[:5])
    return CriterionResult(6, "gamma_t antitone in factor sizes", not bad, detail)


@_timed
def criterion_7(h_count: int = 8, prefix_limit: int = 10**5) -> CriterionResult:
    bad = []
    values = []
    for c in range(1, h_count + 1):
        res = h_of(c)
        values.append(res.g_value)
        if res.g_value != g_by_windows(res.modulus.n):
            bad.append(f"h({c})")
    checked = 0
    for n in range(2, prefix_limit + 1):
        fac = factorize(n)
        if any(e > 1 for e in fac.values()):
            continue
        m = SquarefreeModulus(tuple(fac))
        g = g_of(m).g_value
        checked += 1
        if undominated_residue(m, range(g), total=True) is not None:
            bad.append(f"prefix n={n}")
    detail = f"h(1..{h_count}) = {values}; {checked} prefix sets" if not bad else "; ".join(bad)
    return CriterionResult(7, "sieve equals window scan; prefix sets total dominate", not bad, detail)


@_timed
def criterion_8() -> CriterionResult:
    pool = first_primes(10)
    bad, parts = [], []
    for c in (1, 2, 3):
        H = H_bounded(c, pool).value
        h = h_of(c).g_value
        parts.append(f"H({c}) = h({c}) = {h}" if H == h else f"H({c}) = {H} != h({c}) = {h}")
        if H != h:
            bad.append(parts[-1])
    return CriterionResult(8, "pool-bounded H equals h for n <= 3", not bad, "; ".join(parts))


LIFT_RECIPE = ((2, 3), 1, (11, 13))


def lift_example():
    s, k, r = LIFT_RECIPE
    return lift_total_dominating(LiftRecipe(SquarefreeModulus(s), k, r))


@_timed
def criterion_9() -> CriterionResult:
    gc = lift_example()
    n = gc.modulus.n
    D = gc.total_dominating
    w = gc.run_witness
    g = g_of(gc.modulus).g_value
    ok = (
        n == 858
        and D.size == 10
        and w.length == 9
        and gc.verified
        and gc.certified_gap >= 0
        and undominated_residue(gc.modulus, D.vertices, total=True) is None
        and all(gcd(x, n) > 1 for x in range(w.start, w.start + w.length))
        and g >= w.length + 1
        and D.size <= g
    )
    detail = f"n = {n}, |D| = {D.size}, run {w.start}..{w.start + w.length - 1}, g(858) = {g}, gap {gc.certified_gap}"
    return CriterionResult(9, "lift certifies 858 with gap >= 0", ok, detail)


def _oracle_total(n: int, D) -> bool:
    return all(any(gcd(x - d, n) == 1 for d in D) for x in range(n))


def _oracle_run(n: int, start: int, length: int) -> bool:
    return length >= 0 and all(gcd(x, n) > 1 for x in range(start, start + length))


def mutate(gc, rng: random.Random):
    """A random corruption of a gap certification: (residues, run start, run length, claimed)."""
    n = gc.modulus.n
    D = list(gc.total_dominating.vertices)
    start, length = gc.run_witness.start, gc.run_witness.length
    claimed = len(D)
    op = rng.choice(["drop", "swap", "shift", "extend", "claim", "shrink"])
    if op == "drop":
        D.pop(rng.randrange(len(D)))
        claimed = len(D)
    elif op == "swap":
        D[rng.randrange(len(D))] = rng.randrange(n)
        claimed = len(set(D))
    elif op == "shift":
        start += rng.choice([-1, 1]) * rng.randint(1, 5)
    elif op == "extend":
        length += rng.randint(1, 3)
    elif op == "claim":
        claimed += rng.choice([-1, 1])
    else:
        D = D[: rng.randint(1, len(D) - 1)]
        claimed = len(D)
    return op, D, start, length, claimed


@_timed
def criterion_10(mutations: int = 50, seed: int = 7) -> CriterionResult:
    """Published constants stay out of reach; tampered certifications must be rejected."""
    gc = lift_example()
    m, n = gc.modulus, gc.modulus.n
    rng = random.Random(seed)
    invalid = rejected = 0
    leaks = []
    for _ in range(mutations):
        op, D, start, length, claimed = mutate(gc, rng)
        valid = (
            _oracle_total(n, D)
            and _oracle_run(n, start, length)
            and claimed == len(set(D))
            and length + 1 >= len(set(D))
        )
        try:
            cert = Certificate("total_dominating", m, tuple(D), claimed_value=claimed)
            certify_mj_membership(m, cert, GapWitness(m, start, length))
            accepted = True
        except CertificateRejected:
            accepted = False
        if not valid:
            invalid += 1
            rejected += not accepted
            if accepted:
                leaks.append(op)
    refs = ", ".join(f"{k}({c}) = {v}" for k, vals in REFERENCE_VALUES.items() for c, v in vals.items())
    detail = (
        f"not reproduced: {refs}; {rejected}/{invalid} invalidating mutations rejected"
        + (f" (accepted: {leaks})" if leaks else "")
    )
    return CriterionResult(10, "tampered certifications rejected", not leaks and invalid > 0, detail)


@_timed
def criterion_11(solved) -> CriterionResult:
    bad = []
    for G, g in solved:
        for r in all_reports(G):
            if not (r.applicable and r.certified):
                continue
            if (r.kind == "lower" and r.value > g) or (r.kind == "upper" and r.value < g):
                bad.append(f"{list(G.sizes)}: {r.name} {r.kind} {r.value} vs {g}")
    detail = f"{len(solved)} solved instances" if not bad else "; ".join(bad[:5])
    return CriterionResult(11, "certified bounds sandwich gamma", not bad, detail)


def run_all(only=None, progress=None) -> list[CriterionResult]:
    only = set(only) if only else set(range(1, 12))
    results = []
    solved = []
    oracle = {}
    steps = {
        1: criterion_1,
        2: criterion_2,
        3: criterion_3,
        4: criterion_4,
        5: lambda: criterion_5(oracle),
        6: criterion_6,
        7: criterion_7,
        8: criterion_8,
        9: criterion_9,
        10: criterion_10,
    }
    for num in range(1, 11):
        if num not in only:
            continue
        res = steps[num]()
        if num == 1:
            oracle.update(res.oracle)
        solved.extend(res.solved)
        results.append(res)
        if progress:
            progress(res)
    if 11 in only:
        if not solved:
            # 11 piggybacks on 1-3
            for num in (1, 2, 3):
                solved.extend(steps[num]().solved)
        res = criterion_11(solved)
        results.append(res)
        if progress:
            progress(res)
    return results


def markdown_table(results) -> str:
    lines = ["| # | claim | status | detail | seconds |", "|---|---|---|---|---|"]
    for r in results:
        detail = r.detail.replace("|", "/")
        lines.append(f"| {r.number} | {r.claim} | {'pass' if r.passed else 'FAIL'} | {detail} | {r.elapsed:.1f} |")
    return "\n".join(lines)

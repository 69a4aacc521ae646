"""Verification and exact computation of domination numbers.

Three independent routes are provided:

* structural verifiers (:func:`undominated_vertex`) that decide domination
  in ``prod K_{n_i}`` without listing vertices, so they scale to graphs with
  tens of millions of vertices;
* a bitset branch-and-bound solver (:func:`gamma_exact`,
  :func:`gamma_t_exact`) with orbit pruning under the symmetric groups acting
  on each factor;
* an exhaustive subset enumerator (:func:`brute_force_value`) that knows
  nothing about product structure and serves as the oracle for the solver.
"""

from __future__ import annotations

import itertools
import logging
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb, gcd, prod

import numba
import numpy as np

from .certificates import Certificate, as_tuples
from .errors import CapacityError, InvalidArgumentError, SchemaError, SolverTimeout
from .products import (
    DENSE_VERTEX_CAP,
    ProductGraph,
    SquarefreeModulus,
    dense_structure,
    iter_bits,
    residue_to_vertex,
    vertex_to_residue,
)

log = logging.getLogger(__name__)

# Above this modulus residue sets are checked through the CRT tuple model.
RESIDUE_DIRECT_CAP = 10**7
ORACLE_VERTEX_CAP = 64
ORACLE_BUDGET = 10**11
# below this many vertices a process pool costs more than it saves
PARALLEL_MIN_VERTICES = 1000


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


def _validated(G: ProductGraph, D) -> list:
    seen = []
    for v in D:
        v = G.check_vertex(v)
        if v not in seen:
            seen.append(v)
    return seen


def undominated_vertex(G: ProductGraph, D, total: bool = False):
    """Return a vertex of ``G`` not (totally) dominated by ``D``, or None.

    A vertex ``x`` escapes ``d`` exactly when ``x`` agrees with ``d`` in some
    coordinate (and, for closed domination, ``x != d``). The search picks,
    column by column, either a value used by ``D`` or an unused value and
    tracks which members of ``D`` have been matched so far, so its cost
    depends on ``|D|`` and ``t`` rather than on the number of vertices.
    """
    rows = _validated(G, D)
    k = len(rows)
    full = (1 << k) - 1
    t = G.t
    options = []
    for c, n in enumerate(G.sizes):
        groups: dict[int, int] = {}
        for r, v in enumerate(rows):
            groups[v[c]] = groups.get(v[c], 0) | (1 << r)
        opts = sorted(groups.items())
        if len(groups) < n:
            fresh = next(a for a in range(n) if a not in groups)
            opts.append((fresh, 0))
        options.append(opts)
    widest = [max((m.bit_count() for _, m in opts), default=0) for opts in options]
    reach = [0] * (t + 1)
    for c in range(t - 1, -1, -1):
        reach[c] = reach[c + 1] + widest[c]

    choice = [0] * t
    dead = set()

    def search(c, hit, same):
        if c == t:
            return hit == full and (total or same == 0)
        if (full & ~hit).bit_count() > reach[c]:
            return False
        key = (c, hit, same)
        if key in dead:
            return False
        for value, mask in options[c]:
            choice[c] = value
            if search(c + 1, hit | mask, 0 if total else same & mask):
                return True
        dead.add(key)
        return False

    if search(0, 0, 0 if total else full):
        return tuple(choice)
    return None


def is_dominating(G: ProductGraph, D) -> bool:
    """True iff every vertex lies in ``D`` or has a neighbor in ``D``."""
    return undominated_vertex(G, D, total=False) is None


def is_total_dominating(G: ProductGraph, D) -> bool:
    """True iff every vertex, members of ``D`` included, has a neighbor in ``D``."""
    return undominated_vertex(G, D, total=True) is None


def undominated_dense(G: ProductGraph, D, total: bool = False):
    """Reference check by explicit neighborhood unions (small graphs only)."""
    G.require_dense()
    rows = _validated(G, D)
    N = G.vertex_count
    covered = 0
    for v in rows:
        i = G.index(v)
        nb = 0
        for u in range(N):
            w = G.vertex(u)
            if all(a != b for a, b in zip(v, w)):
                nb |= 1 << u
        covered |= nb if total else nb | (1 << i)
    missing = ((1 << N) - 1) & ~covered
    if missing:
        return G.vertex((missing & -missing).bit_length() - 1)
    return None


def _nonunit_mask(m: SquarefreeModulus) -> np.ndarray:
    n = m.n
    mask = np.zeros(n, dtype=bool)
    for p in m.primes:
        mask[::p] = True
    return mask


def undominated_residue(m: SquarefreeModulus, residues, total: bool = True, direct_cap: int = RESIDUE_DIRECT_CAP):
    """Return a residue of ``X_n`` that ``residues`` fails to (totally) dominate, or None.

    Up to ``direct_cap`` the check is the literal gcd condition evaluated over
    all of ``Z/nZ``; beyond it the set is mapped to coordinate tuples and
    handed to :func:`undominated_vertex`.
    """
    n = m.n
    rs = sorted({int(r) % n for r in residues})
    if n == 1:
        return None if (rs and not total) else 0
    if n <= direct_cap:
        nonunit = _nonunit_mask(m)
        bad = np.ones(n, dtype=bool)
        for d in rs:
            bad &= np.roll(nonunit, d)
        if not total:
            bad[rs] = False
        hits = np.flatnonzero(bad)
        return int(hits[0]) if hits.size else None
    G = ProductGraph(m.primes)
    x = undominated_vertex(G, [residue_to_vertex(m, r) for r in rs], total=total)
    return None if x is None else vertex_to_residue(m, x)


def is_total_dominating_residues(m: SquarefreeModulus, residues) -> bool:
    return undominated_residue(m, residues, total=True) is None


def is_dominating_residues(m: SquarefreeModulus, residues) -> bool:
    return undominated_residue(m, residues, total=False) is None


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    reason: str = ""
    counterexample: object = None


def check_certificate(c: Certificate) -> CheckReport:
    """Verify a certificate and explain the outcome."""
    from .jacobsthal import first_coprime_in_run

    if c.kind == "noncoprime_run":
        start, length = c.run
        bad = first_coprime_in_run(c.instance.n, start, length)
        if bad is not None:
            return CheckReport(False, f"{bad} is coprime to {c.instance.n}", bad)
        if c.claimed_value is not None and c.claimed_value != length:
            return CheckReport(False, f"claimed length {c.claimed_value} != {length}")
        return CheckReport(True, f"run of {length} integers from {start} shares factors with n")
    if c.claimed_value is not None and c.claimed_value != c.size:
        return CheckReport(False, f"claimed_value {c.claimed_value} != |vertices| = {c.size}")
    total = c.kind == "total_dominating"
    if isinstance(c.instance, ProductGraph):
        x = undominated_vertex(c.instance, c.vertices, total=total)
    else:
        x = undominated_residue(c.instance, c.vertices, total=total)
    if x is not None:
        what = "totally dominated" if total else "dominated"
        return CheckReport(False, f"vertex {x} is not {what}", x)
    return CheckReport(True, f"{c.size} vertices form a {c.kind.replace('_', ' ')} set")


def verify_certificate(c: Certificate) -> bool:
    return check_certificate(c).ok


# ---------------------------------------------------------------------------
# Fibers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Fiber:
    """Members of a vertex set whose coordinate ``index`` (1-based) equals ``value``."""

    index: int
    value: int
    members: tuple


def fibers(G: ProductGraph, D, index: int) -> list[Fiber]:
    if not 1 <= index <= G.t:
        raise InvalidArgumentError(f"coordinate index {index} outside 1..{G.t}")
    groups: dict[int, list] = {}
    for v in _validated(G, D):
        groups.setdefault(v[index - 1], []).append(v)
    return [Fiber(index, a, tuple(vs)) for a, vs in sorted(groups.items())]


def fiber_profile(G: ProductGraph, D) -> dict:
    """Largest fiber size and disjoint pairs of size-2 fibers on distinct coordinates."""
    all_fibers = [f for i in range(1, G.t + 1) for f in fibers(G, D, i)]
    pairs = [f for f in all_fibers if len(f.members) == 2]
    disjoint = [
        (a, b)
        for a, b in itertools.combinations(pairs, 2)
        if a.index != b.index and not set(a.members) & set(b.members)
    ]
    return {
        "max_fiber": max((len(f.members) for f in all_fibers), default=0),
        "disjoint_pairs": disjoint,
    }


# ---------------------------------------------------------------------------
# Branch and bound
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SolveResult:
    """Outcome of an exact solve.

    ``lower_source`` records where the matching lower bound came from:
    ``"search"`` when every smaller size was refuted by exhausted search,
    otherwise the name of the theorem bound that was used as the seed.
    """

    value: int
    witness: Certificate
    nodes_explored: int
    proven_optimal: bool
    lower_source: str = "search"
    elapsed: float = field(default=0.0, compare=False)


class _Timeout(Exception):
    pass


class _Search:
    """Decide whether a (total) dominating set of size <= k exists.

    Branching follows the usual exact set cover scheme: pick the undominated
    vertex with the fewest admissible dominators and try each one, excluding
    it from later siblings. Candidates are grouped into orbits of the
    pointwise stabilizer of the current partial set inside
    ``Sym(n_1) x ... x Sym(n_t)``; within a column every value not yet used by
    the partial set is interchangeable, so one representative per orbit is
    explored and the whole orbit is excluded afterwards. The first vertex is
    fixed to ``(0, ..., 0)`` by vertex transitivity and the second is reduced
    further by permutations of equal-size factors.
    """

    def __init__(self, G, total, k, deadline=None, symmetry=True, universe=None):
        ds = dense_structure(G)
        self.G = G
        self.sizes = G.sizes
        self.t = G.t
        self.k = k
        # the search is confined to ``universe``, a union of components containing vertex 0
        self.full = ds.full if universe is None else universe
        self.cols = ds.column
        self.nb = ds.open if total else ds.closed
        self.deadline = deadline
        self.symmetry = symmetry
        self.nodes = 0

    # -- orbit helpers -----------------------------------------------------

    def _free_masks(self, pinned):
        out = []
        for c in range(self.t):
            m = self.full
            for a in pinned[c]:
                m &= ~self.cols[c][a]
            out.append(m)
        return out

    def _orbit(self, v, pinned, free):
        m = self.full
        for c in range(self.t):
            m &= self.cols[c][v[c]] if v[c] in pinned[c] else free[c]
        return m

    def _root_orbit(self, v, free):
        # D = {0}: orbit under the stabilizer of 0 extended by permutations of equal factors.
        classes: dict[int, list[int]] = {}
        for c, n in enumerate(self.sizes):
            classes.setdefault(n, []).append(c)
        per_class = []
        for cs in classes.values():
            zeros = sum(1 for c in cs if v[c] == 0)
            per_class.append([set(z) for z in itertools.combinations(cs, zeros)])
        mask = 0
        for pick in itertools.product(*per_class):
            zero_cols = set().union(*pick)
            m = self.full
            for c in range(self.t):
                m &= self.cols[c][0] if c in zero_cols else free[c]
            mask |= m
        return mask

    # -- search ------------------------------------------------------------

    def _tick(self):
        self.nodes += 1
        if self.deadline is not None and self.nodes % 256 == 0 and time.monotonic() > self.deadline:
            raise _Timeout

    def _bound_ok(self, U, allowed, depth):
        rem = self.k - depth
        need = U.bit_count()
        best = 0
        nb = self.nb
        for v in iter_bits(allowed):
            c = (nb[v] & U).bit_count()
            if c > best:
                best = c
                if best * rem >= need:
                    return True
        return best * rem >= need

    def _pick_target(self, U, allowed):
        nb = self.nb
        best_u, best_c = -1, None
        for u in iter_bits(U):
            c = (nb[u] & allowed).bit_count()
            if best_c is None or c < best_c:
                best_u, best_c = u, c
                if c == 0:
                    break
        return best_u, best_c

    def branches(self, D, U, X, pinned, root=False):
        """Representatives to branch on, each with the exclusion mask it runs under."""
        allowed = self.full & ~X
        u, count = self._pick_target(U, allowed)
        if count == 0:
            return []
        cands = self.nb[u] & allowed
        reps = []
        if self.symmetry:
            free = self._free_masks(pinned)
            while cands:
                v = (cands & -cands).bit_length() - 1
                vt = self.G.vertex(v)
                orbit = self._root_orbit(vt, free) if root else self._orbit(vt, pinned, free)
                cands &= ~orbit
                reps.append(((self.nb[v] & U).bit_count(), v, orbit))
        else:
            for v in iter_bits(cands):
                reps.append(((self.nb[v] & U).bit_count(), v, 1 << v))
        reps.sort(key=lambda r: (-r[0], r[1]))
        out = []
        for _, v, orbit in reps:
            out.append((v, X))
            X |= orbit
        return out

    def recurse(self, D, U, X, pinned):
        self._tick()
        if U == 0:
            return list(D)
        depth = len(D)
        if depth >= self.k:
            return None
        if not self._bound_ok(U, self.full & ~X, depth):
            return None
        for v, Xv in self.branches(D, U, X, pinned):
            found = self.extend(D, U, Xv, pinned, v)
            if found is not None:
                return found
        return None

    def extend(self, D, U, X, pinned, v):
        vt = self.G.vertex(v)
        pinned2 = tuple(pinned[c] | {vt[c]} for c in range(self.t))
        return self.recurse(D + [v], U & ~self.nb[v], X, pinned2)

    def root_tasks(self):
        """Initial state after fixing the first vertex, and the depth-1 branch list."""
        if not self.symmetry:
            empty = tuple(frozenset() for _ in range(self.t))
            return [], self.full, empty, self.branches([], self.full, 0, empty)
        D = [0]
        U = self.full & ~self.nb[0]
        pinned = tuple(frozenset({0}) for _ in range(self.t))
        if U == 0 or self.k <= 1:
            return D, U, pinned, []
        if not self._bound_ok(U, self.full, 1):
            return D, U, pinned, []
        return D, U, pinned, self.branches(D, U, 0, pinned, root=True)

    def run(self):
        if self.k <= 0:
            return None
        D, U, pinned, tasks = self.root_tasks()
        self._tick()
        if U == 0:
            return D
        for v, X in tasks:
            found = self.extend(D, U, X, pinned, v)
            if found is not None:
                return found
        return None


def _run_task(sizes, total, k, deadline, symmetry, universe, D, U, X, pinned, v):
    s = _Search(ProductGraph(sizes), total, k, deadline, symmetry, universe)
    try:
        found = s.extend(D, U, X, pinned, v)
    except _Timeout:
        return "timeout", s.nodes
    return found, s.nodes


def find_set(G: ProductGraph, k: int, total: bool = False, *, deadline=None, symmetry=True, threads=1, universe=None):
    """Search for a (total) dominating set of size at most ``k``.

    Returns ``(witness or None, nodes_explored)`` where the witness is a list
    of vertex tuples. With ``universe`` (a bitmask of whole components that
    contains vertex 0) only that part of the graph has to be dominated.
    Raises :class:`_Timeout` past ``deadline``.
    """
    s = _Search(G, total, k, deadline, symmetry, universe)
    if threads <= 1 or G.vertex_count < PARALLEL_MIN_VERTICES:
        found = s.run()
        return (None if found is None else [G.vertex(i) for i in found]), s.nodes
    D, U, pinned, tasks = s.root_tasks()
    if U == 0:
        return [G.vertex(i) for i in D], 1
    nodes = 1
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = [
            pool.submit(_run_task, G.sizes, total, k, deadline, symmetry, universe, D, U, X, pinned, v)
            for v, X in tasks
        ]
        outcome = None
        timed_out = False
        for f in futures:
            found, n = f.result()
            nodes += n
            if found == "timeout":
                timed_out = True
            elif found is not None and outcome is None:
                outcome = found
                for g in futures:
                    g.cancel()
                break
    if outcome is None and timed_out:
        raise _Timeout
    return (None if outcome is None else [G.vertex(i) for i in outcome]), nodes


def greedy_set(G: ProductGraph, total: bool = False) -> list:
    """Greedy (total) dominating set; an upper bound and fallback witness."""
    ds = dense_structure(G)
    nb = ds.open if total else ds.closed
    U = ds.full
    chosen = []
    while U:
        best_v, best_c = -1, -1
        for v in range(G.vertex_count):
            c = (nb[v] & U).bit_count()
            if c > best_c:
                best_v, best_c = v, c
        chosen.append(best_v)
        U &= ~nb[best_v]
    return [G.vertex(i) for i in chosen]


def _construction_upper(G: ProductGraph, total: bool):
    from . import constructions

    if total:
        return None
    for build in (constructions.diagonal_tplus1, constructions.tplus2_construction):
        try:
            return list(build(G).vertices)
        except Exception:  # hypotheses not met
            continue
    if G.t == 3:
        return list(constructions.mekis_triple(G))
    return None


def _component(closed, v: int) -> int:
    comp = frontier = 1 << v
    while frontier:
        nxt = 0
        for w in iter_bits(frontier):
            nxt |= closed[w]
        frontier = nxt & ~comp
        comp |= nxt
    return comp


def _translate(G: ProductGraph, vertices, shift) -> list:
    return [tuple((a + b) % n for a, b, n in zip(v, shift, G.sizes)) for v in vertices]


def _solve(G, total, upper_hint, time_limit, seed_bounds, symmetry, threads):
    from .bounds import best_bounds, naive_total_lower

    G = G if isinstance(G, ProductGraph) else ProductGraph(tuple(G))
    ds = dense_structure(G)  # raises CapacityError early
    started = time.monotonic()
    deadline = None if time_limit is None else started + time_limit
    kind = "total_dominating" if total else "dominating"

    # Coordinate shifts are automorphisms, so every component is a shifted
    # copy of the one holding vertex 0 and the value is copies * value there.
    home = _component(ds.closed, 0)
    shifts = []
    rest = ds.full
    while rest:
        w = (rest & -rest).bit_length() - 1
        shifts.append(G.vertex(w))
        rest &= ~_component(ds.closed, w)
    copies = len(shifts)

    def spread(part):
        out = []
        for w in shifts:
            out.extend(_translate(G, part, w))
        return out

    lower, source = 1, "search"
    if seed_bounds:
        b = best_bounds(G)
        lower, source = b.lower, b.lower_source
        if total:
            t_lower = naive_total_lower(G)
            if t_lower > lower:
                lower, source = t_lower, "naive_total_lower"
    lower = max(1, -(-lower // copies))

    incumbent = None
    if seed_bounds:
        built = _construction_upper(G, total)
        if built is not None:
            incumbent = [v for v in built if home >> G.index(v) & 1]
    greedy = [v for v in greedy_set(G, total) if home >> G.index(v) & 1]
    if incumbent is None or len(greedy) < len(incumbent):
        incumbent = greedy
    upper = len(incumbent) * copies
    if upper_hint is not None:
        upper = min(upper, upper_hint)

    nodes = 0
    k = lower
    universe = None if copies == 1 else home
    try:
        while k < len(incumbent):
            found, n = find_set(
                G, k, total, deadline=deadline, symmetry=symmetry, threads=threads, universe=universe
            )
            nodes += n
            log.debug("%s k=%d: %s after %d nodes", G, k, "found" if found else "refuted", n)
            if found is not None:
                incumbent = found
                break
            k += 1
    except _Timeout:
        witness = Certificate(kind, G, tuple(spread(incumbent)))
        raise SolverTimeout(k * copies, min(upper, len(incumbent) * copies), witness, nodes)
    full_set = spread(incumbent)
    value = len(full_set)
    if lower <= 1:
        source = "search"
    elif value > lower * copies:
        source = f"{source}+search"
    witness = Certificate(kind, G, tuple(full_set), claimed_value=value)
    if copies > 1 and undominated_vertex(G, full_set, total) is not None:
        raise AssertionError(f"translated witness fails on {G}")
    return SolveResult(value, witness, nodes, True, source, time.monotonic() - started)


def gamma_exact(G, upper_hint=None, *, time_limit=None, seed_bounds=True, symmetry=True, threads=1) -> SolveResult:
    """Exact domination number of a product of complete graphs.

    Sizes ``k = lower, lower + 1, ...`` are refuted in turn until a set is
    found. With ``seed_bounds`` the starting size comes from the certified
    theorem bounds and the incumbent from the explicit constructions; with
    ``seed_bounds=False`` every size from 1 upward is settled by search.
    Raises :class:`SolverTimeout` carrying the proven interval when
    ``time_limit`` (seconds) runs out.
    """
    return _solve(G, False, upper_hint, time_limit, seed_bounds, symmetry, threads)


def gamma_t_exact(G, upper_hint=None, *, time_limit=None, seed_bounds=True, symmetry=True, threads=1) -> SolveResult:
    """Exact total domination number; see :func:`gamma_exact`."""
    return _solve(G, True, upper_hint, time_limit, seed_bounds, symmetry, threads)


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------


def _components(masks: list[int]) -> list[list[int]]:
    n = len(masks)
    seen = 0
    comps = []
    for s in range(n):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = comp
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= masks[v]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        comps.append(list(iter_bits(comp)))
    return comps


@numba.njit(cache=True)
def _cover_from(masks, target, k, first):
    # every k-subset whose smallest member is ``first``, in lexicographic order
    n = masks.shape[0]
    if k == 1:
        return masks[first] == target
    idx = np.empty(k, np.int64)
    acc = np.empty(k, np.uint64)
    idx[0] = first
    acc[0] = masks[first]
    level = 1
    idx[1] = first
    while level > 0:
        idx[level] += 1
        if idx[level] > n - (k - level):
            level -= 1
            continue
        a = acc[level - 1] | masks[idx[level]]
        if level == k - 2:
            for j in range(idx[level] + 1, n):
                if a | masks[j] == target:
                    return True
            continue
        if level == k - 1:
            if a == target:
                return True
            continue
        acc[level] = a
        level += 1
        idx[level] = idx[level - 1]
    return False


@numba.njit(parallel=True, cache=True)
def _cover_exists(masks, target, k):
    n = masks.shape[0]
    hits = np.zeros(n, np.bool_)
    for first in numba.prange(n - k + 1):
        hits[first] = _cover_from(masks, target, k, first)
    return hits.any()


def _smallest_cover(masks: np.ndarray, target: int, max_k: int, budget: int):
    """Smallest k <= max_k such that k of ``masks`` OR to ``target``, by enumeration."""
    n = len(masks)
    target = np.uint64(target)
    spent = 0
    for k in range(1, min(max_k, n) + 1):
        spent += comb(n, k)
        if spent > budget:
            raise CapacityError(f"enumeration budget {budget:.3g} exceeded at k={k} on {n} vertices")
        with warnings.catch_warnings():
            # numba probes for a TBB threading layer and complains when it is too old
            warnings.filterwarnings("ignore", message=".*TBB", category=numba.NumbaWarning)
            hit = _cover_exists(masks, target, k)
        if hit:
            return k
    return None


def brute_force_value(G, kind: str = "dominating", max_k: int | None = None, *, budget: int = ORACLE_BUDGET):
    """Smallest size of a (total) dominating set, by exhaustive enumeration.

    The graph is rebuilt from the adjacency rule alone and split into
    connected components (the domination numbers add over components);
    every k-subset of each component is tried for k = 1, 2, ... in a
    compiled loop over 64-bit masks. Returns None when
    no set of size <= ``max_k`` exists.
    """
    if kind not in ("dominating", "total"):
        raise InvalidArgumentError(f"kind must be 'dominating' or 'total', got {kind!r}")
    G = G if isinstance(G, ProductGraph) else ProductGraph(tuple(G))
    N = G.vertex_count
    if N > ORACLE_VERTEX_CAP:
        raise CapacityError(f"oracle handles at most {ORACLE_VERTEX_CAP} vertices, got {N}")
    max_k = N if max_k is None else max_k
    verts = list(itertools.product(*(range(n) for n in G.sizes)))
    adj = [0] * N
    for i, u in enumerate(verts):
        for j, w in enumerate(verts):
            if all(a != b for a, b in zip(u, w)):
                adj[i] |= 1 << j
    total = kind == "total"
    value = 0
    for comp in _components(adj):
        local = {v: i for i, v in enumerate(comp)}
        masks = []
        for v in comp:
            m = 0 if total else 1 << local[v]
            for w in iter_bits(adj[v]):
                m |= 1 << local[w]
            masks.append(m)
        target = (1 << len(comp)) - 1
        best = _smallest_cover(np.array(masks, dtype=np.uint64), target, max_k - value, budget)
        if best is None:
            return None
        value += best
    return value

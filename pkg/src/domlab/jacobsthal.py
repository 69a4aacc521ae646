"""Jacobsthal's function and non-coprime runs.

``g(n)`` is the least ``m`` such that every ``m`` consecutive integers contain
one coprime to ``n``; equivalently one more than the longest run of
consecutive integers sharing a factor with ``n``. It depends only on the
radical of ``n``, so everything here works with :class:`SquarefreeModulus`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, gcd
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from ._ntheory import first_primes, is_prime
from .certificates import Certificate
from .errors import CapacityError, InvalidArgumentError
from .products import SquarefreeModulus

# primorial(9) = 223092870 fits; primorial(10) does not
SIEVE_CAP = 3 * 10**8
SEGMENT = 1 << 22

# Published values that are far beyond a full-period sieve. Documentation only.
REFERENCE_VALUES = {
    "h": {24: 234, 41: 550},
    "H": {24: 236, 41: 566},
}


@dataclass(frozen=True)
class GapWitness:
    """Claim that ``start, ..., start + length - 1`` all share a factor with the modulus."""

    modulus: SquarefreeModulus
    start: int
    length: int

    def as_certificate(self) -> Certificate:
        return Certificate("noncoprime_run", self.modulus, run=(self.start, self.length))


@dataclass(frozen=True)
class JacobsthalResult:
    modulus: SquarefreeModulus
    g_value: int
    witness: GapWitness
    exhaustive: bool = True

    def as_row(self) -> dict:
        return {
            "primes": list(self.modulus.primes),
            "modulus": str(self.modulus.n),
            "g": self.g_value,
            "witness": {"start": str(self.witness.start), "length": self.witness.length},
            "exhaustive": self.exhaustive,
        }


def first_coprime_in_run(n: int, start: int, length: int):
    """First member of the run that is coprime to ``n``, or None."""
    for x in range(start, start + length):
        if gcd(x, n) == 1:
            return x
    return None


def verify_run(w: GapWitness) -> bool:
    if w.length < 0:
        return False
    return first_coprime_in_run(w.modulus.n, w.start, w.length) is None


def _marked_segment(primes, lo: int, hi: int) -> np.ndarray:
    marked = np.zeros(hi - lo, dtype=bool)
    for p in primes:
        marked[(-lo) % p :: p] = True
    return marked


def g_of(m: SquarefreeModulus, cap: int = SIEVE_CAP, segment: int = SEGMENT) -> JacobsthalResult:
    """Exact ``g`` by a segmented sieve over one full period.

    Both ``1`` and ``n - 1`` are units, so no run of non-units crosses a
    multiple of ``n`` except the run ``{0}`` itself; scanning ``[1, n)``
    therefore sees every run. The witness is the maximal run with the
    smallest start.
    """
    if not isinstance(m, SquarefreeModulus):
        m = SquarefreeModulus(tuple(m))
    n = m.n
    if n == 1:
        return JacobsthalResult(m, 1, GapWitness(m, 1, 0))
    if n > cap:
        raise CapacityError(f"modulus {n} exceeds the sieve cap {cap}")
    best_len, best_start = 1, n  # the run {n}
    carry = 0
    for lo in range(1, n, segment):
        hi = min(n, lo + segment)
        marked = _marked_segment(m.primes, lo, hi)
        free = np.flatnonzero(~marked)
        if free.size == 0:
            carry += hi - lo
            continue
        head = carry + int(free[0])
        if head > best_len:
            best_len, best_start = head, lo - carry
        if free.size > 1:
            gaps = np.diff(free) - 1
            i = int(np.argmax(gaps))
            if gaps[i] > best_len:
                best_len, best_start = int(gaps[i]), lo + int(free[i]) + 1
        carry = (hi - lo) - 1 - int(free[-1])
    return JacobsthalResult(m, best_len + 1, GapWitness(m, best_start, best_len))


def g_by_definition(n: int) -> int:
    """Reference ``g(n)``: walk from every start in one period and count non-coprime integers."""
    if n == 1:
        return 1
    longest = 0
    for x in range(1, n + 1):
        run = 0
        while gcd(x + run, n) != 1:
            run += 1
        longest = max(longest, run)
    return longest + 1


def g_by_windows(n: int) -> int:
    """Reference ``g(n)`` that checks every window start in one period.

    Units are found with ``gcd`` (not by marking multiples of the primes);
    a window of length ``m`` starting at ``x`` contains a unit iff a prefix
    sum of the unit indicator increases across it. The answer is the least
    ``m`` for which every window does, confirmed by also showing that some
    window of length ``m - 1`` does not.
    """
    if n < 1:
        raise InvalidArgumentError(f"n must be positive, got {n}")
    if n == 1:
        return 1
    units = np.gcd(np.arange(n, dtype=np.int64), n) == 1
    counts = np.concatenate(([0], np.cumsum(np.concatenate((units, units)))))

    def all_windows_hit(m):
        if m == 0:
            return False
        return bool(np.all(counts[m : n + m] - counts[:n] > 0))

    m = 1
    while not all_windows_hit(m):
        m += 1
    if all_windows_hit(m - 1):
        raise AssertionError("window test is not monotone")
    return m


def h_of(count: int, cap: int = SIEVE_CAP) -> JacobsthalResult:
    """``g`` of the product of the first ``count`` primes."""
    if count < 0:
        raise InvalidArgumentError("count must be nonnegative")
    return g_of(SquarefreeModulus(tuple(first_primes(count))), cap=cap)


class PoolMaximum(NamedTuple):
    value: int
    argmax: SquarefreeModulus
    pool: tuple


def H_bounded(count: int, pool: Iterable[int], budget: int = 200_000, cap: int = SIEVE_CAP) -> PoolMaximum:
    """Maximum of ``g`` over all ``count``-subsets of ``pool``.

    This is a surrogate for ``H(count)``, the maximum over all moduli with
    ``count`` prime factors: primes outside the pool are never tried.
    """
    pool = tuple(sorted(set(int(p) for p in pool)))
    for p in pool:
        if not is_prime(p):
            raise InvalidArgumentError(f"{p} in pool is not prime")
    if not 0 <= count <= len(pool):
        raise InvalidArgumentError(f"need 0 <= count <= {len(pool)}, got {count}")
    if comb(len(pool), count) > budget:
        raise CapacityError(f"C({len(pool)}, {count}) subsets exceed the budget {budget}")
    best = None
    for subset in itertools.combinations(pool, count):
        m = SquarefreeModulus(subset)
        value = g_of(m, cap=cap).g_value
        if best is None or value > best.value:
            best = PoolMaximum(value, m, pool)
    return best


def crt_combine(congruences) -> int:
    """Solve ``x = r_i (mod m_i)`` for pairwise coprime moduli; result in ``[0, prod m_i)``."""
    x, modulus = 0, 1
    for r, m in congruences:
        r, m = int(r), int(m)
        if m < 1:
            raise InvalidArgumentError(f"modulus must be positive, got {m}")
        if gcd(modulus, m) != 1:
            raise InvalidArgumentError(f"modulus {m} is not coprime to the others")
        # x + modulus * s = r (mod m)
        s = (r - x) * pow(modulus, -1, m) % m if m > 1 else 0
        x += modulus * s
        modulus *= m
    return x % modulus


def radical_reduce(factorization) -> SquarefreeModulus:
    """The radical of a factored integer.

    ``g`` is unchanged by passing to the radical, and the total domination
    number can only drop, so membership of ``n`` in a gap class transfers
    to its radical.

    >>> radical_reduce({2: 2, 3: 1}).primes
    (2, 3)
    """
    items = factorization.items() if isinstance(factorization, Mapping) else factorization
    primes = []
    for p, e in items:
        p, e = int(p), int(e)
        if e < 1:
            raise InvalidArgumentError(f"exponent of {p} must be positive, got {e}")
        if not is_prime(p):
            raise InvalidArgumentError(f"{p} is not prime")
        if p in primes:
            raise InvalidArgumentError(f"{p} listed twice")
        primes.append(p)
    return SquarefreeModulus(tuple(primes))


class DominatedPair(NamedTuple):
    gap: int
    q: tuple
    r: tuple
    g_q: int
    g_r: int


def dominated_pair_search(count: int, pool: Iterable[int], budget: int = 2_000_000) -> DominatedPair:
    """Largest ``g(r) - g(q)`` over ``count``-subsets with ``q_i <= r_i`` position by position.

    Exploratory: only primes from ``pool`` are used and nothing is claimed
    about moduli outside it.
    """
    pool = tuple(sorted(set(int(p) for p in pool)))
    for p in pool:
        if not is_prime(p):
            raise InvalidArgumentError(f"{p} in pool is not prime")
    if not 1 <= count <= len(pool):
        raise InvalidArgumentError(f"need 1 <= count <= {len(pool)}, got {count}")
    subsets = list(itertools.combinations(pool, count))
    if len(subsets) ** 2 > budget:
        raise CapacityError(f"{len(subsets)}^2 pairs exceed the budget {budget}")
    values = {q: g_of(SquarefreeModulus(q)).g_value for q in subsets}
    best = None
    for q in subsets:
        for r in subsets:
            if all(a <= b for a, b in zip(q, r)):
                gap = values[r] - values[q]
                if best is None or gap > best.gap:
                    best = DominatedPair(gap, q, r, values[q], values[r])
    return best

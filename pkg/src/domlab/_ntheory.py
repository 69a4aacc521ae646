"""Small number theory helpers: primality, prime lists, factorization."""

from math import isqrt

# Deterministic for every n < 3.3e24 (covers all 64-bit inputs).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
DETERMINISTIC_LIMIT = 3317044064679887385961981
_EXTRA_BASES = (43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _strong_probable_prime(n, a):
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Miller-Rabin test; deterministic below ``DETERMINISTIC_LIMIT``.

    Above the limit a larger fixed base set is used, making the answer a
    (very strong) probable-prime verdict. Use :func:`primality_is_proven`
    to tell the two regimes apart.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    bases = _MR_BASES if n < DETERMINISTIC_LIMIT else _MR_BASES + _EXTRA_BASES
    return all(_strong_probable_prime(n, a) for a in bases)


def primality_is_proven(n: int) -> bool:
    return n < DETERMINISTIC_LIMIT


def primes_up_to(limit: int) -> list[int]:
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


def first_primes(count: int) -> list[int]:
    """The first ``count`` primes in increasing order."""
    if count <= 0:
        return []
    limit = 16
    while True:
        ps = primes_up_to(limit)
        if len(ps) >= count:
            return ps[:count]
        limit *= 2


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than ``n``."""
    c = max(n + 1, 2)
    while not is_prime(c):
        c += 1
    return c


def factorize(n: int, trial_limit: int = 10**6) -> dict[int, int]:
    """Factor ``n`` by trial division, accepting a prime cofactor.

    Raises ``ValueError`` if a composite cofactor survives trial division.
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    p = 2
    while n > 1 and p * p <= n and p <= trial_limit:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        if not is_prime(n):
            raise ValueError(f"composite cofactor {n} beyond trial division limit")
        out[n] = out.get(n, 0) + 1
    return out

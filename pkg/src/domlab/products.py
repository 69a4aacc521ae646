"""Direct products of complete graphs and their unitary Cayley graph models.

A product ``K_{n_1} x ... x K_{n_t}`` has the tuples ``(x_1, ..., x_t)`` with
``0 <= x_i < n_i`` as vertices; two tuples are adjacent iff they differ in
every coordinate. For a squarefree ``n = q_1 ... q_t`` the unitary Cayley
graph ``X_n`` (residues mod n, adjacent iff their difference is a unit) is
isomorphic to ``K_{q_1} x ... x K_{q_t}`` via the Chinese remainder map.

Vertices are plain tuples externally. Internally the dense routines use the
mixed-radix flat index ``sum(x_i * prod(n_j for j > i))`` so that vertex
sets become Python int bitsets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, prod
from typing import Iterable, Sequence

from ._ntheory import is_prime, primality_is_proven
from .errors import CapacityError, InvalidArgumentError, InvalidInstanceError

# Cap for materializing vertex lists or per-vertex checks.
DENSE_VERTEX_CAP = 10**6
# Cap for the bitset solver, whose neighborhood table is quadratic in bits.
SOLVER_VERTEX_CAP = 20_000

Vertex = tuple


@dataclass(frozen=True)
class ProductGraph:
    """The graph ``prod K_{n_i}``; ``sizes`` is always stored ascending."""

    sizes: tuple

    def __post_init__(self):
        sizes = tuple(sorted(int(n) for n in self.sizes))
        if not sizes:
            raise InvalidInstanceError("a product needs at least one factor")
        if sizes[0] < 2:
            raise InvalidInstanceError(f"factor sizes must be >= 2, got {list(self.sizes)}")
        object.__setattr__(self, "sizes", sizes)

    @property
    def t(self) -> int:
        return len(self.sizes)

    @property
    def vertex_count(self) -> int:
        return prod(self.sizes)

    @property
    def min_degree(self) -> int:
        return prod(n - 1 for n in self.sizes)

    def __str__(self):
        return " x ".join(f"K{n}" for n in self.sizes)

    def check_vertex(self, v) -> Vertex:
        v = tuple(int(x) for x in v)
        if len(v) != self.t:
            raise InvalidArgumentError(f"vertex {v} has {len(v)} coordinates, graph has {self.t}")
        for x, n in zip(v, self.sizes):
            if not 0 <= x < n:
                raise InvalidArgumentError(f"vertex {v} out of range for sizes {list(self.sizes)}")
        return v

    def index(self, v) -> int:
        """Mixed-radix flat index of a vertex (first coordinate most significant)."""
        i = 0
        for x, n in zip(v, self.sizes):
            i = i * n + x
        return i

    def vertex(self, index: int) -> Vertex:
        coords = []
        for n in reversed(self.sizes):
            index, x = divmod(index, n)
            coords.append(x)
        return tuple(reversed(coords))

    def vertices(self):
        """Iterate over all vertices in flat-index order."""
        self.require_dense()
        return itertools.product(*(range(n) for n in self.sizes))

    def require_dense(self, cap: int | None = None):
        cap = DENSE_VERTEX_CAP if cap is None else cap
        if self.vertex_count > cap:
            raise CapacityError(
                f"{self} has {self.vertex_count} vertices, above the dense cap {cap}"
            )


def make_product(sizes: Iterable[int], max_vertices: int | None = DENSE_VERTEX_CAP) -> ProductGraph:
    """Validate and normalize a list of factor sizes.

    >>> make_product([4, 6, 4, 4]).sizes
    (4, 4, 4, 6)
    """
    G = ProductGraph(tuple(sizes))
    if max_vertices is not None and G.vertex_count > max_vertices:
        raise CapacityError(f"{G} has {G.vertex_count} vertices, above the cap {max_vertices}")
    return G


def adjacent(G: ProductGraph, u, v) -> bool:
    u = G.check_vertex(u)
    v = G.check_vertex(v)
    return all(a != b for a, b in zip(u, v))


def closed_neighborhood_size(G: ProductGraph) -> int:
    return 1 + G.min_degree


@dataclass(frozen=True)
class SquarefreeModulus:
    """A squarefree modulus given by its distinct prime factors.

    ``probable`` is set when some prime lies above the range where the
    Miller-Rabin base set is proven deterministic.
    """

    primes: tuple
    probable: bool = field(default=False, compare=False)

    def __post_init__(self):
        ps = tuple(int(p) for p in self.primes)
        if len(set(ps)) != len(ps):
            raise InvalidInstanceError(f"duplicate primes in {list(ps)}")
        ps = tuple(sorted(ps))
        for p in ps:
            if not is_prime(p):
                raise InvalidInstanceError(f"{p} is not prime")
        object.__setattr__(self, "primes", ps)
        object.__setattr__(self, "probable", not all(primality_is_proven(p) for p in ps))

    @property
    def n(self) -> int:
        return prod(self.primes)

    @property
    def totient(self) -> int:
        return prod(p - 1 for p in self.primes)

    def __len__(self):
        return len(self.primes)

    def __str__(self):
        return "*".join(map(str, self.primes)) or "1"


def ucg_graph(m: SquarefreeModulus) -> ProductGraph:
    """The product of complete graphs isomorphic to ``X_n`` for squarefree n."""
    if not m.primes:
        raise InvalidInstanceError("X_1 has a single vertex and no product model")
    return ProductGraph(m.primes)


def vertex_to_residue(m: SquarefreeModulus, v) -> int:
    if len(v) != len(m.primes):
        raise InvalidArgumentError(f"vertex {tuple(v)} does not match {len(m.primes)} primes")
    n = m.n
    r = 0
    for x, q in zip(v, m.primes):
        if not 0 <= x < q:
            raise InvalidArgumentError(f"coordinate {x} out of range mod {q}")
        c = n // q
        r += x * c * pow(c, -1, q)
    return r % n


def residue_to_vertex(m: SquarefreeModulus, r: int) -> Vertex:
    return tuple(r % q for q in m.primes)


def residue_adjacent(m: SquarefreeModulus, a: int, b: int) -> bool:
    n = m.n
    return gcd((a - b) % n, n) == 1


@dataclass(frozen=True)
class DenseStructure:
    """Bitset tables for a product graph.

    ``column[c][a]`` holds the vertices whose coordinate ``c`` equals ``a``;
    ``closed[i]`` and ``open[i]`` are the neighborhoods of flat index ``i``.
    """

    graph: ProductGraph
    full: int
    column: tuple
    closed: tuple
    open: tuple


def _column_masks(sizes: Sequence[int]) -> list[list[int]]:
    total = prod(sizes)
    out = []
    stride = total
    for n in sizes:
        stride //= n
        period = n * stride
        reps = total // period
        spread = ((1 << (period * reps)) - 1) // ((1 << period) - 1)
        block = (1 << stride) - 1
        out.append([(block << (a * stride)) * spread for a in range(n)])
    return out


@lru_cache(maxsize=32)
def dense_structure(G: ProductGraph, cap: int = SOLVER_VERTEX_CAP) -> DenseStructure:
    G.require_dense(cap)
    N = G.vertex_count
    full = (1 << N) - 1
    cols = _column_masks(G.sizes)
    closed = []
    opened = []
    for i, v in enumerate(itertools.product(*(range(n) for n in G.sizes))):
        hit = 0
        for c, x in enumerate(v):
            hit |= cols[c][x]
        nb = full & ~hit
        opened.append(nb)
        closed.append(nb | (1 << i))
    return DenseStructure(G, full, tuple(tuple(c) for c in cols), tuple(closed), tuple(opened))


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low

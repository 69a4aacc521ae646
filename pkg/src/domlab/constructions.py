"""Explicit dominating and total dominating sets, and the CRT lift.

Every generator verifies its output before returning it. The lift turns a
total dominating set of ``X_s`` into one of ``X_n`` for ``n = s * r_1 ... r_l``
together with a long run of integers sharing a factor with ``n``; the pair
certifies ``gamma_t(X_n) <= g(n) - j`` for the gap ``j`` it reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, prod

from .certificates import Certificate
from .errors import CertificateRejected, InvalidArgumentError, NotApplicableError
from .exact import check_certificate, is_dominating, is_total_dominating, undominated_residue
from .jacobsthal import GapWitness, crt_combine, first_coprime_in_run, g_of
from .products import ProductGraph, SquarefreeModulus

LIFT_VERIFY_CAP = 10**7

MEKIS_TRIPLE = ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0))


def _as_graph(G) -> ProductGraph:
    return G if isinstance(G, ProductGraph) else ProductGraph(tuple(G))


def _checked(c: Certificate) -> Certificate:
    report = check_certificate(c)
    if not report.ok:
        raise AssertionError(f"generator produced an invalid certificate: {report.reason}")
    return c


def prefix_total_dominating(m: SquarefreeModulus) -> Certificate:
    """The residues ``0, 1, ..., g(n) - 1``, a total dominating set of ``X_n``."""
    g = g_of(m).g_value
    return _checked(
        Certificate("total_dominating", m, tuple(range(g)), claimed_value=g, meta={"g": g})
    )


def mekis_triple(G=None) -> tuple:
    """Four vertices dominating any product of three complete graphs."""
    if G is not None:
        G = _as_graph(G)
        if G.t != 3:
            raise NotApplicableError(f"the triple needs exactly 3 factors, {G} has {G.t}")
        if not is_dominating(G, MEKIS_TRIPLE):
            raise AssertionError(f"triple fails to dominate {G}")
    return MEKIS_TRIPLE


def diagonal_tplus1(G) -> Certificate:
    """``{(i, ..., i) : 0 <= i <= t}`` when ``n_1 >= t + 1``."""
    G = _as_graph(G)
    t = G.t
    if G.sizes[0] < t + 1:
        raise NotApplicableError(f"diagonal set needs n_1 >= t+1 = {t + 1}, got n_1 = {G.sizes[0]}")
    D = tuple((i,) * t for i in range(t + 1))
    return _checked(Certificate("dominating", G, D, claimed_value=t + 1))


def tplus2_vertices(t: int) -> tuple:
    rows = [
        (0, 0, 0) + (0,) * (t - 3),
        (0, 1, 1) + (1,) * (t - 3),
        (1, 0, 1) + (2,) * (t - 3),
        (1, 1, 0) + (3,) * (t - 3),
    ]
    for i in range(4, t + 2):
        rows.append((i - 2,) * 3 + (i,) * (t - 3))
    return tuple(rows)


def tplus2_construction(G) -> Certificate:
    """Dominating set of size t+2 when ``n_1 = n_2 = n_3 = t`` and ``n_4 >= t + 2``.

    The certificate's ``meta["total_dominating"]`` records whether the set
    happens to be total dominating as well; that is checked, not assumed.
    """
    G = _as_graph(G)
    t, n = G.t, G.sizes
    if t < 4 or not (n[0] == n[1] == n[2] == t) or n[3] < t + 2:
        raise NotApplicableError(f"needs t >= 4, n_1 = n_2 = n_3 = t, n_4 >= t+2; got {list(n)}")
    D = tplus2_vertices(t)
    cert = Certificate(
        "dominating", G, D, claimed_value=t + 2, meta={"total_dominating": is_total_dominating(G, D)}
    )
    return _checked(cert)


def transport(cert: Certificate, sizes) -> Certificate:
    """Re-home a total dominating set of ``prod K_{n_i}`` in a larger ``prod K_{m_i}``.

    Coordinates are kept unchanged; requires ``n_i <= m_i`` factor by factor.
    """
    H = _as_graph(sizes)
    G = cert.instance
    if not isinstance(G, ProductGraph) or G.t != H.t:
        raise InvalidArgumentError("transport needs product graphs with the same factor count")
    if any(a > b for a, b in zip(G.sizes, H.sizes)):
        raise InvalidArgumentError(f"{G} is not factorwise below {H}")
    return Certificate(cert.kind, H, cert.vertices, claimed_value=cert.claimed_value)


@dataclass(frozen=True)
class LiftRecipe:
    """Inputs of the lift: base modulus ``s``, multiplier ``k`` and ``k * phi(s)`` large primes."""

    s_modulus: SquarefreeModulus
    k: int
    r_primes: tuple
    base_total_dominating: tuple | None = None


@dataclass(frozen=True)
class GapCertification:
    """Evidence that ``n`` has ``gamma_t(X_n) <= g(n) - certified_gap``."""

    modulus: SquarefreeModulus
    total_dominating: Certificate
    run_witness: GapWitness
    certified_gap: int
    verified: bool
    meta: dict = field(default_factory=dict, compare=False)

    def as_row(self) -> dict:
        from .certificates import certificate_to_dict

        return {
            "modulus": str(self.modulus.n),
            "primes": [str(p) for p in self.modulus.primes],
            "certified_gap": self.certified_gap,
            "verified": self.verified,
            "total_dominating": certificate_to_dict(self.total_dominating),
            "run_witness": certificate_to_dict(self.run_witness.as_certificate()),
            **self.meta,
        }


def lift_total_dominating(recipe: LiftRecipe, verify_cap: int = LIFT_VERIFY_CAP) -> GapCertification:
    s_mod = recipe.s_modulus
    if not s_mod.primes:
        raise InvalidArgumentError("the base modulus needs at least one prime")
    s, k = s_mod.n, recipe.k
    if k < 1:
        raise InvalidArgumentError(f"k must be >= 1, got {k}")
    g_s = g_of(s_mod).g_value
    ell = k * s_mod.totient
    rs = tuple(sorted(int(r) for r in recipe.r_primes))
    if len(rs) != ell:
        raise InvalidArgumentError(f"need k * phi(s) = {ell} primes r_i, got {len(rs)}")
    if len(set(rs)) != ell:
        raise InvalidArgumentError("the primes r_i must be distinct")
    floor_r = k * s + g_s
    for r in rs:
        if r <= floor_r:
            raise InvalidArgumentError(f"r = {r} must exceed k*s + g(s) = {floor_r}")
        if r in s_mod.primes:
            raise InvalidArgumentError(f"r = {r} divides s")
    n_mod = SquarefreeModulus(s_mod.primes + rs)  # validates primality

    base = recipe.base_total_dominating
    if base is None:
        base = prefix_total_dominating(s_mod).vertices
    base = tuple(sorted({int(d) % s for d in base}))
    if undominated_residue(s_mod, base, total=True) is not None:
        raise InvalidArgumentError(f"base set {list(base)} is not total dominating in X_{s}")

    x = next(
        x for x in range(1, s + 1) if first_coprime_in_run(s, x, g_s - 1) is None
    )
    window = range(x, x + k * s + g_s - 1)
    coprime = [z for z in window if gcd(z, s) == 1]
    if len(coprime) != ell:
        raise AssertionError(f"expected {ell} residues coprime to s in the window, found {len(coprime)}")

    # start + (z - x) must be divisible by the r paired with z
    start = crt_combine([(x, s)] + [(x - z, r) for z, r in zip(coprime, rs)])
    lifted = [crt_combine([(d, s)] + [(-1, r) for r in rs]) for d in base]
    D = tuple(range(k * s)) + tuple(lifted)
    if len(set(D)) != k * s + len(base):
        raise AssertionError("lifted set overlaps the prefix block")

    n = n_mod.n
    run = GapWitness(n_mod, start, k * s + g_s - 1)
    cert = Certificate("total_dominating", n_mod, D, claimed_value=len(D))
    method = "direct-gcd" if n <= verify_cap else "crt-structural"
    bad = undominated_residue(n_mod, D, total=True, direct_cap=verify_cap)
    if bad is not None:
        raise AssertionError(f"lifted set misses residue {bad}")
    if first_coprime_in_run(n, run.start, run.length) is not None:
        raise AssertionError("lifted run contains a unit")
    meta = {
        "s": str(s),
        "k": k,
        "g_s": g_s,
        "x": x,
        "window_coprime": coprime,
        "verification": method,
    }
    return GapCertification(n_mod, cert, run, run.length + 1 - len(D), True, meta)


def certify_mj_membership(n: SquarefreeModulus, D: Certificate, w: GapWitness) -> GapCertification:
    """Check a total dominating set and a run for the same ``n`` and report the gap.

    The gap ``j = (w.length + 1) - |D|`` is certified because
    ``gamma_t(X_n) <= |D|`` and ``g(n) >= w.length + 1``.
    """
    if D.kind != "total_dominating":
        raise CertificateRejected("total_dominating", f"wrong kind {D.kind!r}")
    if D.instance != n:
        raise CertificateRejected("total_dominating", f"certificate is for {D.instance}, not {n}")
    report = check_certificate(D)
    if not report.ok:
        raise CertificateRejected("total_dominating", report.reason)
    if w.modulus != n:
        raise CertificateRejected("run_witness", f"witness is for {w.modulus}, not {n}")
    if w.length < 0:
        raise CertificateRejected("run_witness", "negative length")
    bad = first_coprime_in_run(n.n, w.start, w.length)
    if bad is not None:
        raise CertificateRejected("run_witness", f"{bad} is coprime to {n.n}")
    gap = w.length + 1 - D.size
    if gap < 0:
        raise CertificateRejected("total_dominating", f"|D| = {D.size} exceeds run length + 1 = {w.length + 1}")
    return GapCertification(n, D, w, gap, True)

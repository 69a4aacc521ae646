"""Closed-form bounds on the domination number of ``prod K_{n_i}``.

Lower bounds are evaluated in exact integer/rational arithmetic. The two
upper bounds involve natural logarithms; they are computed in floating point
and rounded up, with a small upward slack, so they stay valid.

Asymptotically, for ``n`` the product of the first ``t`` primes,
``gamma(X_n)`` lies between constant multiples of ``t log t`` and
``t log^2 t``. The constants are not explicit, so that statement is not
offered as a checkable bound here; its two sides come from
:func:`asymptotic_bound` and :func:`product_upper`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidArgumentError
from .products import ProductGraph

_LN_2E = math.log(2 * math.e)
# relative slack added to float upper bounds before rounding up
_UP_SLACK = 1e-12


@dataclass(frozen=True)
class BoundReport:
    """One named bound evaluated at one instance.

    ``certified`` means the bound is a theorem at this instance size;
    asymptotic bounds are reported with ``certified=False``. ``exact`` marks
    lower bounds that a theorem also pins as the true value.
    """

    name: str
    kind: str
    value: int | Fraction | None
    applicable: bool
    certified: bool
    hypothesis_note: str = ""
    exact: bool = False

    @property
    def floor(self) -> int | None:
        return None if self.value is None else math.floor(self.value)

    def as_row(self) -> dict:
        v = self.value
        if isinstance(v, Fraction) and v.denominator != 1:
            value = f"{v.numerator}/{v.denominator}"
        else:
            value = None if v is None else int(v)
        return {
            "name": self.name,
            "kind": self.kind,
            "value": value,
            "floor": self.floor,
            "applicable": self.applicable,
            "certified": self.certified,
            "exact": self.exact,
            "hypothesis_note": self.hypothesis_note,
        }


def _as_graph(G) -> ProductGraph:
    return G if isinstance(G, ProductGraph) else ProductGraph(tuple(G))


def _na(name, kind, note, certified=True):
    return BoundReport(name, kind, None, False, False, note)


def mekis_bound(G) -> BoundReport:
    """``gamma >= t+1`` for ``t >= 4`` (tight when ``n_1 >= t+1``), exact for ``t = 2, 3``."""
    G = _as_graph(G)
    t, n1 = G.t, G.sizes[0]
    if t < 2:
        return _na("mekis", "lower", "needs t >= 2")
    if t == 2:
        value = 2 if n1 == 2 else 3
        return BoundReport("mekis", "lower", value, True, True, f"t=2, n_1={n1}: exact", exact=True)
    if t == 3:
        return BoundReport("mekis", "lower", 4, True, True, "t=3: exact", exact=True)
    tight = n1 >= t + 1
    note = "exact when n_1 >= t+1" + (" (holds)" if tight else " (fails)")
    return BoundReport("mekis", "lower", t + 1, True, True, note, exact=tight)


def di_bound(G) -> BoundReport:
    """``gamma >= t + 1 + floor((t-1)/(n_1-1))`` when ``t >= 4`` and ``n_2 >= 3``."""
    G = _as_graph(G)
    t = G.t
    if t < 4 or G.sizes[1] < 3:
        return _na("defant_iyer", "lower", "needs t >= 4 and n_2 >= 3")
    n1 = G.sizes[0]
    value = t + 1 + (t - 1) // (n1 - 1)
    return BoundReport("defant_iyer", "lower", value, True, True, "t >= 4, n_2 >= 3")


def asymptotic_applicable(t: int, k: int) -> bool:
    """Strict test ``k < (1 - 2/log_{2e}(t)) t``; ambiguous boundary cases fail."""
    if t <= 1:
        return False
    threshold = (1 - 2 * _LN_2E / math.log(t)) * t
    return k < threshold - 1e-9 * max(1.0, abs(threshold))


def asymptotic_bound(G, k: int) -> BoundReport:
    """``(t-k) prod_{i<=k} (1 + 1/(n_i - 1))``; valid only for sufficiently large t.

    The threshold on t is not explicit, so the report is never certified.
    """
    G = _as_graph(G)
    t = G.t
    if not 1 <= k <= t:
        raise InvalidArgumentError(f"k must lie in 1..{t}, got {k}")
    value = Fraction(t - k)
    for n in G.sizes[:k]:
        value *= Fraction(n, n - 1)
    ok = asymptotic_applicable(t, k) and (t < 2 or G.sizes[1] >= 3)
    note = "requires k < (1 - 2/log_2e(t)) t, n_2 >= 3 and t sufficiently large"
    return BoundReport("asymptotic", "lower", value if ok else None, ok, False, note)


def naive_lower(G) -> BoundReport:
    """Counting bound ``ceil(|V| / (1 + degree))``."""
    G = _as_graph(G)
    closed = 1 + G.min_degree
    value = -(-G.vertex_count // closed)
    return BoundReport("naive", "lower", value, True, True, "regular graph counting")


def naive_total_lower(G) -> int:
    """``ceil(|V| / degree)``: each member of a total dominating set covers ``degree`` vertices."""
    G = _as_graph(G)
    return -(-G.vertex_count // G.min_degree)


def _ceil_up(x: float) -> int:
    return math.ceil(x * (1 + _UP_SLACK))


def alon_spencer_upper(G) -> BoundReport:
    """``|V| (1 + ln(1 + delta)) / (1 + delta)``, rounded up."""
    G = _as_graph(G)
    d = G.min_degree
    value = _ceil_up(G.vertex_count * (1 + math.log1p(d)) / (1 + d))
    return BoundReport("alon_spencer", "upper", value, True, True, "minimum degree argument")


def product_upper(G) -> BoundReport:
    """``(1 + sum ln n_i) prod (1 + 1/(n_i - 1))``, rounded up."""
    G = _as_graph(G)
    log_sum = 1 + sum(math.log(n) for n in G.sizes)
    ratio = math.prod(n / (n - 1) for n in G.sizes)
    value = _ceil_up(log_sum * ratio)
    return BoundReport("product_upper", "upper", value, True, True, "relaxation of the minimum degree bound")


@dataclass(frozen=True)
class BestBounds:
    lower: int
    upper: int
    reports: tuple
    lower_source: str


def all_reports(G, k: int | None = None) -> list[BoundReport]:
    G = _as_graph(G)
    reports = [mekis_bound(G), di_bound(G), naive_lower(G), alon_spencer_upper(G), product_upper(G)]
    if k is not None:
        reports.append(asymptotic_bound(G, k))
    return reports


def best_bounds(G, k: int | None = None) -> BestBounds:
    """Tightest certified interval; asymptotic bounds are reported but not used."""
    reports = all_reports(G, k)
    lows = [r for r in reports if r.kind == "lower" and r.applicable and r.certified]
    ups = [r for r in reports if r.kind == "upper" and r.applicable and r.certified]
    best_low = max(lows, key=lambda r: r.value)
    best_up = min(ups, key=lambda r: r.value)
    return BestBounds(int(best_low.value), int(best_up.value), tuple(reports), best_low.name)

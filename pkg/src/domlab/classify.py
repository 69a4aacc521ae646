"""Decide whether gamma(prod K_{n_i}) equals t+1, t+2 or is at least t+3.

Rule names in :data:`RULES` are part of the output format and stay stable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotApplicableError
from .products import ProductGraph

RULES = {
    "single-factor": "t = 1: K_n is dominated by any vertex",
    "mekis-t2-n1=2": "t = 2, n_1 = 2: gamma = 2",
    "mekis-t2-n1>=3": "t = 2, n_1 >= 3: gamma = 3",
    "mekis-t3": "t = 3: gamma = 4",
    "all-k2": "every factor is K_2: the graph is a perfect matching on 2^t vertices",
    "k2-reduction": "gamma(K_2^s x H) = 2^(s-1) gamma(K_2 x H)",
    "t+1": "t >= 4, n_2 >= 3, n_1 >= t+1: gamma = t+1",
    "t+2-case1": "n_1 = t and n_3 >= t+1",
    "t+2-case2": "(t+1)/2 < n_1 <= t-1 and n_2 > t+1",
    "t+2-case3": "n_1 = n_2 = n_3 = t and n_4 >= t+2",
    "at-least-t+3": "t >= 4, n_2 >= 3 and no t+1 / t+2 rule applies",
}


@dataclass(frozen=True)
class GammaClass:
    """Verdict on gamma for one instance.

    ``verdict`` is one of ``exact``, ``at_least``, ``small_t`` or
    ``reduced_k2``. For ``reduced_k2`` the instance equals
    ``multiplier * gamma(inner)``; ``value`` then carries the consequence of
    classifying ``inner`` (exact when ``inner_class`` is exact, otherwise a
    lower bound as flagged by ``value_is_exact``).
    """

    verdict: str
    value: int
    matched_rules: tuple
    multiplier: int = 1
    inner: ProductGraph | None = None
    inner_class: "GammaClass | None" = None

    @property
    def value_is_exact(self) -> bool:
        if self.verdict == "reduced_k2":
            return self.inner_class.value_is_exact
        return self.verdict in ("exact", "small_t")

    @property
    def matched_rule(self) -> str:
        return ", ".join(self.matched_rules)

    def as_row(self) -> dict:
        row = {
            "verdict": self.verdict,
            "value": self.value,
            "value_is_exact": self.value_is_exact,
            "matched_rules": list(self.matched_rules),
        }
        if self.verdict == "reduced_k2":
            row["multiplier"] = self.multiplier
            row["inner"] = list(self.inner.sizes)
            row["inner_class"] = self.inner_class.as_row()
        return row


def _as_graph(G) -> ProductGraph:
    return G if isinstance(G, ProductGraph) else ProductGraph(tuple(G))


def k2_reduce(G) -> tuple[int, ProductGraph]:
    """Split off all but one K_2 factor: ``gamma(G) = multiplier * gamma(inner)``."""
    G = _as_graph(G)
    s = G.sizes.count(2)
    if s == 0:
        raise NotApplicableError(f"{G} has no K_2 factor")
    if s == G.t:
        raise NotApplicableError(
            f"{G} consists of K_2 factors only; use the exact solver (gamma = 2^(t-1))"
        )
    rest = tuple(n for n in G.sizes if n != 2)
    return 2 ** (s - 1), ProductGraph((2,) + rest)


def t_plus_two_rules(G: ProductGraph) -> list[str]:
    """All t+2 rules whose hypotheses hold (assumes t >= 4 and n_2 >= 3)."""
    t, n = G.t, G.sizes
    matched = []
    if n[0] == t and n[2] >= t + 1:
        matched.append("t+2-case1")
    if 2 * n[0] > t + 1 and n[0] <= t - 1 and n[1] > t + 1:
        matched.append("t+2-case2")
    if n[0] == n[1] == n[2] == t and n[3] >= t + 2:
        matched.append("t+2-case3")
    return matched


def classify_gamma(G) -> GammaClass:
    G = _as_graph(G)
    t, n = G.t, G.sizes
    if t == 1:
        return GammaClass("small_t", 1, ("single-factor",))
    if t == 2:
        if n[0] == 2:
            return GammaClass("small_t", 2, ("mekis-t2-n1=2",))
        return GammaClass("small_t", 3, ("mekis-t2-n1>=3",))
    if t == 3:
        return GammaClass("small_t", 4, ("mekis-t3",))
    if n[-1] == 2:
        return GammaClass("exact", 2 ** (t - 1), ("all-k2",))
    if n[1] == 2:
        mult, inner = k2_reduce(G)
        inner_class = classify_gamma(inner)
        return GammaClass(
            "reduced_k2", mult * inner_class.value, ("k2-reduction",), mult, inner, inner_class
        )
    if n[0] >= t + 1:
        return GammaClass("exact", t + 1, ("t+1",))
    rules = t_plus_two_rules(G)
    if rules:
        return GammaClass("exact", t + 2, tuple(rules))
    return GammaClass("at_least", t + 3, ("at-least-t+3",))


@dataclass(frozen=True)
class ReductionReport:
    applicable: bool
    branch: str
    verdict: GammaClass | None
    note: str


def check_reduction_hypotheses(G) -> ReductionReport:
    """Which classification branch covers the instance.

    ``partial-class`` covers ``n_3 >= t+1``; otherwise a t+2 value forces
    ``n_1 = n_2 = n_3 = t`` and the instance falls to the ``final-case``
    branch.
    """
    G = _as_graph(G)
    t, n = G.t, G.sizes
    if t < 4 or n[1] < 3:
        return ReductionReport(False, "none", None, "needs t >= 4 and n_2 >= 3")
    verdict = classify_gamma(G)
    if n[2] >= t + 1:
        return ReductionReport(True, "partial-class", verdict, f"n_3 = {n[2]} >= t+1 = {t + 1}")
    if n[0] == n[1] == n[2] == t:
        note = f"n_1 = n_2 = n_3 = t = {t}; t+2 iff n_4 >= t+2"
    else:
        note = f"n_3 = {n[2]} <= t but not n_1 = n_2 = n_3 = t, so gamma != t+2"
    return ReductionReport(True, "final-case", verdict, note)

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domlab import (
    Certificate,
    ProductGraph,
    SquarefreeModulus,
    brute_force_value,
    fibers,
    gamma_exact,
    gamma_t_exact,
    is_dominating,
    is_total_dominating,
    verify_certificate,
)
from domlab.errors import CapacityError, InvalidArgumentError, SchemaError, SolverTimeout
from domlab.exact import (
    check_certificate,
    fiber_profile,
    find_set,
    undominated_dense,
    undominated_residue,
    undominated_vertex,
)
from domlab.repro import small_instances

SMALL = small_instances()


def naive_dominated(G, D, total):
    """Every vertex checked against every member of D by the adjacency rule."""
    for x in itertools.product(*(range(n) for n in G.sizes)):
        ok = any(all(a != b for a, b in zip(x, d)) or (not total and x == tuple(d)) for d in D)
        if not ok:
            return False
    return True


# -- verifiers ---------------------------------------------------------------


def test_is_dominating_examples():
    G = ProductGraph((3, 3))
    assert is_dominating(G, [(0, 0), (1, 1), (2, 2)])
    assert is_dominating(G, list(G.vertices()))
    assert not is_dominating(G, [(0, 0)])
    assert undominated_vertex(G, [(0, 0)]) is not None


def test_is_total_dominating_examples():
    assert is_total_dominating(ProductGraph((2, 3)), [(0, 0), (1, 1), (0, 2), (1, 0)])
    assert not is_total_dominating(ProductGraph((3, 3)), [(0, 0)])
    # K2 x K2 is two disjoint edges {00,11} and {01,10}; one edge is not enough
    assert not is_total_dominating(ProductGraph((2, 2)), [(0, 0), (1, 1)])
    assert is_total_dominating(ProductGraph((2, 2)), list(ProductGraph((2, 2)).vertices()))


def test_invalid_vertex_rejected():
    with pytest.raises(InvalidArgumentError):
        is_dominating(ProductGraph((3, 3)), [(0, 3)])


@st.composite
def graph_and_set(draw):
    sizes = draw(st.lists(st.integers(2, 5), min_size=1, max_size=4))
    G = ProductGraph(tuple(sizes))
    idx = draw(st.lists(st.integers(0, G.vertex_count - 1), min_size=1, max_size=8))
    return G, [G.vertex(i) for i in idx]


@given(graph_and_set(), st.booleans())
@settings(max_examples=300)
def test_structural_verifier_matches_naive(gd, total):
    G, D = gd
    bad = undominated_vertex(G, D, total)
    assert (bad is None) == naive_dominated(G, D, total)
    assert (undominated_dense(G, D, total) is None) == (bad is None)
    if bad is not None:
        # the reported vertex really escapes every member of D
        assert not naive_dominated(G, D, total) and not any(
            all(a != b for a, b in zip(bad, d)) or (not total and bad == tuple(d)) for d in D
        )


def test_structural_verifier_scales():
    # 8 * 8 * 8 * 10^5 = 5.12e7 vertices, never materialized
    from domlab.constructions import tplus2_vertices

    G = ProductGraph((8, 8, 8) + (10,) * 5)
    D = tplus2_vertices(8)
    assert is_dominating(G, D)
    assert not is_dominating(G, D[:-1])


@given(st.lists(st.sampled_from([2, 3, 5, 7, 11]), min_size=1, max_size=3, unique=True), st.data())
@settings(max_examples=60)
def test_residue_verifier_paths_agree(primes, data):
    m = SquarefreeModulus(tuple(primes))
    D = data.draw(st.lists(st.integers(0, m.n - 1), min_size=1, max_size=6))
    for total in (True, False):
        direct = undominated_residue(m, D, total)
        tuple_route = undominated_residue(m, D, total, direct_cap=0)
        assert (direct is None) == (tuple_route is None)


def test_certificate_examples():
    from domlab.repro import lift_example

    gc = lift_example()
    assert verify_certificate(gc.total_dominating)
    G = ProductGraph((3, 3))
    assert not verify_certificate(Certificate("dominating", G, ((0, 0), (1, 1), (2, 2)), claimed_value=2))
    run = Certificate("noncoprime_run", SquarefreeModulus((2, 3)), run=(2, 3))
    assert verify_certificate(run)
    assert not verify_certificate(Certificate("noncoprime_run", SquarefreeModulus((2, 3)), run=(1, 3)))
    report = check_certificate(Certificate("dominating", G, ((0, 0),)))
    assert not report.ok and report.counterexample is not None


def test_malformed_certificates():
    G = ProductGraph((3, 3))
    with pytest.raises(SchemaError):
        Certificate("dominating", G, ())
    with pytest.raises(SchemaError):
        Certificate("noncoprime_run", SquarefreeModulus((2, 3)))
    with pytest.raises(SchemaError):
        Certificate("weird", G, ((0, 0),))
    with pytest.raises(SchemaError):
        Certificate("dominating", G, ((0, 5),))


# -- solver -------------------------------------------------------------------


@pytest.mark.parametrize(
    "sizes,value", [((2, 5), 2), ((3, 4), 3), ((3, 3, 3), 4), ((5, 5, 5, 5), 5)]
)
def test_gamma_examples(sizes, value):
    res = gamma_exact(sizes)
    assert res.value == value
    assert res.proven_optimal
    assert is_dominating(res.witness.instance, res.witness.vertices)


@pytest.mark.parametrize("sizes,value", [((2, 3), 4), ((3, 3), 3), ((2, 2), 4)])
def test_gamma_t_examples(sizes, value):
    res = gamma_t_exact(sizes)
    assert res.value == value
    assert is_total_dominating(res.witness.instance, res.witness.vertices)


def test_oracle_examples():
    assert brute_force_value((2, 3), "total", 4) == 4
    assert brute_force_value((3, 3), "dominating", 3) == 3
    assert brute_force_value((2, 2), "dominating", 1) is None
    with pytest.raises(CapacityError):
        brute_force_value((5, 5, 5))
    with pytest.raises(InvalidArgumentError):
        brute_force_value((2, 2), "roman")


def test_oracle_budget():
    with pytest.raises(CapacityError):
        brute_force_value((2, 3, 3, 3), "total", budget=10**6)


@pytest.mark.parametrize("sizes", [s for s in SMALL if 1 < len(s) and 2 ** len(s) <= 16 and s[-1] <= 4])
def test_pruned_and_unpruned_agree(sizes):
    G = ProductGraph(sizes)
    for solve in (gamma_exact, gamma_t_exact):
        a = solve(G, seed_bounds=False).value
        b = solve(G, seed_bounds=False, symmetry=False).value
        assert a == b


@pytest.mark.parametrize("sizes", SMALL)
def test_witness_sound_and_gamma_below_gamma_t(sizes):
    G = ProductGraph(sizes)
    g = gamma_exact(G)
    gt = gamma_t_exact(G)
    assert g.value <= gt.value
    assert g.witness.size == g.value
    assert naive_dominated(G, g.witness.vertices, False)
    assert naive_dominated(G, gt.witness.vertices, True)


def test_refutation_means_no_smaller_set():
    G = ProductGraph((3, 3, 3))
    assert find_set(G, 3)[0] is None
    assert find_set(G, 3, symmetry=False)[0] is None
    assert find_set(G, 4)[0] is not None


def test_disconnected_instances():
    # K2^4 x K3 splits into 8 hexagons
    G = ProductGraph((2, 2, 2, 2, 3))
    assert gamma_exact(G, seed_bounds=False).value == 16
    assert gamma_t_exact(G, seed_bounds=False).value == 32


def test_timeout_reports_interval():
    with pytest.raises(SolverTimeout) as info:
        gamma_exact((4, 4, 4, 5), time_limit=0.2)
    exc = info.value
    assert exc.lower <= exc.upper
    assert is_dominating(exc.witness.instance, exc.witness.vertices)
    assert exc.witness.size == exc.upper


def test_threads_do_not_change_the_answer():
    G = ProductGraph((4, 4, 4, 6))
    one = gamma_exact(G, seed_bounds=False)
    many = gamma_exact(G, seed_bounds=False, threads=2)
    assert one.value == many.value == 6
    assert one.witness.vertices == many.witness.vertices


def test_capacity():
    with pytest.raises(CapacityError):
        gamma_exact((10, 10, 10, 10, 10))


def test_monotone_in_sizes_sample():
    rng = random.Random(3)
    for _ in range(25):
        big = rng.choice(small_instances(60, 2, 60))
        small = tuple(rng.randint(2, m) for m in big)
        assert gamma_t_exact(small).value >= gamma_t_exact(big).value


# -- fibers -------------------------------------------------------------------


def test_fiber_examples():
    G = ProductGraph((3, 3))
    fs = fibers(G, [(0, 0), (0, 1), (1, 2)], 1)
    assert [(f.value, f.members) for f in fs] == [(0, ((0, 0), (0, 1))), (1, ((1, 2),))]
    assert fibers(G, [], 1) == []
    assert [len(f.members) for f in fibers(G, [(0, 0)], 2)] == [1]
    with pytest.raises(InvalidArgumentError):
        fibers(G, [(0, 0)], 3)


@given(graph_and_set(), st.data())
def test_fibers_partition(gd, data):
    G, D = gd
    ell = data.draw(st.integers(1, G.t))
    fs = fibers(G, D, ell)
    members = [v for f in fs for v in f.members]
    assert sorted(members) == sorted(set(D))
    assert all(v[ell - 1] == f.value for f in fs for v in f.members)


@pytest.mark.parametrize("sizes", [(4, 4, 4, 6), (4, 6, 6, 6), (3, 6, 6, 6), (4, 4, 4, 7)])
def test_minimum_t_plus_2_sets_have_small_fibers(sizes):
    G = ProductGraph(sizes)
    res = gamma_exact(G, seed_bounds=False)
    assert res.value == G.t + 2
    assert fiber_profile(G, res.witness.vertices)["max_fiber"] <= 2

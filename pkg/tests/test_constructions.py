import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domlab import (
    Certificate,
    GapWitness,
    LiftRecipe,
    ProductGraph,
    SquarefreeModulus,
    certify_mj_membership,
    diagonal_tplus1,
    gamma_t_exact,
    is_dominating,
    is_total_dominating,
    lift_total_dominating,
    mekis_triple,
    prefix_total_dominating,
    tplus2_construction,
)
from domlab.constructions import MEKIS_TRIPLE, transport, tplus2_vertices
from domlab.errors import CertificateRejected, InvalidArgumentError, NotApplicableError
from domlab.jacobsthal import g_of
from domlab.repro import lift_example, mutate


def M(*ps):
    return SquarefreeModulus(tuple(ps))


def gcd_total(n, D):
    return all(any(gcd(x - d, n) == 1 for d in D) for x in range(n))


def test_prefix_examples():
    c = prefix_total_dominating(M(2, 3))
    assert c.vertices == (0, 1, 2, 3) and gcd_total(6, c.vertices)
    assert prefix_total_dominating(M(5)).vertices == (0, 1)
    c = prefix_total_dominating(M(2, 3, 5))
    assert c.vertices == tuple(range(6)) and gcd_total(30, c.vertices)


def test_mekis_triple():
    assert mekis_triple() == MEKIS_TRIPLE
    assert mekis_triple((3, 3, 3)) == MEKIS_TRIPLE
    assert is_dominating(ProductGraph((2, 3, 3)), MEKIS_TRIPLE)
    with pytest.raises(NotApplicableError):
        mekis_triple((3, 3))


def test_diagonal():
    c = diagonal_tplus1((5, 5, 5, 5))
    assert c.size == 5 and is_dominating(c.instance, c.vertices)
    assert diagonal_tplus1((4, 4, 4)).size == 4
    with pytest.raises(NotApplicableError):
        diagonal_tplus1((4, 4, 4, 4))


def test_tplus2():
    c = tplus2_construction((4, 4, 4, 6))
    assert c.size == 6 and is_dominating(c.instance, c.vertices)
    assert "total_dominating" in c.meta
    assert c.meta["total_dominating"] == is_total_dominating(c.instance, c.vertices)
    c = tplus2_construction((5, 5, 5, 7, 7))
    assert c.size == 7
    with pytest.raises(NotApplicableError):
        tplus2_construction((4, 4, 4, 5))


@pytest.mark.parametrize("t", range(4, 10))
def test_tplus2_shape(t):
    D = tplus2_vertices(t)
    assert len(set(D)) == t + 2
    assert max(max(v[3:], default=0) for v in D) <= t + 1
    assert max(max(v[:3]) for v in D) <= t - 1


def test_lift_858():
    gc = lift_example()
    n = gc.modulus.n
    assert n == 858
    assert gc.total_dominating.size == 10
    assert gc.run_witness.length == 9
    assert gc.certified_gap == 0 and gc.verified
    assert gcd_total(n, gc.total_dominating.vertices)
    w = gc.run_witness
    assert all(gcd(x, n) > 1 for x in range(w.start, w.start + w.length))
    assert g_of(gc.modulus).g_value >= w.length + 1
    # the prefix block and the lifted points are disjoint
    assert sorted(gc.total_dominating.vertices)[:6] == list(range(6))


def test_lift_k2():
    gc = lift_total_dominating(LiftRecipe(M(2, 3), 2, (17, 19, 23, 29)))
    assert gc.modulus.n == 6 * 17 * 19 * 23 * 29
    assert gc.total_dominating.size == 16
    assert gc.run_witness.length == 15
    assert gc.certified_gap >= 0


def test_lift_rejects_bad_recipes():
    with pytest.raises(InvalidArgumentError):
        lift_total_dominating(LiftRecipe(M(2, 3), 1, (7, 13)))
    with pytest.raises(InvalidArgumentError):
        lift_total_dominating(LiftRecipe(M(2, 3), 1, (11,)))
    with pytest.raises(InvalidArgumentError):
        lift_total_dominating(LiftRecipe(M(2, 3), 1, (11, 13), base_total_dominating=(0, 1)))
    with pytest.raises(InvalidArgumentError):
        lift_total_dominating(LiftRecipe(M(2, 3), 0, ()))


def test_lift_with_other_base():
    rs = (19, 23, 29, 31, 37, 41, 43, 47)
    gc = lift_total_dominating(LiftRecipe(M(3, 5), 1, rs))
    assert gc.run_witness.length == 15 + 3 - 1
    assert gc.certified_gap >= 0 and gc.verified
    with pytest.raises(InvalidArgumentError):
        lift_total_dominating(LiftRecipe(M(3, 5), 1, (17,) + rs[1:]))


def test_certify_examples():
    m = M(2, 3)
    D = Certificate("total_dominating", m, (0, 1, 2, 3))
    gc = certify_mj_membership(m, D, GapWitness(m, 2, 3))
    assert gc.certified_gap == 0
    big = Certificate("total_dominating", m, (0, 1, 2, 3, 4))
    with pytest.raises(CertificateRejected) as info:
        certify_mj_membership(m, big, GapWitness(m, 2, 3))
    assert info.value.which == "total_dominating"
    with pytest.raises(CertificateRejected) as info:
        certify_mj_membership(m, D, GapWitness(m, 1, 3))
    assert info.value.which == "run_witness"


def test_mutations_rejected():
    gc = lift_example()
    m, n = gc.modulus, gc.modulus.n
    rng = random.Random(11)
    invalid = 0
    for _ in range(50):
        op, D, start, length, claimed = mutate(gc, rng)
        valid = (
            gcd_total(n, D)
            and all(gcd(x, n) > 1 for x in range(start, start + length))
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
            assert not accepted, op
        else:
            assert accepted
    assert invalid > 40


sizes_st = st.lists(st.integers(2, 4), min_size=1, max_size=3)


@given(sizes_st, st.data())
@settings(max_examples=40)
def test_transport(sizes, data):
    small = ProductGraph(tuple(sizes))
    bigger = tuple(n + data.draw(st.integers(0, 3)) for n in small.sizes)
    w = gamma_t_exact(small).witness
    moved = transport(w, bigger)
    assert is_total_dominating(moved.instance, moved.vertices)


def test_transport_rejects_smaller_target():
    w = gamma_t_exact((3, 3)).witness
    with pytest.raises(InvalidArgumentError):
        transport(w, (2, 3))
    with pytest.raises(InvalidArgumentError):
        transport(w, (3, 3, 3))

from fractions import Fraction

import pytest

from graphcensus import census as C
from graphcensus import graphs as G
from graphcensus import oracle as O
from graphcensus.models import WeightSpec


def test_totals():
    assert C.mg_total(2, 1) == 4
    assert C.sg_total(4, 2) == 15
    assert C.mg_total(3, 0) == 1


def test_mg_distinguished_examples():
    assert C.mg_distinguished(2, 1, G.edge_multi()) == 2
    assert C.mg_distinguished(3, 3, G.cycle_multi(3)) == 48
    assert C.mg_distinguished(4, 4, []) == 0


def test_sg_distinguished_examples():
    assert C.sg_distinguished(3, 3, G.cycle_simple(3)) == 1
    assert C.sg_distinguished(4, 3, G.cycle_simple(3)) == 4
    assert C.sg_distinguished(4, 4, []) == 0


def test_family_validation():
    with pytest.raises(ValueError):
        C.mg_distinguished(3, 2, [G.edge_multi(), G.Multigraph(2, (2, 1))])


def test_weighted_total_examples():
    assert C.mg_weighted_total(2, 1, WeightSpec.finite([1, 1])) == 2
    for n, m in ((2, 1), (2, 2), (3, 2)):
        assert C.mg_weighted_total(n, m, WeightSpec.exponential()) == C.mg_total(n, m)
    assert C.mg_weighted_total(3, 2, WeightSpec.finite([0, 0, 1])) == 0


def test_weighted_distinguished_examples():
    one_x = WeightSpec.finite([1, 1])
    assert C.mg_distinguished_weighted(2, 1, one_x, G.edge_multi()) == 2
    # a vertex of degree above deg(Delta) kills the term
    assert C.mg_distinguished_weighted(3, 3, one_x, G.path_multi(3)) == 0
    cubic = WeightSpec.finite([1, 1, 1, 1])
    got = C.mg_distinguished_weighted(3, 2, cubic, G.path_multi(3))
    brute = O.oracle_distribution(3, 2, G.path_multi(3), delta=cubic).distinguished_total
    assert got == brute


def test_expected_count_examples():
    assert C.expected_count(2, 1, G.edge_multi()) == Fraction(1, 2)
    assert C.expected_count(2, 1, G.loop()) == Fraction(1, 2)
    assert C.expected_count(3, 3, G.cycle_simple(3), kind="simple") == 1
    with pytest.raises(ValueError):
        C.expected_count(3, 3, G.cycle_simple(3), delta=WeightSpec.exponential(), kind="simple")


def test_count_with_exactly_t_examples():
    assert C.count_with_exactly_t(2, 1, G.edge_multi(), 1) == 2
    assert C.count_with_exactly_t(2, 1, G.edge_multi(), 0) == 2
    total = sum(
        C.count_with_exactly_t(2, 1, G.edge_multi(), t) for t in range(0, 3)
    )
    assert total == 4


def test_f_free_examples():
    assert C.f_free_count(2, 1, G.loop()) == 2
    assert C.f_free_count(3, 3, G.cycle_simple(3), kind="simple") == 0
    # hosts on (2,2) without a parallel pair
    by_hand = sum(
        1
        for h in O.enumerate_multigraphs(2, 2)
        if all(k < 2 or u == v for (u, v), k in h.pair_multiplicities().items())
    )
    assert C.f_free_count(2, 2, G.double_edge()) == by_hand


def test_asymptotic_sanity_trend():
    # relative error of the distinguished-total asymptotics shrinks with n
    errors = []
    for n in (6, 8, 10, 12):
        exact = C.mg_distinguished(n, n, G.cycle_multi(3))
        predicted = Fraction(n ** (2 * n)) * Fraction(4, 3)  # n^2m * F_cls(n, 2/n)
        errors.append(abs(Fraction(exact, 1) / predicted - 1))
    assert errors[0] > errors[1] > errors[2] > errors[3]


def test_distinguished_weighted_uniform_reduction():
    # exponential weights reproduce the uniform distinguished totals
    for n, m in ((2, 1), (2, 2), (3, 2)):
        for fam in (G.loop(), G.edge_multi(), G.path_multi(3)):
            assert C.mg_distinguished_weighted(n, m, WeightSpec.exponential(), fam) == C.mg_distinguished(n, m, fam)

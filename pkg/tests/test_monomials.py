import pytest
from hypothesis import given, settings, strategies as st

from oracles import exponent_vectors, partition_count, series_product
from wpkstab.core import HypersurfaceFamily, WeightSystem
from wpkstab.monomials import (
    PointWitness,
    coordinate_point_avoidable,
    count_monomials,
    enumerate_monomials,
    graded_dimensions,
    h0_hypersurface,
    hilbert_function,
    qs_at_Pr_witnesses,
)

fam = HypersurfaceFamily.of


def test_enumerate_example():
    got = enumerate_monomials(WeightSystem((1, 1, 2)), 2)
    assert got == [(2, 0, 0), (1, 1, 0), (0, 2, 0), (0, 0, 1)]


def test_enumerate_no_solution():
    assert enumerate_monomials((2, 3, 7), 1) == []


def test_enumerate_negative_degree():
    assert enumerate_monomials((1, 2, 3), -1) == []


@pytest.mark.parametrize("ws", [(1, 1, 2), (2, 3, 5), (4, 6, 9, 10)])
def test_enumerate_degree_zero(ws):
    assert enumerate_monomials(ws, 0) == [(0,) * len(ws)]


@given(st.lists(st.integers(1, 6), min_size=3, max_size=5), st.integers(0, 14))
def test_enumerate_matches_oracle(ws, k):
    ws = sorted(ws)
    got = enumerate_monomials(WeightSystem(ws), k)
    assert sorted(got) == sorted(exponent_vectors(ws, k))
    assert got == sorted(got, reverse=True)
    assert all(sum(e * a for e, a in zip(v, ws)) == k for v in got)


@given(st.lists(st.integers(1, 6), min_size=3, max_size=5), st.integers(0, 14), st.randoms())
def test_enumerate_size_permutation_invariant(ws, k, rnd):
    sh = list(ws)
    rnd.shuffle(sh)
    assert len(enumerate_monomials(ws, k)) == len(enumerate_monomials(sh, k))


@pytest.mark.parametrize(
    "ws, d, k, expected",
    [
        ((1, 1, 1, 2, 2), 6, 1, 3),
        # |S_6| = 80 by explicit enumeration, minus |S_0| = 1
        ((1, 1, 1, 2, 2), 6, 6, 79),
        ((2, 3, 5), 7, 0, 1),
        ((1, 1, 1, 2, 2), 6, -2, 0),
    ],
)
def test_h0_examples(ws, d, k, expected):
    assert h0_hypersurface(fam(ws, d), k) == expected


def test_count_monomials_negative():
    assert count_monomials((1, 2, 3), -4) == 0
    assert graded_dimensions((1, 2, 3), -1) == []


@settings(max_examples=200)
@given(st.lists(st.integers(1, 10), min_size=3, max_size=6), st.integers(1, 30))
def test_hilbert_function_against_oracles(ws, d):
    f = fam(ws, d)
    upto = 25
    hf = hilbert_function(f, upto)
    series = series_product(sorted(ws), upto)
    for k in range(upto + 1):
        assert hf[k] == series[k] - (series[k - d] if k >= d else 0)
    for k in (0, 1, 7, upto):
        assert count_monomials(f.ambient, k) == partition_count(sorted(ws), k)


@pytest.mark.parametrize(
    "ws, d, r, expected",
    [((1, 1, 2, 3, 5), 12, 3, True), ((1, 1, 1, 1, 2), 5, 4, False), ((1, 1, 1, 1, 1), 4, 2, True)],
)
def test_coordinate_point_avoidable(ws, d, r, expected):
    f = fam(ws, d)
    assert coordinate_point_avoidable(f, r) is expected


def test_coordinate_point_all_indices_of_units():
    f = fam((1, 1, 1, 1, 1), 4)
    assert all(coordinate_point_avoidable(f, r) for r in range(5))


@pytest.mark.parametrize("r", [-1, 5, 9])
def test_index_errors(r):
    f = fam((1, 1, 1, 1, 2), 5)
    with pytest.raises(IndexError):
        coordinate_point_avoidable(f, r)
    with pytest.raises(IndexError):
        qs_at_Pr_witnesses(f, r)


def test_witnesses_x5():
    got = qs_at_Pr_witnesses(fam((1, 1, 1, 1, 2), 5), 4)
    assert got == [PointWitness(j, 2) for j in range(4)]


def test_witnesses_pure_power_only():
    assert qs_at_Pr_witnesses(fam((1, 1, 2), 2), 2) == [PointWitness(None, 1)]


def test_witnesses_none():
    assert qs_at_Pr_witnesses(fam((2, 3, 5), 10), 1) == []


@given(st.lists(st.integers(1, 12), min_size=3, max_size=6), st.integers(1, 60), st.data())
def test_witnesses_brute_force(ws, d, data):
    f = fam(ws, d)
    r = data.draw(st.integers(0, len(ws) - 1))
    ar = f.weights[r]
    expected = []
    if d % ar == 0:
        expected.append((None, d // ar))
    for j, aj in enumerate(f.weights):
        for c in range(1, d + 1):
            if j != r and aj + c * ar == d:
                expected.append((j, c))
    assert [tuple(w) for w in qs_at_Pr_witnesses(f, r)] == expected
    assert coordinate_point_avoidable(f, r) == (d % ar == 0)

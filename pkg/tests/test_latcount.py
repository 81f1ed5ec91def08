from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from demerit.latcount import (
    brute_distinct_count,
    brute_weak_count,
    distinct_count,
    ehrhart_shape,
    kernel_lattice,
    merge_columns,
    mobius_partition,
    polytope_vertices,
    set_partitions,
    sols_quasipoly,
    weak_count,
    weak_quasipoly,
)
from demerit.partitions import Partition, coefficient_matrix
from demerit.seqstat import fixture_quasipolynomial
from demerit.wreath import GroupElement, act_partition
from goldens import P3_CLASSES

A1 = ((2, -1, -1), (2, -1, -1))
C1 = ((1, 1, -1, -1), (1, 1, -1, -1))
HALF = Fraction(1, 2)


@st.composite
def zero_sum_matrices(draw, max_rows=3, max_cols=5):
    t = draw(st.integers(2, max_cols))
    rows = []
    for _ in range(draw(st.integers(1, max_rows))):
        head = draw(st.lists(st.integers(-2, 2), min_size=t - 1, max_size=t - 1))
        rows.append(tuple(head) + (-sum(head),))
    return tuple(rows)


def test_weak_count_examples():
    assert weak_count([[1, 1, -1, -1]], 4) == 44
    assert weak_count((), 2, ncols=3) == 8
    # A + B = 2C with repeats allowed has floor((n^2 + 1) / 2) solutions
    assert weak_count([[2, -1, -1]], 4) == 8 == (4 * 4 + 1) // 2
    assert brute_weak_count([[2, -1, -1]], 4) == 8


def test_set_partitions_and_mobius():
    assert [sum(1 for _ in set_partitions(n)) for n in range(7)] == [1, 1, 2, 5, 15, 52, 203]
    assert mobius_partition([[0], [1], [2]]) == 1
    assert mobius_partition([[0, 1], [2], [3]]) == -1
    assert mobius_partition([[0, 1, 2, 3]]) == -6
    assert merge_columns(((1, 2, 3),), [[0, 2], [1]]) == ((4, 2),)


def test_distinct_count_examples():
    assert distinct_count(A1, 6) == 12
    assert distinct_count(C1, 4) == 8
    assert distinct_count(C1, 3) == 0
    assert distinct_count(((1, -1, 1, -1, 1, -1),), 5) == 0


def test_kernel_lattice():
    m = ((2, -1, -1, 0), (-1, 2, 0, -1), (1, 1, -1, -1))
    k, w = kernel_lattice(m)
    t, d = len(k), len(k[0])
    assert t == 4 and d == 2
    for row in m:
        for j in range(d):
            assert sum(row[i] * k[i][j] for i in range(t)) == 0
    for a in range(d):
        for b in range(d):
            assert sum(w[a][i] * k[i][b] for i in range(t)) == (a == b)


def test_vertices_and_shapes():
    verts = polytope_vertices([[1, 1, -1, -1]])
    for v in [(0, 0, 0, 0), (1, 1, 1, 1), (1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1)]:
        assert tuple(map(Fraction, v)) in verts
    assert ehrhart_shape([[1, 1, -1, -1]]) == (3, 1)
    assert (HALF, Fraction(1), Fraction(0)) in polytope_vertices([[2, -1, -1]])
    assert 2 % ehrhart_shape([[2, -1, -1]])[1] == 0
    assert polytope_vertices((), ncols=1) == {(Fraction(0),), (Fraction(1),)}


def test_sols_quasipolynomials():
    assert sols_quasipoly(A1) == fixture_quasipolynomial("solomon_c1")
    assert sols_quasipoly(C1) == fixture_quasipolynomial("solomon_c2")
    for index in (4, 7):  # the period-4 cubic and the period-6 quartic
        rep, _, expected = P3_CLASSES[index]
        assert sols_quasipoly(coefficient_matrix(Partition.parse(3, rep))) == expected


def test_weak_quasipoly_matches_closed_form():
    q = weak_quasipoly([[1, 1, -1, -1]])
    assert q == fixture_quasipolynomial("wowzers_i")
    assert weak_quasipoly([[2, -1, -1]]) == fixture_quasipolynomial("persephone") + weak_quasipoly(
        [[0]], ncols=1
    )


@settings(max_examples=80, deadline=None)
@given(zero_sum_matrices(), st.integers(0, 6))
def test_weak_count_matches_brute_force(m, n):
    assert weak_count(m, n) == brute_weak_count(m, n) == oracles.weak_solutions(m, n)


@settings(max_examples=60, deadline=None)
@given(zero_sum_matrices(max_cols=5), st.integers(0, 8))
def test_distinct_count_matches_brute_force(m, n):
    assert distinct_count(m, n) == brute_distinct_count(m, n) == oracles.distinct_solutions(m, n)


@settings(max_examples=40, deadline=None)
@given(zero_sum_matrices(max_rows=2, max_cols=4))
def test_weak_count_monotone(m):
    counts = [weak_count(m, n) for n in range(12)]
    assert counts == sorted(counts)


@settings(max_examples=40, deadline=None)
@given(zero_sum_matrices(max_rows=2, max_cols=4))
def test_quasipoly_interpolates_counts(m):
    q = sols_quasipoly(m)
    for n in range(3 * q.period + max(q.degree, 0) + 1):
        assert q(n) == distinct_count(m, n)


@st.composite
def group_elements(draw, p):
    eps = tuple(draw(st.permutations(range(p))))
    sigma = tuple(draw(st.lists(st.integers(0, 1), min_size=p, max_size=p)))
    flips = tuple(draw(st.tuples(st.integers(0, 1), st.integers(0, 1))) for _ in range(p))
    return GroupElement(eps, sigma, flips)


@settings(max_examples=30, deadline=None)
@given(group_elements(3), st.integers(0, 7))
def test_sols_constant_on_orbits(g, index):
    rep = Partition.parse(3, P3_CLASSES[index][0])
    image = act_partition(g, rep)
    assert sols_quasipoly(coefficient_matrix(image)) == sols_quasipoly(coefficient_matrix(rep))

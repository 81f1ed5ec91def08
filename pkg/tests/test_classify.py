from __future__ import annotations

from collections import Counter

import pytest

from demerit.classify import (
    bruteforce_con,
    canonical_absolute,
    canonical_monochrome,
    color,
    enumerate_absolute,
    enumerate_signings,
    isom_representatives,
    satisfiable_signings,
)
from demerit.errors import ResourceLimitError
from demerit.partitions import Symbol, absolute, display_matrix, is_gelo, is_partition_satisfiable, monochrome
from demerit.wreath import canonical_form, orbit

A = ((2, 1, 1), (2, 1, 1))
C = ((1, 1, 1, 1), (1, 1, 1, 1))
D = ((2, 1, 1, 0), (1, 2, 0, 1), (1, 1, 1, 1))


def test_absolute_counts():
    assert enumerate_absolute(1) == []
    two = enumerate_absolute(2)
    assert len(two) == 3
    assert {canonical_absolute(m) for m in two} == {
        canonical_absolute(A),
        canonical_absolute(((2, 0, 1, 1), (0, 2, 1, 1))),
        canonical_absolute(C),
    }
    assert len(enumerate_absolute(3)) == 13
    assert len(enumerate_absolute(4)) == 185


def test_absolute_matrices_shape():
    for p in (2, 3, 4):
        for m in enumerate_absolute(p):
            assert len(m) == p
            assert 3 <= len(m[0]) <= 2 * p
            for row in m:
                assert sorted(x for x in row if x) in ([1, 1, 2], [1, 1, 1, 1])
            for col in zip(*m):
                assert sum(col) > 0 and sum(col) % 2 == 0


def test_signings_examples():
    assert enumerate_signings(A) == [canonical_monochrome(((2, -1, -1), (2, -1, -1)))]
    assert set(enumerate_signings(C)) == {
        canonical_monochrome(((1, 1, -1, -1), (1, 1, -1, -1))),
        canonical_monochrome(((1, 1, -1, -1), (1, -1, 1, -1))),
    }
    d_signings = enumerate_signings(D)
    assert len(d_signings) == 3
    assert canonical_monochrome(((2, -1, -1, 0), (-1, 2, 0, -1), (1, 1, -1, -1))) in d_signings


def test_signings_have_zero_row_sums():
    for p in (2, 3):
        for a in enumerate_absolute(p):
            for m in enumerate_signings(a):
                assert all(sum(r) == 0 for r in m)
                assert canonical_absolute(absolute(m)) == a


def test_canonical_monochrome_invariance():
    m = ((2, -1, -1, 0), (-1, 2, 0, -1), (1, 1, -1, -1))
    negated = ((-2, 1, 1, 0), (1, 1, -1, -1), (-1, 2, 0, -1))
    shuffled = tuple(tuple(r[j] for j in (3, 1, 0, 2)) for r in negated)
    assert canonical_monochrome(m) == canonical_monochrome(shuffled)


def test_color():
    colored = color(((2, -1, -1), (1, 1, -1, -1)[:3]))
    assert colored[0] == (Symbol.TWO, Symbol.NEG_ONE_R, Symbol.NEG_ONE_B)
    assert colored[1] == (Symbol.ONE_R, Symbol.ONE_B, Symbol.NEG_ONE_R)
    with pytest.raises(ValueError):
        color(((3, -3),))


def test_satisfiable_signings_p2():
    assert len(satisfiable_signings(2)) == 2


def test_p2_classes():
    classes = isom_representatives(2)
    assert sorted(c.orbit_size for c in classes) == [8, 8]
    assert isom_representatives(1) == []


def test_p3_classes(classes3):
    assert len(classes3) == 8
    assert Counter(c.orbit_size for c in classes3) == Counter([384, 96, 192, 768, 64, 192, 64, 256])


def test_p4_class_count(classes4):
    assert len(classes4) == 97
    assert sum(c.orbit_size for c in classes4) == 1209664


@pytest.mark.parametrize("p", [2, 3, 4])
def test_representatives_are_contributory_and_distinct(p, classes3, classes4):
    classes = {2: isom_representatives(2), 3: classes3, 4: classes4}[p]
    for c in classes:
        assert is_gelo(c.representative)
        assert is_partition_satisfiable(c.representative)
    forms = [canonical_form(c.representative) for c in classes]
    assert len(set(forms)) == len(forms)


def test_p4_representatives_pairwise_non_isomorphic(classes4):
    # every monochrome class carries exactly one colouring up to isomorphism
    keys = {canonical_monochrome(monochrome(display_matrix(c.representative))) for c in classes4}
    assert len(keys) == 97


def test_orbits_cover_con(con2, con3):
    for p, con in ((2, con2), (3, con3)):
        classes = isom_representatives(p)
        covered = set()
        for c in classes:
            covered |= orbit(c.representative)
        assert covered == set(con)
        assert sum(c.orbit_size for c in classes) == len(con)
    assert len(con2) == 16 and len(con3) == 2016


def test_bruteforce_guards():
    assert bruteforce_con(1) == set()
    with pytest.raises(ResourceLimitError):
        bruteforce_con(4)
    with pytest.raises(ResourceLimitError):
        enumerate_absolute(5)
    with pytest.raises(ResourceLimitError):
        isom_representatives(6, allow_long_running=True)

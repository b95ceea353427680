from collections import Counter

import pytest

from harada.classtypes import (
    ClassType,
    class_count,
    enumerate_alpha_fibers,
    enumerate_types,
    explicit_functions,
    fiber_weighted_sum,
    fiber_weighted_sum_averaged,
    m1_alpha,
    mn_alpha,
    special_subsets,
)
from harada.partitions import enumerate_partitions, n_stat
from harada.polycount import ORDINARY, UNITARY, PolyCountTable


def gl(q):
    return PolyCountTable(q, ORDINARY)


def gu(q):
    return PolyCountTable(q, UNITARY)


def test_gl2_over_f2():
    types = list(enumerate_types(2, gl(2)))
    assert len(types) == 3
    assert sum(m for _, m in types) == 3


def test_gu2_over_f2():
    types = dict(enumerate_types(2, gu(2)))
    assert types == {
        ClassType(((1, ((2,),)),)): 3,
        ClassType(((1, ((1, 1),)),)): 3,
        ClassType(((1, ((1,), (1,))),)): 3,
    }


def test_rank_one():
    for q in (2, 3, 9):
        for table in (gl(q), gu(q)):
            types = list(enumerate_types(1, table))
            assert types == [(ClassType(((1, ((1,),)),)), table[1])]


def test_no_two_linear_polys_at_q2():
    for n in range(1, 7):
        for ctype, _ in enumerate_types(n, gl(2)):
            for d, mus in ctype.blocks:
                if d == 1:
                    assert len(mus) <= 1


def _explicit_types(n, table):
    counts = {d: table[d] for d in range(1, n + 1)}
    tally = Counter()
    for lam in explicit_functions(n, counts):
        tally[ClassType.from_items((d, mu) for d, _, mu in lam)] += 1
    return tally


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("make", [gl, gu])
def test_types_match_explicit_functions(n, q, make):
    table = make(q)
    assert dict(enumerate_types(n, table)) == dict(_explicit_types(n, table))


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("q", [2, 3, 4])
@pytest.mark.parametrize("make", [gl, gu])
def test_fiber_enumeration_agrees(n, q, make):
    table = make(q)
    types = list(enumerate_types(n, table))
    via_fibers = sum(f.choices * f.fiber_size for f in enumerate_alpha_fibers(n, table))
    assert via_fibers == sum(m for _, m in types) == class_count(n, table)
    for ctype, _ in types:
        assert ctype.weight == n
        assert all(mu for _, mu in ctype.items())


def test_known_class_counts():
    # k(GL_2(q)) = q^2 - 1, k(GL_3(q)) = q^3 - q
    for q in (2, 3, 4, 5, 7, 9):
        assert class_count(2, gl(q)) == q * q - 1
        assert class_count(3, gl(q)) == q**3 - q


def test_special_fiber_sizes():
    fibers = {f.alpha: f for f in enumerate_alpha_fibers(4, gl(3))}
    assert fibers[m1_alpha(4)].fiber_size == 5 and fibers[m1_alpha(4)].choices == 2
    fibers = {f.alpha: f for f in enumerate_alpha_fibers(5, gl(2))}
    assert fibers[mn_alpha(5)].fiber_size == 1


def test_special_subsets():
    s = special_subsets(4, gl(3))
    assert (s.m1_count, s.m1_fiber) == (2, 5)
    assert special_subsets(2, gl(2)).mn_count == 1
    assert special_subsets(2, gu(2)).mn_count == 0


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("q", [2, 3])
def test_averaged_sum_identity(n, q):
    for fiber in enumerate_alpha_fibers(n, gl(q)):
        assert fiber_weighted_sum(fiber.alpha, n_stat) == fiber_weighted_sum_averaged(fiber.alpha, n_stat)


def test_fiber_counts_per_partition_are_uniform():
    # fixing lam(f) = nu leaves p(alpha)/p(alpha(f)) completions, whatever nu is
    alpha = ((1, (3, 2)), (2, (1,)))
    from harada.classtypes import fiber_tuples, fiber_size

    total = fiber_size(alpha)
    for slot, m in enumerate([3, 2, 1]):
        tally = Counter(lam[slot][1] for lam in fiber_tuples(alpha))
        assert set(tally) == set(enumerate_partitions(m))
        assert set(tally.values()) == {total // len(enumerate_partitions(m))}


def test_deterministic_order():
    a = [str(t) for t, _ in enumerate_types(5, gl(3))]
    b = [str(t) for t, _ in enumerate_types(5, gl(3))]
    assert a == b and len(a) == len(set(a))

from collections import Counter

import pytest
from hypothesis import given, strategies as st

from harada.partitions import (
    PartitionClass,
    classify,
    conjugate,
    enumerate_partitions,
    hook_multiset,
    in_q1,
    is_partition,
    iter_partitions,
    multiplicities,
    n_stat,
    phi_map,
    psi12_inverse,
    psi12_map,
    psi21_inverse,
    psi21_map,
    psi_inverse,
    psi_map,
    row_end_hooks,
    s_stat,
)


def brute_partitions(n):
    """Sort every composition of n (one per subset of the n-1 cut points)."""
    out = set()
    for mask in range(2 ** (n - 1)):
        parts, run = [], 1
        for i in range(n - 1):
            if mask >> i & 1:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        out.add(tuple(sorted(parts, reverse=True)))
    return out


def diagram(lam):
    return {(i, j) for i, part in enumerate(lam) for j in range(part)}


def brute_hooks(lam):
    cells = diagram(lam)
    hooks = []
    for i, j in cells:
        arm = sum(1 for (a, b) in cells if a == i and b > j)
        leg = sum(1 for (a, b) in cells if b == j and a > i)
        hooks.append(arm + leg + 1)
    return sorted(hooks)


def brute_row_end_hooks(lam):
    cells = diagram(lam)
    out = []
    for i, j in cells:
        if (i, j + 1) not in cells:
            arm = 0
            leg = sum(1 for (a, b) in cells if b == j and a > i)
            out.append(arm + leg + 1)
    return sorted(out)


@st.composite
def partitions(draw, max_n=25):
    n = draw(st.integers(0, max_n))
    parts = enumerate_partitions(n)
    return parts[draw(st.integers(0, len(parts) - 1))]


# -- enumeration ---------------------------------------------------------------


def test_enumerate_zero():
    assert enumerate_partitions(0) == ((),)


@pytest.mark.parametrize("n, count", [(4, 5), (7, 15), (8, 22)])
def test_enumerate_counts(n, count):
    assert len(enumerate_partitions(n)) == count


@pytest.mark.parametrize("n", range(0, 13))
def test_enumerate_matches_brute_force(n):
    parts = enumerate_partitions(n)
    assert len(parts) == len(set(parts))
    if n:
        assert set(parts) == brute_partitions(n)
    assert all(is_partition(p) and sum(p) == n for p in parts)


def test_enumeration_is_reverse_lexicographic():
    for n in range(1, 16):
        parts = list(iter_partitions(n))
        assert parts == sorted(parts, reverse=True)
    assert enumerate_partitions(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))


def test_negative_n_rejected():
    with pytest.raises(ValueError):
        list(iter_partitions(-1))


# -- statistics ----------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 4, 9])
def test_n_stat_single_row_and_column(n):
    assert n_stat((n,)) == 0
    assert n_stat((1,) * n) == n * (n - 1) // 2


def test_n_stat_example():
    assert n_stat((3, 2, 1)) == 4


def test_conjugate_examples():
    assert conjugate((5,)) == (1,) * 5
    assert conjugate((2, 1)) == (2, 1)
    assert conjugate((3, 2)) == (2, 2, 1)
    assert conjugate(()) == ()


def test_multiplicities_examples():
    assert multiplicities((2, 1, 1)) == {1: 2, 2: 1}
    assert multiplicities((7,)) == {7: 1}
    assert multiplicities(()) == {}


def test_s_stat_examples():
    assert s_stat((6,)) == 1
    assert s_stat((1,) * 6) == 21
    assert s_stat((2, 1, 1)) == 4


def test_hook_examples():
    assert hook_multiset((1,)) == (1,)
    assert hook_multiset((2, 1)) == (1, 1, 3)
    assert hook_multiset((5,)) == (1, 2, 3, 4, 5)


def test_row_end_hook_examples():
    assert row_end_hooks((6,)) == (1,)
    assert row_end_hooks((1,) * 4) == (1, 2, 3, 4)
    # cells (1,2) and (2,1) both have hook 1, matching {1} + {1} from m_1 = m_2 = 1
    assert row_end_hooks((2, 1)) == (1, 1) == tuple(brute_row_end_hooks((2, 1)))


@given(partitions())
def test_conjugate_is_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert sorted(diagram(conjugate(lam))) == sorted((j, i) for i, j in diagram(lam))


@given(partitions())
def test_multiplicity_weight(lam):
    assert sum(i * m for i, m in multiplicities(lam).items()) == sum(lam)


@pytest.mark.parametrize("n", range(0, 31))
def test_n_of_conjugate_is_sum_of_binomials(n):
    for lam in enumerate_partitions(n):
        assert n_stat(conjugate(lam)) == sum(part * (part - 1) // 2 for part in lam)


@pytest.mark.parametrize("n", range(0, 13))
def test_hooks_match_brute_force(n):
    for lam in enumerate_partitions(n):
        assert list(hook_multiset(lam)) == brute_hooks(lam)
        assert list(row_end_hooks(lam)) == brute_row_end_hooks(lam)


@pytest.mark.parametrize("n", range(0, 21))
def test_hook_multiset_conjugation_invariant(n):
    for lam in enumerate_partitions(n):
        assert hook_multiset(lam) == hook_multiset(conjugate(lam))


@pytest.mark.parametrize("n", range(0, 21))
def test_row_end_hooks_decompose_by_multiplicity(n):
    for lam in enumerate_partitions(n):
        expected = sorted(k for m in multiplicities(lam).values() for k in range(1, m + 1))
        ends = row_end_hooks(lam)
        assert list(ends) == expected
        assert not Counter(ends) - Counter(hook_multiset(lam))


# -- classification and maps ---------------------------------------------------


def test_classify_examples():
    assert classify((1, 1)) is PartitionClass.P12
    assert classify((3,)) is PartitionClass.P21
    assert classify((2, 2)) is PartitionClass.P22
    assert classify((1,)) is PartitionClass.P11
    assert classify((3, 1)) is PartitionClass.P11
    with pytest.raises(ValueError):
        classify(())


def _by_class(n):
    out = {c: [] for c in PartitionClass}
    for lam in enumerate_partitions(n):
        out[classify(lam)].append(lam)
    return out


@pytest.mark.parametrize("n", range(1, 41))
def test_conjugation_swaps_classes(n):
    groups = _by_class(n)
    swap = {
        PartitionClass.P11: PartitionClass.P11,
        PartitionClass.P22: PartitionClass.P22,
        PartitionClass.P12: PartitionClass.P21,
        PartitionClass.P21: PartitionClass.P12,
    }
    if n <= 20:
        for lam in enumerate_partitions(n):
            assert classify(conjugate(lam)) is swap[classify(lam)]
    assert len(groups[PartitionClass.P12]) == len(groups[PartitionClass.P21])


def test_psi_examples():
    assert psi_map((1,), 3) == (2, 1)
    assert psi_map((2, 1), 5) == (3, 1, 1)
    for lam in enumerate_partitions(6):
        assert n_stat(psi_map(lam, 8)) - n_stat(lam) == len(lam)


def test_psi21_psi12_examples():
    assert psi21_map((2, 2)) == (3, 2)
    assert psi12_map((1, 1, 1)) == (1, 1, 1, 1)
    with pytest.raises(ValueError):
        psi21_map((2, 1))
    with pytest.raises(ValueError):
        psi12_map((3, 1))


@pytest.mark.parametrize("n", range(3, 31))
def test_psi_maps_are_bijections(n):
    here, before, before2 = _by_class(n), _by_class(n - 1), enumerate_partitions(n - 2)

    images = [psi_map(lam, n) for lam in before2]
    assert sorted(images) == sorted(here[PartitionClass.P11])
    assert all(psi_inverse(psi_map(lam, n)) == lam for lam in before2)
    assert all(n_stat(psi_map(lam, n)) == n_stat(lam) + len(lam) for lam in before2)

    dom21 = before[PartitionClass.P21] + before[PartitionClass.P22]
    images = [psi21_map(lam) for lam in dom21]
    assert sorted(images) == sorted(here[PartitionClass.P21])
    assert all(psi21_inverse(psi21_map(lam)) == lam for lam in dom21)
    assert all(n_stat(psi21_map(lam)) == n_stat(lam) for lam in dom21)

    dom12 = before[PartitionClass.P12] + before[PartitionClass.P22]
    images = [psi12_map(lam) for lam in dom12]
    assert sorted(images) == sorted(here[PartitionClass.P12])
    assert all(psi12_inverse(psi12_map(lam)) == lam for lam in dom12)
    assert all(n_stat(psi12_map(lam)) == n_stat(lam) + len(lam) for lam in dom12)


def test_psi21_cardinality_at_5():
    c4, c5 = _by_class(4), _by_class(5)
    assert len(c4[PartitionClass.P21]) + len(c4[PartitionClass.P22]) == len(c5[PartitionClass.P21])


def test_phi_example():
    assert phi_map((1,) * 5) == (2, 2, 1)


def test_phi_rejects_outside_q1():
    with pytest.raises(ValueError):
        phi_map((3, 3))
    with pytest.raises(ValueError):
        phi_map((1, 1, 1))


@pytest.mark.parametrize("n", range(4, 31))
def test_phi_is_injective_into_q2(n):
    q1 = [lam for lam in enumerate_partitions(n) if in_q1(lam)]
    images = [phi_map(lam) for lam in q1]
    assert len(set(images)) == len(images)
    for lam, img in zip(q1, images):
        assert is_partition(img) and sum(img) == n
        assert img[0] == img[1]
        assert 3 * len(img) <= 2 * (n + 1)
        assert 3 * (len(lam) + len(img)) <= 4 * (n + 1)


@pytest.mark.parametrize("n", range(1, 31))
def test_p22_pair_bound(n):
    for lam in enumerate_partitions(n):
        if classify(lam) is PartitionClass.P22:
            assert 4 * (n_stat(lam) + n_stat(conjugate(lam))) <= n * (n + 1)


@pytest.mark.parametrize("n", range(1, 41))
def test_length_sum_bound(n):
    parts = enumerate_partitions(n)
    assert 2 * sum(len(lam) for lam in parts) <= (n + 1) * len(parts)

"""Integer partitions and the statistics built on them.

A partition is a plain tuple of weakly decreasing positive integers; the
empty tuple is the partition of 0.  All maps below work on tuples directly
so they can be hashed, cached and shipped between processes.
"""

from __future__ import annotations

from collections import Counter
from enum import Enum
from functools import lru_cache
from typing import Iterator, Tuple

Partition = Tuple[int, ...]


class PartitionClass(str, Enum):
    """Four-way split by (smallest part is 1?) x (two largest parts equal?)."""

    P11 = "P11"
    P21 = "P21"
    P12 = "P12"
    P22 = "P22"


def is_partition(parts) -> bool:
    parts = tuple(parts)
    if any(type(x) is not int or x < 1 for x in parts):
        return False
    return all(a >= b for a, b in zip(parts, parts[1:]))


def iter_partitions(n: int) -> Iterator[Partition]:
    """Yield the partitions of ``n`` in reverse-lexicographic order.

    ``(n)`` comes first and ``(1^n)`` last.  ``n == 0`` yields ``()`` once.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n == 0:
        yield ()
        return
    # classic descending-order successor rule on a mutable list
    parts = [n]
    while True:
        yield tuple(parts)
        rem = 0
        while parts and parts[-1] == 1:
            parts.pop()
            rem += 1
        if not parts:
            return
        k = parts.pop() - 1
        rem += 1
        while rem > k:
            parts.append(k)
            rem -= k
        parts.append(k)
        if rem:
            parts.append(rem)


@lru_cache(maxsize=None)
def enumerate_partitions(n: int) -> Tuple[Partition, ...]:
    """All partitions of ``n`` as a cached tuple (reverse-lexicographic)."""
    return tuple(iter_partitions(n))


def n_stat(lam: Partition) -> int:
    """Return n(lam) = sum (i-1) lam_i."""
    return sum(i * part for i, part in enumerate(lam))


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for part in lam if part >= i) for i in range(1, lam[0] + 1))


def multiplicities(lam: Partition) -> dict:
    return dict(Counter(lam))


def s_stat(lam: Partition) -> int:
    return sum(m * (m + 1) // 2 for m in Counter(lam).values())


def hook_lengths(lam: Partition) -> list:
    """Hook length of every cell, row by row (1-based cell (i, j) -> list order)."""
    conj = conjugate(lam)
    return [
        lam[i] - j + conj[j] - i - 1
        for i in range(len(lam))
        for j in range(lam[i])
    ]


def hook_multiset(lam: Partition) -> Tuple[int, ...]:
    """Hooks of all cells as a sorted tuple (a canonical multiset)."""
    return tuple(sorted(hook_lengths(lam)))


def row_end_hooks(lam: Partition) -> Tuple[int, ...]:
    """Hooks at the cells with no right neighbour, sorted."""
    conj = conjugate(lam)
    hooks = []
    for i, part in enumerate(lam):
        j = part - 1
        hooks.append(conj[j] - i)
    return tuple(sorted(hooks))


def classify(lam: Partition) -> PartitionClass:
    """Place a nonempty partition in P11, P21, P12 or P22.

    A one-part partition is read with lam_2 = 0, so ``(1)`` is in P11 and
    ``(n)`` for n >= 2 is in P21.
    """
    if not lam:
        raise ValueError("the empty partition has no class")
    second = lam[1] if len(lam) > 1 else 0
    ends_in_one = lam[-1] == 1
    top_equal = lam[0] == second
    if ends_in_one:
        return PartitionClass.P12 if top_equal else PartitionClass.P11
    return PartitionClass.P22 if top_equal else PartitionClass.P21


# -- maps between partition classes ------------------------------------------


def _check_size(lam: Partition, size: int) -> None:
    if not is_partition(lam) or sum(lam) != size:
        raise ValueError(f"{lam!r} is not a partition of {size}")


def psi_map(lam: Partition, n: int) -> Partition:
    """Bijection from partitions of n-2 onto P11(n): bump the first part, append 1."""
    if n < 3:
        raise ValueError("psi_map needs n >= 3")
    _check_size(lam, n - 2)
    return (lam[0] + 1,) + lam[1:] + (1,)


def psi_inverse(lam: Partition) -> Partition:
    n = sum(lam)
    if n < 3 or classify(lam) is not PartitionClass.P11:
        raise ValueError(f"{lam!r} is not in P11(n) with n >= 3")
    body = lam[:-1]
    return (body[0] - 1,) + body[1:]


def psi21_map(lam: Partition) -> Partition:
    """P21(n-1) u P22(n-1) -> P21(n): add one box to the first row."""
    if not lam or sum(lam) < 2 or classify(lam) not in (PartitionClass.P21, PartitionClass.P22):
        raise ValueError(f"{lam!r} is not in P21 u P22")
    return (lam[0] + 1,) + lam[1:]


def psi21_inverse(lam: Partition) -> Partition:
    if sum(lam) < 3 or classify(lam) is not PartitionClass.P21:
        raise ValueError(f"{lam!r} is not in P21(n) with n >= 3")
    return (lam[0] - 1,) + lam[1:]


def psi12_map(lam: Partition) -> Partition:
    """P12(n-1) u P22(n-1) -> P12(n): append a part equal to 1."""
    if not lam or sum(lam) < 2 or classify(lam) not in (PartitionClass.P12, PartitionClass.P22):
        raise ValueError(f"{lam!r} is not in P12 u P22")
    return lam + (1,)


def psi12_inverse(lam: Partition) -> Partition:
    if sum(lam) < 3 or classify(lam) is not PartitionClass.P12:
        raise ValueError(f"{lam!r} is not in P12(n) with n >= 3")
    return lam[:-1]


def in_q1(lam: Partition) -> bool:
    """Membership in Q1: top two parts equal and 3 l(lam) > 2(n+1)."""
    n = sum(lam)
    return len(lam) >= 2 and lam[0] == lam[1] and 3 * len(lam) > 2 * (n + 1)


def phi_map(lam: Partition) -> Partition:
    """Injection Q1 -> Q2 that trades a long column for two equal rows."""
    n = sum(lam)
    if n < 4:
        raise ValueError("phi_map needs n >= 4")
    if not is_partition(lam) or not in_q1(lam):
        raise ValueError(f"{lam!r} is not in Q1({n})")
    l = len(lam)
    if l % 2 == 0:
        head = (l // 2, l // 2)
        tail = tuple(part - 1 for part in lam)
    else:
        head = ((l - 1) // 2, (l - 1) // 2)
        tail = (lam[0],) + tuple(part - 1 for part in lam[1:])
    return head + tuple(part for part in tail if part > 0)

"""Class types: partition-valued functions on polynomials, compressed by degree.

A function lam with ||lam|| = n only matters through the multiset of
(degree, partition) pairs it produces, because every formula downstream
depends on a polynomial only through its degree.  A ``ClassType`` is that
multiset; its multiplicity counts the functions that realise it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from math import factorial, prod
from typing import Callable, Iterator, List, Tuple

from .partitions import Partition, enumerate_partitions
from .polycount import PolyCountTable

Block = Tuple[int, Tuple[Partition, ...]]
AlphaType = Tuple[Tuple[int, Tuple[int, ...]], ...]


def falling(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


def _divide(num: int, den: int) -> int:
    quo, rem = divmod(num, den)
    if rem:
        raise ArithmeticError(f"{den} does not divide {num}")
    return quo


@dataclass(frozen=True)
class ClassType:
    """Degree-indexed multisets of nonempty partitions, sorted canonically."""

    blocks: Tuple[Block, ...]

    @classmethod
    def from_items(cls, items) -> "ClassType":
        """Build from an iterable of (degree, partition) pairs."""
        by_degree = {}
        for d, mu in items:
            if not mu:
                raise ValueError("class types only hold nonempty partitions")
            by_degree.setdefault(d, []).append(tuple(mu))
        return cls(tuple((d, tuple(sorted(by_degree[d], reverse=True))) for d in sorted(by_degree)))

    @property
    def weight(self) -> int:
        return sum(d * sum(sum(mu) for mu in mus) for d, mus in self.blocks)

    def items(self) -> Iterator[Tuple[int, Partition]]:
        for d, mus in self.blocks:
            for mu in mus:
                yield d, mu

    def alpha(self) -> AlphaType:
        return tuple((d, tuple(sorted((sum(mu) for mu in mus), reverse=True))) for d, mus in self.blocks)

    def multiplicity(self, table: PolyCountTable) -> int:
        """Number of functions lam of this type: distinct polynomials per degree,
        modulo permuting the ones that carry equal partitions."""
        total = 1
        for d, mus in self.blocks:
            sym = prod(factorial(c) for c in Counter(mus).values())
            total *= _divide(falling(table[d], len(mus)), sym)
        return total

    def __str__(self) -> str:
        parts = []
        for d, mus in self.blocks:
            parts.append(f"{d}:" + "|".join(",".join(map(str, mu)) for mu in mus))
        return "{" + "; ".join(parts) + "}"


def alpha_choices(alpha: AlphaType, table: PolyCountTable) -> int:
    """Number of size functions alpha of the given degree type."""
    total = 1
    for d, sizes in alpha:
        sym = prod(factorial(c) for c in Counter(sizes).values())
        total *= _divide(falling(table[d], len(sizes)), sym)
    return total


def fiber_size(alpha: AlphaType) -> int:
    """p(alpha): the number of lam with |lam(f)| = alpha(f)."""
    return prod(len(enumerate_partitions(m)) for _, sizes in alpha for m in sizes)


def enumerate_alpha_types(n: int, table: PolyCountTable) -> Iterator[AlphaType]:
    """Multisets of (degree, size) with sum degree*size = n that fit in the table.

    Items are ordered by degree, then by decreasing size; the multisets come out
    in lexicographic order of their sorted item lists.
    """
    if n < 1:
        raise ValueError("n must be positive")
    items = [(d, m) for d in range(1, n + 1) for m in range(n // d, 0, -1)]
    available = {d: table[d] for d in range(1, n + 1)}

    def rec(start: int, remaining: int, used: Counter, acc: list):
        if remaining == 0:
            blocks = {}
            for d, m in acc:
                blocks.setdefault(d, []).append(m)
            yield tuple((d, tuple(blocks[d])) for d in sorted(blocks))
            return
        for idx in range(start, len(items)):
            d, m = items[idx]
            if d * m > remaining or used[d] >= available[d]:
                continue
            used[d] += 1
            acc.append((d, m))
            yield from rec(idx, remaining - d * m, used, acc)
            acc.pop()
            used[d] -= 1

    yield from rec(0, n, Counter(), [])


def _partition_multisets(size: int, count: int):
    return combinations_with_replacement(enumerate_partitions(size), count)


def types_in_alpha(alpha: AlphaType) -> Iterator[ClassType]:
    """Class types whose size data is ``alpha``, in lexicographic order."""
    groups = []
    for d, sizes in alpha:
        for m, c in sorted(Counter(sizes).items(), reverse=True):
            groups.append((d, m, c))
    choices = [list(_partition_multisets(m, c)) for _, m, c in groups]
    for pick in product(*choices):
        items = []
        for (d, _, _), mus in zip(groups, pick):
            items.extend((d, mu) for mu in mus)
        yield ClassType.from_items(items)


def enumerate_types(n: int, table: PolyCountTable) -> Iterator[Tuple[ClassType, int]]:
    """Stream (type, multiplicity) over every lam with ||lam|| = n.

    Ordered by size data (see ``enumerate_alpha_types``), then by partitions.
    Types needing more polynomials of some degree than exist are skipped.
    """
    for alpha in enumerate_alpha_types(n, table):
        for ctype in types_in_alpha(alpha):
            if ctype.weight != n:
                raise AssertionError(f"type {ctype} has weight {ctype.weight} != {n}")
            yield ctype, ctype.multiplicity(table)


@dataclass(frozen=True)
class AlphaFiber:
    alpha: AlphaType
    choices: int  # number of size functions of this shape
    fiber_size: int  # p(alpha)


def enumerate_alpha_fibers(n: int, table: PolyCountTable) -> Iterator[AlphaFiber]:
    for alpha in enumerate_alpha_types(n, table):
        yield AlphaFiber(alpha, alpha_choices(alpha, table), fiber_size(alpha))


def class_count(n: int, table: PolyCountTable) -> int:
    return sum(mult for _, mult in enumerate_types(n, table))


def m1_alpha(n: int) -> AlphaType:
    return ((1, (n,)),)


def mn_alpha(n: int) -> AlphaType:
    return ((n, (1,)),)


@dataclass(frozen=True)
class SpecialSubsets:
    m1_count: int
    m1_fiber: int
    mn_count: int
    mn_fiber: int


def special_subsets(n: int, table: PolyCountTable) -> SpecialSubsets:
    """Sizes of M^(1) (all weight on one linear polynomial) and M^(n)."""
    if n < 1:
        raise ValueError("n must be positive")
    return SpecialSubsets(
        m1_count=table[1],
        m1_fiber=len(enumerate_partitions(n)),
        mn_count=table[n],
        mn_fiber=1,
    )


def fiber_tuples(alpha: AlphaType) -> Iterator[Tuple[Tuple[int, Partition], ...]]:
    """Every lam in one fiber, as ((degree, partition), ...) in support order."""
    slots = [(d, m) for d, sizes in alpha for m in sizes]
    for pick in product(*(enumerate_partitions(m) for _, m in slots)):
        yield tuple((d, mu) for (d, _), mu in zip(slots, pick))


def fiber_weighted_sum(alpha: AlphaType, w: Callable[[Partition], int]) -> int:
    """sum over the fiber of sum_f d(f) w(lam(f)), by brute force."""
    return sum(sum(d * w(mu) for d, mu in lam) for lam in fiber_tuples(alpha))


def fiber_weighted_sum_averaged(alpha: AlphaType, w: Callable[[Partition], int]) -> int:
    """Same sum via p(alpha)/p(alpha(f)) times the sum of w over partitions of alpha(f)."""
    p_alpha = fiber_size(alpha)
    total = 0
    for d, sizes in alpha:
        for m in sizes:
            parts = enumerate_partitions(m)
            total += d * _divide(p_alpha, len(parts)) * sum(w(nu) for nu in parts)
    return total


def explicit_functions(n: int, counts: dict) -> List[Tuple[Tuple[int, int, Partition], ...]]:
    """Brute-force list of all lam with ||lam|| = n over labelled polynomials.

    ``counts[d]`` polynomials of degree d are labelled (d, 0..counts[d]-1).
    Exponential; for cross-checks at tiny sizes only.
    """
    polys = [(d, i) for d in range(1, n + 1) for i in range(counts.get(d, 0))]
    out = []

    def rec(idx: int, remaining: int, acc: list):
        if remaining == 0:
            out.append(tuple(acc))
            return
        if idx == len(polys):
            return
        d, i = polys[idx]
        rec(idx + 1, remaining, acc)
        for k in range(1, remaining // d + 1):
            for mu in enumerate_partitions(k):
                acc.append((d, i, mu))
                rec(idx + 1, remaining - d * k, acc)
                acc.pop()

    rec(0, n, [])
    return out

"""Group-level computations for GL_n(q) and GU_n(q).

h(G) is never multiplied out.  It is kept as (v_q(h), q'-part of h), which is
all the divisibility question needs.  For GU every formula is evaluated at
-q and signs are carried to the end, where positivity is asserted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, Iterator, List, Optional, Tuple, Union

from .bounds import n_bar
from .classtypes import (
    AlphaType,
    ClassType,
    enumerate_alpha_types,
    enumerate_types,
    alpha_choices,
    fiber_size,
    fiber_tuples,
    m1_alpha,
    mn_alpha,
)
from .partitions import n_stat, s_stat
from .polycount import ORDINARY, UNITARY, PolyCountTable
from .qarith import (
    EvalPoint,
    FactoredInt,
    IntegralityError,
    PrimePower,
    as_prime_power,
    centralizer_order,
    degree_factor,
    psi_eval,
)

GL = "GL"
GU = "GU"

# (n, q) pairs excluded from the C(n,2) valuation bound
MAIN_EXCEPTIONS = {GL: frozenset({(2, 2)}), GU: frozenset({(2, 2), (2, 3), (3, 2)})}
# commutator subgroup orders that do not follow |G|/(q -+ 1)
DERIVED_ORDER_EXCEPTIONS = {(GL, 2, 2): 3, (GU, 2, 2): 3}


@dataclass(frozen=True)
class GroupSpec:
    variant: str
    n: int
    q: PrimePower

    def __post_init__(self):
        variant = self.variant.upper()
        if variant not in (GL, GU):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.n < 1:
            raise ValueError("rank must be positive")
        object.__setattr__(self, "variant", variant)
        object.__setattr__(self, "q", as_prime_power(self.q))

    @property
    def sign(self) -> int:
        return 1 if self.variant == GL else -1

    def point(self, d: int) -> EvalPoint:
        return EvalPoint(self.sign, d)

    def poly_table(self) -> PolyCountTable:
        return PolyCountTable(self.q, ORDINARY if self.variant == GL else UNITARY)

    @property
    def is_main_exception(self) -> bool:
        return (self.n, self.q.q) in MAIN_EXCEPTIONS[self.variant]

    def __str__(self) -> str:
        return f"{self.variant}_{self.n}({self.q.q})"


def _signed_order(spec: GroupSpec) -> FactoredInt:
    """q^C(n,2) * psi_n(+-q), sign included."""
    ctx = spec.q
    return FactoredInt.q_power(comb(spec.n, 2), ctx) * psi_eval(spec.n, spec.point(1), ctx)


def group_order(spec: GroupSpec) -> FactoredInt:
    return abs(_signed_order(spec))


def derived_subgroup_order(spec: GroupSpec) -> FactoredInt:
    ctx = spec.q
    special = DERIVED_ORDER_EXCEPTIONS.get((spec.variant, spec.n, ctx.q))
    if special is not None:
        return FactoredInt.from_int(special, ctx)
    center = ctx.q - 1 if spec.variant == GL else ctx.q + 1
    return group_order(spec).divexact(FactoredInt.from_int(center, ctx))


def _check_type(spec: GroupSpec, ctype: ClassType) -> None:
    if ctype.weight != spec.n:
        raise ValueError(f"type {ctype} has weight {ctype.weight}, expected {spec.n}")


def class_size(spec: GroupSpec, ctype: ClassType) -> FactoredInt:
    _check_type(spec, ctype)
    ctx = spec.q
    denom = FactoredInt.one(ctx)
    for d, mu in ctype.items():
        denom = denom * centralizer_order(mu, spec.point(d), ctx)
    if spec.variant == GU and spec.n % 2:
        denom = -denom
    size = group_order(spec).divexact(denom)
    if not size.is_positive_integer():
        raise IntegralityError(f"class size {size} of {ctype} in {spec} is not a positive integer")
    return size


def char_degree(spec: GroupSpec, ctype: ClassType) -> FactoredInt:
    _check_type(spec, ctype)
    ctx = spec.q
    num = psi_eval(spec.n, spec.point(1), ctx)
    den = FactoredInt.one(ctx)
    for d, mu in ctype.items():
        top, bottom = degree_factor(mu, spec.point(d), ctx)
        num = num * top
        den = den * bottom
    degree = num.divexact(den)
    if spec.variant == GU:
        degree = abs(degree)
    if not degree.is_positive_integer():
        raise IntegralityError(f"degree {degree} of {ctype} in {spec} is not a positive integer")
    return degree


def omega_closed(n: int, items) -> int:
    """C(n,2) - sum d(|mu| + 3 n(mu) - s(mu)) over (degree, partition) items."""
    return comb(n, 2) - sum(d * (sum(mu) + 3 * n_stat(mu) - s_stat(mu)) for d, mu in items)


def omega(spec: GroupSpec, ctype: ClassType) -> int:
    """Closed-form valuation of |K|/d, checked against the two valuations."""
    closed = omega_closed(spec.n, ctype.items())
    direct = class_size(spec, ctype).v - char_degree(spec, ctype).v
    if closed != direct:
        raise AssertionError(f"omega mismatch for {ctype} in {spec}: {closed} != {direct}")
    return closed


@dataclass(frozen=True)
class ClassRecord:
    ctype: ClassType
    multiplicity: int
    class_size: FactoredInt
    degree: FactoredInt
    omega: int
    qprime_ratio: Union[int, Fraction]

    @property
    def qprime_integral(self) -> bool:
        return isinstance(self.qprime_ratio, int)


def class_record(spec: GroupSpec, ctype: ClassType, multiplicity: int) -> ClassRecord:
    size = class_size(spec, ctype)
    degree = char_degree(spec, ctype)
    closed = omega_closed(spec.n, ctype.items())
    if closed != size.v - degree.v:
        raise AssertionError(f"omega mismatch for {ctype} in {spec}: {closed} != {size.v - degree.v}")
    quo, rem = divmod(size.r, degree.r)
    ratio = quo if rem == 0 else Fraction(size.r, degree.r)
    return ClassRecord(ctype, multiplicity, size, degree, closed, ratio)


def class_records(spec: GroupSpec) -> Iterator[ClassRecord]:
    for ctype, mult in enumerate_types(spec.n, spec.poly_table()):
        yield class_record(spec, ctype, mult)


def product_tree(values: List[int]) -> int:
    """Product of many big integers by balanced pairing."""
    if not values:
        return 1
    values = list(values)
    while len(values) > 1:
        paired = [values[i] * values[i + 1] for i in range(0, len(values) - 1, 2)]
        if len(values) % 2:
            paired.append(values[-1])
        values = paired
    return values[0]


CHECK_NAMES = (
    "qprime_integral_all",
    "sum_class_sizes",
    "sum_degree_squares",
    "main_valuation_bound",
    "commutator_divides",
)


@dataclass
class HaradaReport:
    spec: GroupSpec
    group_order: FactoredInt
    derived_order: FactoredInt
    class_count: int
    vq_h: int
    h_qprime: Union[int, Fraction]
    class_size_sum: int
    degree_square_sum: int
    checks: Dict[str, bool] = field(default_factory=dict)
    exception: Optional[str] = None

    @property
    def binom_n_2(self) -> int:
        return comb(self.spec.n, 2)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    @property
    def conjecture_holds(self) -> bool:
        return self.vq_h >= 0 and isinstance(self.h_qprime, int)

    def h_value(self) -> Fraction:
        """The full h(G); only sensible for small groups."""
        return Fraction(self.h_qprime) * Fraction(self.spec.q.q) ** self.vq_h


def harada_report(spec: GroupSpec) -> HaradaReport:
    ctx = spec.q
    order = group_order(spec)
    derived = derived_subgroup_order(spec)
    count = vq_h = size_sum = square_sum = 0
    integral = True
    ratios: List[int] = []
    num_parts: List[int] = []
    den_parts: List[int] = []
    for rec in class_records(spec):
        mult = rec.multiplicity
        count += mult
        vq_h += mult * rec.omega
        size_sum += mult * rec.class_size.value
        square_sum += mult * rec.degree.value ** 2
        if rec.qprime_integral:
            ratios.append(pow(rec.qprime_ratio, mult))
        else:
            integral = False
        num_parts.append(pow(rec.class_size.r, mult))
        den_parts.append(pow(rec.degree.r, mult))
    if integral:
        h_qprime: Union[int, Fraction] = product_tree(ratios)
    else:
        h_qprime = Fraction(product_tree(num_parts), product_tree(den_parts))
        if h_qprime.denominator == 1:
            h_qprime = h_qprime.numerator

    exception = None
    binom = comb(spec.n, 2)
    if spec.is_main_exception:
        exception = f"excluded-by-theorem: (n,q)=({spec.n},{ctx.q}) is exempt from v_q(h) >= C(n,2)"
        main_ok = vq_h >= 0
    else:
        main_ok = vq_h >= binom and vq_h >= 0
    commutator_ok = (
        isinstance(h_qprime, int) and vq_h >= derived.v and h_qprime % derived.r == 0
    )
    checks = {
        "qprime_integral_all": integral,
        "sum_class_sizes": size_sum == order.value,
        "sum_degree_squares": square_sum == order.value,
        "main_valuation_bound": main_ok,
        "commutator_divides": commutator_ok,
    }
    return HaradaReport(spec, order, derived, count, vq_h, h_qprime, size_sum, square_sum, checks, exception)


# -- the fiber-level inequalities -------------------------------------------------


@dataclass(frozen=True)
class FiberCheck:
    alpha: AlphaType
    choices: int
    fiber_size: int
    budget: int  # C(n,2)
    load: Fraction  # 3 * sum d N-bar(alpha(f))
    omega_sum: int  # sum of omega over one fiber

    @property
    def holds(self) -> bool:
        return self.load <= self.budget and self.omega_sum >= 0


@dataclass
class Main2Report:
    spec: GroupSpec
    part1: List[FiberCheck]
    part2_excluded: bool
    part2_lhs: Optional[int] = None
    part2_rhs: Optional[Fraction] = None
    part2_omega_sum: Optional[int] = None
    total_omega: int = 0

    @property
    def part1_holds(self) -> bool:
        return all(f.holds for f in self.part1)

    @property
    def part2_holds(self) -> Optional[bool]:
        if self.part2_excluded:
            return None
        return self.part2_lhs >= self.part2_rhs and self.part2_omega_sum >= comb(self.spec.n, 2)


def _fiber_load(alpha: AlphaType) -> Fraction:
    return 3 * sum((d * n_bar(m) for d, sizes in alpha for m in sizes), Fraction(0))


def fiber_omega_sum(n: int, alpha: AlphaType) -> int:
    return sum(omega_closed(n, lam) for lam in fiber_tuples(alpha))


def verify_main2(spec: GroupSpec) -> Main2Report:
    """Check the per-fiber bound off M^(1) and the aggregate bound on M^(1) u M^(n)."""
    n = spec.n
    table = spec.poly_table()
    binom = comb(n, 2)
    special = {m1_alpha(n), mn_alpha(n)}
    part1 = []
    total = 0
    special_p = 0
    special_load = Fraction(0)
    special_omega = 0
    for alpha in enumerate_alpha_types(n, table):
        choices = alpha_choices(alpha, table)
        size = fiber_size(alpha)
        load = _fiber_load(alpha)
        osum = fiber_omega_sum(n, alpha)
        total += choices * osum
        if alpha in special:
            special_p += choices * size
            special_load += choices * size * load / 3
            special_omega += choices * osum
        if alpha != m1_alpha(n):
            part1.append(FiberCheck(alpha, choices, size, binom, load, osum))
    report = Main2Report(spec, part1, spec.is_main_exception, total_omega=total)
    if not report.part2_excluded:
        report.part2_lhs = binom * (special_p - 1)
        report.part2_rhs = 3 * special_load
        report.part2_omega_sum = special_omega
    return report


def fiber_omega_identity(n: int, alpha: AlphaType) -> Tuple[int, Fraction]:
    """(brute-force fiber sum of omega, p(alpha) * (C(n,2) - 3 sum d N-bar))."""
    return fiber_omega_sum(n, alpha), fiber_size(alpha) * (comb(n, 2) - _fiber_load(alpha))

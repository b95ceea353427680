"""Exact integers in the form sign * q**v * r with r prime to q.

Everything here is evaluated at concrete q; there is no symbolic q.  The
evaluation point x = (+-q)**d is kept structural (``EvalPoint``) so signs for
the unitary case are tracked through every product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Tuple

from .partitions import Partition, hook_lengths, multiplicities, n_stat, s_stat


class IntegralityError(ArithmeticError):
    """An exact division that was supposed to be exact left a remainder."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class PrimePower:
    p: int
    e: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.e < 1:
            raise ValueError(f"exponent must be positive, got {self.e}")

    @property
    def q(self) -> int:
        return self.p**self.e

    def __index__(self) -> int:
        return self.q

    def __str__(self) -> str:
        return str(self.q)

    @classmethod
    def from_q(cls, q: int) -> "PrimePower":
        """Factor ``q`` by trial division; raise ValueError unless q = p**e."""
        q = int(q)
        if q < 2:
            raise ValueError(f"{q} is not a prime power")
        p = 2
        while p * p <= q and q % p:
            p += 1
        if q % p:
            p = q
        e, rest = 0, q
        while rest % p == 0:
            rest //= p
            e += 1
        if rest != 1:
            raise ValueError(f"{q} is not a prime power")
        return cls(p, e)


def as_prime_power(q) -> PrimePower:
    return q if isinstance(q, PrimePower) else PrimePower.from_q(q)


@dataclass(frozen=True)
class FactoredInt:
    """sign * q**v * r, with r > 0 coprime to p; zero is (0, 0, 0)."""

    sign: int
    v: int
    r: int
    ctx: PrimePower

    def __post_init__(self):
        if self.sign == 0:
            if self.v != 0 or self.r != 0:
                raise ValueError("zero must be canonical (0, 0, 0)")
        elif self.sign not in (1, -1) or self.r < 1 or self.r % self.ctx.p == 0:
            raise ValueError(f"non-canonical FactoredInt {self.sign}, {self.v}, {self.r}")

    @classmethod
    def zero(cls, ctx: PrimePower) -> "FactoredInt":
        return cls(0, 0, 0, ctx)

    @classmethod
    def one(cls, ctx: PrimePower) -> "FactoredInt":
        return cls(1, 0, 1, ctx)

    @classmethod
    def from_int(cls, value: int, ctx: PrimePower) -> "FactoredInt":
        if value == 0:
            return cls.zero(ctx)
        sign = 1 if value > 0 else -1
        r = abs(value)
        k = 0
        while r % ctx.p == 0:
            r //= ctx.p
            k += 1
        if k % ctx.e:
            # every quantity built here is a power of q times a q'-number
            raise ValueError(f"p-adic valuation {k} of {value} is not a multiple of e={ctx.e}")
        return cls(sign, k // ctx.e, r, ctx)

    @classmethod
    def q_power(cls, v: int, ctx: PrimePower, sign: int = 1) -> "FactoredInt":
        return cls(sign, v, 1, ctx)

    def is_zero(self) -> bool:
        return self.sign == 0

    def _same_ctx(self, other: "FactoredInt") -> None:
        if self.ctx != other.ctx:
            raise ValueError(f"mismatched prime powers {self.ctx} and {other.ctx}")

    def __mul__(self, other: "FactoredInt") -> "FactoredInt":
        self._same_ctx(other)
        if self.sign == 0 or other.sign == 0:
            return FactoredInt.zero(self.ctx)
        return FactoredInt(self.sign * other.sign, self.v + other.v, self.r * other.r, self.ctx)

    def __neg__(self) -> "FactoredInt":
        if self.sign == 0:
            return self
        return FactoredInt(-self.sign, self.v, self.r, self.ctx)

    def __abs__(self) -> "FactoredInt":
        if self.sign >= 0:
            return self
        return -self

    def __pow__(self, k: int) -> "FactoredInt":
        if k < 0:
            raise ValueError("negative powers are not FactoredInts")
        if self.sign == 0:
            return FactoredInt.one(self.ctx) if k == 0 else self
        return FactoredInt(self.sign**k, self.v * k, self.r**k, self.ctx)

    def divexact(self, other: "FactoredInt") -> "FactoredInt":
        """Quotient in Z[1/q]; the q'-parts must divide exactly."""
        self._same_ctx(other)
        if other.sign == 0:
            raise ZeroDivisionError("division by a zero FactoredInt")
        if self.sign == 0:
            return self
        quo, rem = divmod(self.r, other.r)
        if rem:
            raise IntegralityError(f"q'-part {other.r} does not divide {self.r}")
        return FactoredInt(self.sign * other.sign, self.v - other.v, quo, self.ctx)

    @property
    def value(self):
        """Exact value: an int when v >= 0, otherwise a Fraction."""
        if self.sign == 0:
            return 0
        if self.v >= 0:
            return self.sign * self.ctx.q**self.v * self.r
        return Fraction(self.sign * self.r, self.ctx.q ** (-self.v))

    def is_positive_integer(self) -> bool:
        return self.sign == 1 and self.v >= 0

    def __repr__(self) -> str:
        return f"FactoredInt(sign={self.sign}, v={self.v}, r={self.r}, q={self.ctx.q})"


def fi_mul(a: FactoredInt, b: FactoredInt) -> FactoredInt:
    return a * b


def fi_divexact(a: FactoredInt, b: FactoredInt) -> FactoredInt:
    return a.divexact(b)


def fi_prod(factors: Iterable[FactoredInt], ctx: PrimePower) -> FactoredInt:
    out = FactoredInt.one(ctx)
    for f in factors:
        out = out * f
    return out


@dataclass(frozen=True)
class EvalPoint:
    """The point x = (base_sign * q) ** d."""

    base_sign: int
    d: int

    def __post_init__(self):
        if self.base_sign not in (1, -1) or self.d < 1:
            raise ValueError(f"bad evaluation point {self.base_sign}, {self.d}")


def x_power(x: EvalPoint, k: int, ctx: PrimePower) -> FactoredInt:
    """x**k for k >= 0."""
    sign = x.base_sign ** (x.d * k)
    return FactoredInt(sign, x.d * k, 1, ctx)


@lru_cache(maxsize=4096)
def _x_pow_minus_one(base_sign: int, d: int, k: int, q: int) -> int:
    return (base_sign * q) ** (d * k) - 1


def x_pow_minus_one(x: EvalPoint, k: int, ctx: PrimePower) -> FactoredInt:
    """x**k - 1 for k >= 1; always prime to p."""
    value = _x_pow_minus_one(x.base_sign, x.d, k, ctx.q)
    return FactoredInt(1 if value > 0 else -1, 0, abs(value), ctx)


def psi_eval(m: int, x: EvalPoint, ctx: PrimePower) -> FactoredInt:
    """psi_m(x) = (x - 1)(x^2 - 1)...(x^m - 1); psi_0 = 1."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return fi_prod((x_pow_minus_one(x, i, ctx) for i in range(1, m + 1)), ctx)


def hook_product_eval(lam: Partition, x: EvalPoint, ctx: PrimePower) -> FactoredInt:
    return fi_prod((x_pow_minus_one(x, h, ctx) for h in hook_lengths(lam)), ctx)


def centralizer_exponent(lam: Partition) -> int:
    """|lam| + 2 n(lam) - s(lam)."""
    return sum(lam) + 2 * n_stat(lam) - s_stat(lam)


def centralizer_order(lam: Partition, x: EvalPoint, ctx: PrimePower) -> FactoredInt:
    """a_lam(x) = x^(|lam| + 2n(lam) - s(lam)) * prod_i psi_{m_i}(x)."""
    if not lam:
        raise ValueError("centralizer order needs a nonempty partition")
    out = x_power(x, centralizer_exponent(lam), ctx)
    for m in multiplicities(lam).values():
        out = out * psi_eval(m, x, ctx)
    return out


def degree_factor(lam: Partition, x: EvalPoint, ctx: PrimePower) -> Tuple[FactoredInt, FactoredInt]:
    """(x^n(lam), H~_lam(x)): the fraction b_lam(x) left undivided."""
    return x_power(x, n_stat(lam), ctx), hook_product_eval(lam, x, ctx)


def b_explicit_eval(lam: Partition, x: EvalPoint, ctx: PrimePower) -> Tuple[FactoredInt, FactoredInt]:
    """b_lam(x) from the row-difference product over psi's, as (num, den).

    num = x^n(lam) * prod_{i<j} (x^(lam_i - lam_j - i + j) - 1)
    den = prod_r psi_{lam_r + l - r}(x),  l = l(lam)
    """
    if not lam:
        raise ValueError("b_explicit_eval needs a nonempty partition")
    l = len(lam)
    num = x_power(x, n_stat(lam), ctx)
    for i in range(l):
        for j in range(i + 1, l):
            num = num * x_pow_minus_one(x, lam[i] - lam[j] - i + j, ctx)
    den = FactoredInt.one(ctx)
    for r in range(1, l + 1):
        den = den * psi_eval(lam[r - 1] + l - r, x, ctx)
    return num, den


def same_ratio(a: Tuple[FactoredInt, FactoredInt], b: Tuple[FactoredInt, FactoredInt]) -> bool:
    """a[0]/a[1] == b[0]/b[1], by cross multiplication."""
    return a[0] * b[1] == b[0] * a[1]


def small_factorization(value: int, bound: int = 10**6) -> dict:
    """Trial-factor a positive integer; any cofactor above ``bound`` is kept whole."""
    if value < 1:
        raise ValueError("only positive integers are factored")
    out = {}
    f = 2
    while f * f <= value and f <= bound:
        while value % f == 0:
            out[f] = out.get(f, 0) + 1
            value //= f
        f += 1
    if value > 1:
        out[value] = out.get(value, 0) + 1
    return out


def format_factorization(factors: dict) -> str:
    if not factors:
        return "1"
    return "*".join(f"{p}^{k}" if k > 1 else str(p) for p, k in sorted(factors.items()))

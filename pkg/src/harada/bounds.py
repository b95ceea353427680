"""Partition aggregates N(n), p(n), p_ij(n), N_ij(n) and the inequalities on them.

Every comparison is exact (``fractions.Fraction``).  Statements are keyed by
short ids; ``verify_statement`` refuses parameters outside a statement's
hypotheses instead of extrapolating.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .partitions import (
    classify,
    conjugate,
    enumerate_partitions,
    iter_partitions,
    n_stat,
    s_stat,
)
from .polycount import count_irreducible, count_u_irreducible

CLASSES = ("P11", "P21", "P12", "P22")
CACHE_ENV = "HARADA_CACHE_DIR"
_CACHE_FILE = "partition_stats.json"


@dataclass(frozen=True)
class PartitionStats:
    n: int
    p: int
    big_n: int
    p_ij: Dict[str, int]
    n_ij: Dict[str, int]
    sum_length: int
    sum_s: int
    sum_omega_terms: int  # sum of |lam| + 3 n(lam) - s(lam)
    sum_length_q: int  # sum of l(lam) over P12 u P22
    max_n_plus_nconj_p22: int  # 0 when P22(n) is empty

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "big_n": self.big_n,
            "p_ij": self.p_ij,
            "n_ij": self.n_ij,
            "sum_length": self.sum_length,
            "sum_s": self.sum_s,
            "sum_omega_terms": self.sum_omega_terms,
            "sum_length_q": self.sum_length_q,
            "max_n_plus_nconj_p22": self.max_n_plus_nconj_p22,
        }

    @classmethod
    def from_json(cls, data: dict) -> "PartitionStats":
        return cls(**data)


def compute_stats(n: int) -> PartitionStats:
    p_ij = dict.fromkeys(CLASSES, 0)
    n_ij = dict.fromkeys(CLASSES, 0)
    p = big_n = sum_length = sum_s = sum_terms = sum_length_q = 0
    max_p22 = 0
    for lam in iter_partitions(n):
        nl = n_stat(lam)
        s = s_stat(lam)
        p += 1
        big_n += nl
        sum_length += len(lam)
        sum_s += s
        sum_terms += n + 3 * nl - s
        if n == 0:
            continue
        tag = classify(lam).value
        p_ij[tag] += 1
        n_ij[tag] += nl
        if tag in ("P12", "P22"):
            sum_length_q += len(lam)
        if tag == "P22":
            max_p22 = max(max_p22, nl + n_stat(conjugate(lam)))
    return PartitionStats(n, p, big_n, p_ij, n_ij, sum_length, sum_s, sum_terms, sum_length_q, max_p22)


class _StatsCache:
    """Lazy, lock-protected table of PartitionStats keyed by n."""

    def __init__(self):
        self._lock = threading.Lock()
        self._table: Dict[int, PartitionStats] = {}
        self._loaded_dir: Optional[str] = None

    def _cache_path(self) -> Optional[Path]:
        root = os.environ.get(CACHE_ENV)
        return Path(root) / _CACHE_FILE if root else None

    def _load(self) -> None:
        path = self._cache_path()
        if path is None or str(path) == self._loaded_dir:
            return
        self._loaded_dir = str(path)
        if path.exists():
            for row in json.loads(path.read_text(encoding="utf-8")):
                stats = PartitionStats.from_json(row)
                self._table.setdefault(stats.n, stats)

    def _store(self) -> None:
        path = self._cache_path()
        if path is None:
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        rows = [self._table[k].to_json() for k in sorted(self._table)]
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(rows, sort_keys=True), encoding="utf-8")
        tmp.replace(path)

    def get(self, n: int) -> PartitionStats:
        if n < 0:
            raise ValueError("n must be nonnegative")
        with self._lock:
            self._load()
            stats = self._table.get(n)
            if stats is None:
                stats = self._table[n] = compute_stats(n)
                self._store()
            return stats

    def clear(self) -> None:
        with self._lock:
            self._table.clear()
            self._loaded_dir = None


_STATS = _StatsCache()


def stats(n: int) -> PartitionStats:
    return _STATS.get(n)


def clear_cache() -> None:
    _STATS.clear()


def big_n(n: int) -> int:
    return stats(n).big_n


def p_count(n: int) -> int:
    return stats(n).p


def pij_counts(n: int) -> Dict[str, int]:
    return dict(stats(n).p_ij)


def nij_sums(n: int) -> Dict[str, int]:
    return dict(stats(n).n_ij)


def n_bar(m: int) -> Fraction:
    """Average of n(lam) over the partitions of m."""
    s = stats(m)
    return Fraction(s.big_n, s.p)


# -- reports ------------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    """One evaluated statement: ``lhs <= rhs`` (or ``lhs == rhs`` for identities)."""

    statement: str
    params: Tuple[Tuple[str, object], ...]
    lhs: Fraction
    rhs: Fraction
    relation: str = "<="
    note: str = ""

    @property
    def holds(self) -> bool:
        if self.relation == "==":
            return self.lhs == self.rhs
        return self.lhs <= self.rhs

    @property
    def param_dict(self) -> dict:
        return dict(self.params)

    def row(self) -> dict:
        return {
            "statement": self.statement,
            "params": ";".join(f"{k}={_fmt_param(v)}" for k, v in self.params),
            "lhs": _fmt_fraction(self.lhs),
            "relation": self.relation,
            "rhs": _fmt_fraction(self.rhs),
            "holds": self.holds,
            "note": self.note,
        }


def _fmt_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _fmt_param(v) -> str:
    if isinstance(v, tuple):
        return "(" + ",".join(str(x) for x in v) + ")"
    return str(v)


class OutOfRange(ValueError):
    """Parameters outside a statement's hypotheses."""


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise OutOfRange(msg)


# -- maxima over configurations, by dynamic programming -------------------------


def _best_part_sums(n_max: int) -> List[Fraction]:
    """best[w] = max over partitions of w of sum N-bar(parts)."""
    best = [Fraction(0)] * (n_max + 1)
    for w in range(1, n_max + 1):
        best[w] = max(n_bar(m) + best[w - m] for m in range(1, w + 1))
    return best


def _best_item_sums(n_max: int) -> List[Fraction]:
    """best[w] = max over multisets of (d, m) with sum d*m = w of sum d*N-bar(m)."""
    best = [Fraction(0)] * (n_max + 1)
    for w in range(1, n_max + 1):
        best[w] = max(
            d * n_bar(m) + best[w - d * m]
            for d in range(1, w + 1)
            for m in range(1, w // d + 1)
        )
    return best


def max_nbar_sum_multi(n: int) -> Optional[Fraction]:
    """max of sum N-bar(m_i) over m_1 + ... + m_l = n with l >= 2 (None if n < 2)."""
    if n < 2:
        return None
    best = _best_part_sums(n)
    return max(n_bar(m) + best[n - m] for m in range(1, n))


def max_weighted_nbar_sum(n: int) -> Optional[Fraction]:
    """max of sum d_i N-bar(m_i) over sum d_i m_i = n, skipping l=1, d=1, m=n."""
    best = _best_item_sums(n)
    cands = [d * n_bar(n // d) for d in range(2, n + 1) if n % d == 0]
    cands += [
        d * n_bar(m) + best[n - d * m]
        for d in range(1, n + 1)
        for m in range(1, n // d + 1)
        if d * m < n
    ]
    return max(cands) if cands else None


def binom_sum(mu) -> int:
    return sum(comb(part + 1, 2) for part in mu)


# -- the statements -----------------------------------------------------------

GL_PHI_EXCEPTIONS = frozenset({(2, 2), (2, 3), (3, 2)})


def _r(statement, params, lhs, rhs, relation="<=", note=""):
    return BoundReport(statement, tuple(params), Fraction(lhs), Fraction(rhs), relation, note)


def _slam_1(n):
    _need(n >= 1, "n >= 1")
    s = stats(n)
    return _r("l.slam.1", [("n", n)], s.sum_s, n * s.p, "==")


def _slam_2(n):
    _need(n >= 1, "n >= 1")
    s = stats(n)
    return _r("l.slam.2", [("n", n)], s.sum_omega_terms, 3 * s.big_n, "==")


def _n22_1(n):
    _need(n >= 1, "n >= 1")
    return _r("l.N22.1", [("n", n)], stats(n).max_n_plus_nconj_p22, Fraction(n * (n + 1), 4),
              note="max over P22(n) of n(lam)+n(lam')")


def _n22_2(n):
    _need(n >= 1, "n >= 1")
    s = stats(n)
    return _r("l.N22.2", [("n", n)], s.n_ij["P22"], Fraction(n * (n + 1) * s.p_ij["P22"], 8))


def _llam(n):
    _need(n >= 1, "n >= 1")
    s = stats(n)
    return _r("l.llam", [("n", n)], s.sum_length, Fraction((n + 1) * s.p, 2))


def _n11_1(n):
    _need(n >= 2, "n >= 2")
    s, s2 = stats(n), stats(n - 2)
    return _r("l.N11.1", [("n", n)], s.n_ij["P11"], s2.big_n + Fraction((n - 1) * s2.p, 2))


def _n11_2(n):
    _need(n >= 2, "n >= 2")
    s2 = stats(n - 2)
    _need(6 * s2.big_n <= (n - 2) * (n - 1) * s2.p, "hypothesis N(n-2) <= (n-2)(n-1)p(n-2)/6")
    s = stats(n)
    return _r("l.N11.2", [("n", n)], s.n_ij["P11"], Fraction(n * (n + 1) * s.p_ij["P11"], 6))


def _llam12(n):
    _need(n >= 4, "n >= 4")
    s = stats(n)
    return _r("l.llam12", [("n", n)], s.sum_length_q,
              Fraction(2 * (n + 1) * (s.p_ij["P12"] + s.p_ij["P22"]), 3))


def _n12_1(n):
    _need(n >= 5, "n >= 5")
    s, s1 = stats(n), stats(n - 1)
    lhs = s.n_ij["P21"] + s.n_ij["P12"]
    rhs = s1.n_ij["P21"] + s1.n_ij["P12"] + 2 * s1.n_ij["P22"] + Fraction(2 * n * s.p_ij["P12"], 3)
    return _r("l.N12.1", [("n", n)], lhs, rhs)


def _n12_2(n):
    _need(n >= 1, "n >= 1")
    s = stats(n)
    return _r("l.N12.2", [("n", n)], s.n_ij["P21"] + s.n_ij["P12"],
              Fraction(n * (n + 1) * s.p_ij["P12"], 3))


def _t_nn(n):
    _need(n >= 1, "n >= 1")
    s = stats(n)
    return _r("t.Nn", [("n", n)], s.big_n, Fraction(n * (n + 1) * s.p, 6))


def _phin(n, q):
    _need(n >= 6, "n >= 6")
    return _r("l.phin", [("n", n), ("q", q)], Fraction(q**n - q ** (n - 1), n),
              count_irreducible(q, n) - 1)


def _pn(n):
    _need(n >= 8, "n >= 8")
    return _r("l.pn", [("n", n)], p_count(n), Fraction((n - 1) * 2 ** (n - 3), n))


def _nn_2(n):
    _need(n >= 8, "n >= 8")
    s = stats(n)
    return _r("l.Nn-2", [("n", n)], s.big_n, Fraction(n * (n - 1), 6) * (s.p + Fraction(2 ** (n - 2), n)))


def _nn_phi(n, q):
    _need(n >= 1, "n >= 1")
    _need((n, q) not in GL_PHI_EXCEPTIONS, "(n,q) not in {(2,2),(2,3),(3,2)}")
    s = stats(n)
    extra = Fraction(count_irreducible(q, n) - 1, q)
    return _r("t.Nn-phi", [("n", n), ("q", q)], s.big_n, Fraction(n * (n - 1), 6) * (s.p + extra))


def _gu_1(n, q):
    _need(n >= 1, "n >= 1")
    _need((n, q) != (2, 2), "(n,q) != (2,2)")
    s = stats(n)
    extra = Fraction(count_irreducible(q, n) - 1, q - 1)
    return _r("l.gu.1", [("n", n), ("q", q)], s.big_n, Fraction(n * (n - 1), 6) * (s.p + extra))


def _gu_2(n, q):
    _need(n >= 1, "n >= 1")
    _need((n, q) not in GL_PHI_EXCEPTIONS, "(n,q) not in {(2,2),(2,3),(3,2)}")
    s = stats(n)
    extra = Fraction(count_u_irreducible(q, n) - 1, q)
    return _r("l.gu.2", [("n", n), ("q", q)], s.big_n, Fraction(n * (n - 1), 6) * (s.p + extra))


def _nchoose2(n=None, mu=None):
    if mu is not None:
        mu = tuple(mu)
        m = sum(mu)
        _need(len(mu) >= 2, "l(mu) >= 2")
        exceptional = mu == (m - 1, 1)
        return _r("l.nchoose2", [("mu", mu)], binom_sum(mu), comb(m, 2),
                  note="exception mu=(n-1,1)" if exceptional else "")
    _need(n is not None and n >= 2, "n >= 2")
    worst = max(
        (binom_sum(mu) for mu in enumerate_partitions(n) if len(mu) >= 2 and mu != (n - 1, 1)),
        default=0,
    )
    return _r("l.nchoose2", [("n", n)], worst, comb(n, 2), note="max over l(mu)>=2, mu!=(n-1,1)")


def _nmi(n):
    _need(n >= 2, "n >= 2")
    return _r("l.Nmi", [("n", n)], 3 * max_nbar_sum_multi(n), comb(n, 2), note="max over l>=2")


def _dnmi(n):
    _need(n >= 1, "n >= 1")
    worst = max_weighted_nbar_sum(n)
    return _r("c.dNmi", [("n", n)], 0 if worst is None else 3 * worst, comb(n, 2),
              note="max over (d_i,m_i) except l=1,d=1,m=n")


# id -> (evaluator, takes_q, minimum n for range sweeps, description)
STATEMENTS: Dict[str, Tuple[Callable, bool, int, str]] = {
    "l.slam.1": (_slam_1, False, 1, "sum s(lam) = n p(n)"),
    "l.slam.2": (_slam_2, False, 1, "sum (|lam| + 3n(lam) - s(lam)) = 3N(n)"),
    "l.N22.1": (_n22_1, False, 1, "n(lam) + n(lam') <= n(n+1)/4 on P22(n)"),
    "l.N22.2": (_n22_2, False, 1, "N22(n) <= n(n+1)p22(n)/8"),
    "l.llam": (_llam, False, 1, "sum l(lam) <= (n+1)p(n)/2"),
    "l.N11.1": (_n11_1, False, 2, "N11(n) <= N(n-2) + (n-1)p(n-2)/2"),
    "l.N11.2": (_n11_2, False, 2, "N11(n) <= n(n+1)p11(n)/6"),
    "l.llam12": (_llam12, False, 4, "sum of l over P12 u P22 <= 2(n+1)(p12+p22)/3"),
    "l.N12.1": (_n12_1, False, 5, "N21+N12 <= N21(n-1)+N12(n-1)+2N22(n-1)+2n p12(n)/3"),
    "l.N12.2": (_n12_2, False, 1, "N21(n)+N12(n) <= n(n+1)p12(n)/3"),
    "t.Nn": (_t_nn, False, 1, "N(n) <= n(n+1)p(n)/6"),
    "l.phin": (_phin, True, 6, "|F_{q,n}| - 1 >= (q^n - q^(n-1))/n"),
    "l.pn": (_pn, False, 8, "p(n) <= (n-1)2^(n-3)/n"),
    "l.Nn-2": (_nn_2, False, 8, "N(n) <= n(n-1)(p(n) + 2^(n-2)/n)/6"),
    "t.Nn-phi": (_nn_phi, True, 1, "N(n) <= n(n-1)(p(n) + (|F_{q,n}|-1)/q)/6"),
    "l.gu.1": (_gu_1, True, 1, "N(n) <= n(n-1)(p(n) + (|F_{q,n}|-1)/(q-1))/6"),
    "l.gu.2": (_gu_2, True, 1, "N(n) <= n(n-1)(p(n) + (|F^U_{q,n}|-1)/q)/6"),
    "l.nchoose2": (_nchoose2, False, 2, "C(n,2) >= sum C(mu_i+1,2) unless mu=(n-1,1)"),
    "l.Nmi": (_nmi, False, 2, "3 sum N-bar(m_i) <= C(n,2) for l >= 2"),
    "c.dNmi": (_dnmi, False, 1, "3 sum d_i N-bar(m_i) <= C(n,2) except l=1,d=1,m=n"),
}


def verify_statement(statement: str, **params) -> BoundReport:
    """Evaluate one statement at the given parameters (``n``, ``q`` or ``mu``)."""
    try:
        fn = STATEMENTS[statement][0]
    except KeyError:
        raise KeyError(f"unknown statement {statement!r}") from None
    return fn(**params)


def in_range(statement: str, **params) -> bool:
    try:
        verify_statement(statement, **params)
    except OutOfRange:
        return False
    return True


def run_statements(
    n_max: int,
    qs: Iterable[int] = (2, 3, 4, 5, 7, 9),
    statements: Optional[Iterable[str]] = None,
    n_min: int = 1,
) -> List[BoundReport]:
    """Every statement over its own range within [n_min, n_max], ordered by id then params.

    Parameter tuples that a statement's hypotheses exclude are skipped.
    """
    ids = sorted(STATEMENTS) if statements is None else list(statements)
    qs = sorted(set(int(q) for q in qs))
    out = []
    for sid in ids:
        fn, takes_q, lo, _ = STATEMENTS[sid]
        for n in range(max(lo, n_min), n_max + 1):
            for q in (qs if takes_q else [None]):
                kwargs = {"n": n} if q is None else {"n": n, "q": q}
                try:
                    out.append(fn(**kwargs))
                except OutOfRange:
                    continue
    return out


def explore_strong_bound(n_max: int) -> List[BoundReport]:
    """Compare N(n) with n(n-1)p(n)/6 for 7 <= n <= n_max (informational)."""
    if n_max < 7:
        raise OutOfRange("n_max >= 7")
    return [
        _r("strong", [("n", n)], big_n(n), Fraction(n * (n - 1) * p_count(n), 6), note="informational")
        for n in range(7, n_max + 1)
    ]

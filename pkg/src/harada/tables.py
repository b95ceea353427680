"""Regeneration of the three reference tables as byte-stable CSV."""

from __future__ import annotations

import csv
import io
from math import comb
from pathlib import Path
from typing import Dict, Iterable, List, Sequence

from .bounds import big_n, nij_sums, p_count, pij_counts
from .groups import GroupSpec, harada_report
from .output import decimal
from .partitions import enumerate_partitions, classify
from .polycount import count_irreducible
from .qarith import format_factorization, small_factorization

# |F_{q,n}| as printed, for n = 2..7
IRREDUCIBLE_FORMULAS = {
    2: "(q^2-q)/2",
    3: "(q^3-q)/3",
    4: "(q^4-q^2)/4",
    5: "(q^5-q)/5",
    6: "(q^6-q^3-q^2+q)/6",
    7: "(q^7-q)/7",
}

GU_SMALL_CASES = ((2, 2), (2, 3), (3, 2))


def _eval_formula(n: int, q: int) -> int:
    """Evaluate the closed forms above at q."""
    num = {
        2: q**2 - q,
        3: q**3 - q,
        4: q**4 - q**2,
        5: q**5 - q,
        6: q**6 - q**3 - q**2 + q,
        7: q**7 - q,
    }[n]
    quo, rem = divmod(num, n)
    if rem:
        raise ArithmeticError(f"closed form for n={n} not integral at q={q}")
    return quo


def _csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def nn_table_rows(qs: Sequence[int]) -> List[list]:
    rows = []
    for n in range(2, 8):
        row = [n, big_n(n), comb(n, 2), p_count(n), IRREDUCIBLE_FORMULAS[n]]
        for q in qs:
            value = _eval_formula(n, q)
            if value != count_irreducible(q, n):
                raise AssertionError(f"closed form disagrees with Mobius count at n={n}, q={q}")
            row.append(value)
        rows.append(row)
    return rows


def nn_table(qs: Sequence[int] = (2, 3, 4, 5)) -> str:
    header = ["n", "N(n)", "C(n,2)", "p(n)", "F_qn"] + [f"F_qn@q={q}" for q in qs]
    return _csv(header, nn_table_rows(qs))


def _fmt_partition(lam) -> str:
    if lam and all(x == 1 for x in lam) and len(lam) > 1:
        return f"(1^{len(lam)})"
    return "(" + ",".join(map(str, lam)) + ")"


def n21_n12_table() -> str:
    rows = []
    for n in range(2, 5):
        p21 = [lam for lam in enumerate_partitions(n) if classify(lam).value == "P21"]
        p12 = [lam for lam in enumerate_partitions(n) if classify(lam).value == "P12"]
        sums = nij_sums(n)
        bound = n * (n + 1) * pij_counts(n)["P12"]
        bound_text = str(bound // 3) if bound % 3 == 0 else f"{bound}/3"
        rows.append([
            n,
            " ".join(_fmt_partition(x) for x in p21),
            " ".join(_fmt_partition(x) for x in p12),
            sums["P21"],
            sums["P12"],
            sums["P21"] + sums["P12"],
            bound_text,
        ])
    return _csv(["n", "P21(n)", "P12(n)", "N21(n)", "N12(n)", "N21+N12", "n(n+1)p12(n)/3"], rows)


def gu_small_table() -> str:
    rows = []
    for n, q in GU_SMALL_CASES:
        report = harada_report(GroupSpec("GU", n, q))
        h = report.h_value()
        derived = report.derived_order.value
        if h.denominator != 1 or h.numerator % derived:
            raise AssertionError(f"h(GU_{n}({q})) is not a multiple of |G'|")
        h = h.numerator
        rows.append([
            f"({n},{q})",
            decimal(report.group_order.value),
            decimal(derived),
            format_factorization(small_factorization(h)),
            format_factorization(small_factorization(h // derived)),
        ])
    return _csv(["(n,q)", "|G|", "|G'|", "h(G)", "h(G)/|G'|"], rows)


def render_tables(qs: Sequence[int] = (2, 3, 4, 5)) -> Dict[str, str]:
    return {
        "nn_table.csv": nn_table(qs),
        "n21_n12_table.csv": n21_n12_table(),
        "gu_small_groups.csv": gu_small_table(),
    }


def write_tables(out_dir, qs: Sequence[int] = (2, 3, 4, 5)) -> List[Path]:
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create {out_dir}: {exc}") from exc
    written = []
    for name, text in render_tables(qs).items():
        path = out_dir / name
        try:
            path.write_bytes(text.encode("utf-8"))
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc}") from exc
        written.append(path)
    return written

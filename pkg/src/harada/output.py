"""Serialization of reports: JSON lines, CSV and plain text."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import sys
from contextlib import contextmanager
from fractions import Fraction
from typing import Iterable, List

from .groups import CHECK_NAMES, HaradaReport, Main2Report

DIGEST_THRESHOLD = 10**4  # decimal digits
DIGEST_EDGE = 20


@contextmanager
def _unbounded_int_str():
    getter = getattr(sys, "get_int_max_str_digits", None)
    if getter is None:
        yield
        return
    old = getter()
    sys.set_int_max_str_digits(0)
    try:
        yield
    finally:
        sys.set_int_max_str_digits(old)


def decimal(x) -> str:
    """Decimal string of an int (or 'a/b' for a Fraction), with no length cap."""
    with _unbounded_int_str():
        if isinstance(x, Fraction):
            if x.denominator == 1:
                return str(x.numerator)
            return f"{x.numerator}/{x.denominator}"
        return str(x)


def digest(text: str) -> dict:
    return {
        "digits": len(text),
        "head": text[:DIGEST_EDGE],
        "tail": text[-DIGEST_EDGE:],
        "sha256": hashlib.sha256(text.encode("ascii")).hexdigest(),
    }


def harada_record(report: HaradaReport, full_h: bool = False, main2: Main2Report = None) -> dict:
    """Ordered dict for one report; big integers become decimal strings."""
    spec = report.spec
    rec = {
        "variant": spec.variant,
        "n": spec.n,
        "q": spec.q.q,
        "group_order": decimal(report.group_order.value),
        "derived_order": decimal(report.derived_order.value),
        "class_count": decimal(report.class_count),
        "vq_h": report.vq_h,
        "binom_n_2": report.binom_n_2,
    }
    h_text = decimal(report.h_qprime)
    if full_h or len(h_text) <= DIGEST_THRESHOLD:
        rec["h_qprime"] = h_text
    else:
        rec["h_qprime_digest"] = digest(h_text)
    rec["checks"] = {name: report.checks[name] for name in CHECK_NAMES}
    rec["exception"] = report.exception
    if main2 is not None:
        rec["main2"] = main2_record(main2)
    return rec


def main2_record(report: Main2Report) -> dict:
    return {
        "part1_holds": report.part1_holds,
        "part1_fibers": len(report.part1),
        "part2_holds": report.part2_holds,
        "part2_lhs": None if report.part2_lhs is None else decimal(report.part2_lhs),
        "part2_rhs": None if report.part2_rhs is None else decimal(report.part2_rhs),
        "part2_omega_sum": None if report.part2_omega_sum is None else decimal(report.part2_omega_sum),
    }


def json_line(record: dict) -> str:
    return json.dumps(record, ensure_ascii=True)


def _flatten(record: dict) -> dict:
    flat = {}
    for key, value in record.items():
        if key == "checks":
            for name, ok in value.items():
                flat[f"check_{name}"] = ok
        elif key == "h_qprime_digest":
            flat["h_qprime_digest"] = "{digits}:{head}...{tail}:{sha256}".format(**value)
        elif key == "main2":
            for name, v in value.items():
                flat[f"main2_{name}"] = v
        else:
            flat[key] = value
    return flat


def csv_text(records: Iterable[dict]) -> str:
    rows = [_flatten(r) for r in records]
    if not rows:
        return ""
    fields: List[str] = []
    for row in rows:
        for key in row:
            if key not in fields:
                fields.append(key)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _csv_cell(row.get(k)) for k in fields})
    return buf.getvalue()


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return v


def human_harada(record: dict) -> str:
    lines = [f"{record['variant']}_{record['n']}({record['q']})"]
    lines.append(f"  |G| = {record['group_order']}   |G'| = {record['derived_order']}   classes = {record['class_count']}")
    h = record.get("h_qprime")
    if h is None:
        d = record["h_qprime_digest"]
        h = f"<{d['digits']} digits {d['head']}...{d['tail']} sha256 {d['sha256'][:16]}>"
    lines.append(f"  v_q(h) = {record['vq_h']} (C(n,2) = {record['binom_n_2']})   h_q' = {h}")
    for name, ok in record["checks"].items():
        lines.append(f"  {'ok  ' if ok else 'FAIL'} {name}")
    if record["exception"]:
        lines.append(f"  note: {record['exception']}")
    if "main2" in record:
        m = record["main2"]
        lines.append(f"  fiber bound off M1: {m['part1_holds']}   M1 u Mn aggregate: {m['part2_holds']}")
    return "\n".join(lines)


def human_bound(row: dict) -> str:
    mark = "ok  " if row["holds"] else "FAIL"
    text = f"{mark} {row['statement']:<11} {row['params']:<14} {row['lhs']} {row['relation']} {row['rhs']}"
    if row["note"]:
        text += f"   [{row['note']}]"
    return text

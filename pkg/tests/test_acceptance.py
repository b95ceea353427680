"""End-to-end acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line so the run doubles as a report.
"""

import json
import time
from collections import Counter
from math import comb

import pytest

from harada import bounds, cli, output
from harada.classtypes import enumerate_types
from harada.groups import GroupSpec, char_degree, class_size, harada_report, omega_closed
from harada.partitions import (
    PartitionClass,
    classify,
    enumerate_partitions,
    hook_multiset,
    in_q1,
    is_partition,
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
from harada.polycount import count_irreducible
from harada.qarith import EvalPoint, PrimePower, b_explicit_eval, degree_factor, same_ratio
from harada.tables import IRREDUCIBLE_FORMULAS, _eval_formula


@pytest.fixture
def report_line(capsys):
    lines = []
    yield lines.append
    with capsys.disabled():
        for line in lines:
            print(f"\n{line}", end="")


@pytest.fixture(scope="module")
def grid_records():
    start = time.perf_counter()
    records, code = cli.run_verify(cli.RunConfig(command="verify", fmt="json"))
    return records, code, time.perf_counter() - start


def _status(ok):
    return "PASS" if ok else "FAIL"


def test_criterion_1_fixtures(report_line):
    start = time.perf_counter()
    gl22 = harada_report(GroupSpec("GL", 2, 2))
    got = {(2, 2): harada_report(GroupSpec("GU", 2, 2)),
           (2, 3): harada_report(GroupSpec("GU", 2, 3)),
           (3, 2): harada_report(GroupSpec("GU", 3, 2))}
    expected = {
        (2, 2): (18, 3, 3**3, 9),
        (2, 3): (96, 24, 2**12 * 3**4, 2**9 * 3**3),
        (3, 2): (648, 216, 2**18 * 3**21, 2**15 * 3**18),
    }
    observed = {
        key: (r.group_order.value, r.derived_order.value, r.h_value(), r.h_value() / r.derived_order.value)
        for key, r in got.items()
    }
    elapsed = time.perf_counter() - start
    ok = gl22.h_value() == 3 and observed == expected and elapsed < 1
    report_line(f"criterion 1 {_status(ok)}: h(GL_2(2))={gl22.h_value()}, GU rows {sorted(observed)} ({elapsed:.3f}s)")
    assert gl22.h_value() == 3
    assert observed == expected
    assert elapsed < 1


def test_criterion_2_partition_table(report_line):
    start = time.perf_counter()
    big = [bounds.big_n(n) for n in range(2, 8)]
    ps = [bounds.p_count(n) for n in range(2, 8)]
    mismatches = [
        (n, q)
        for n in IRREDUCIBLE_FORMULAS
        for q in (2, 3, 4, 5)
        if _eval_formula(n, q) != count_irreducible(q, n)
    ]
    elapsed = time.perf_counter() - start
    ok = big == [1, 4, 12, 26, 57, 103] and ps == [2, 3, 5, 7, 11, 15] and not mismatches and elapsed < 1
    report_line(f"criterion 2 {_status(ok)}: N={big} p={ps} formula mismatches={mismatches} ({elapsed:.3f}s)")
    assert big == [1, 4, 12, 26, 57, 103]
    assert ps == [2, 3, 5, 7, 11, 15]
    assert mismatches == []
    assert elapsed < 1


def test_criterion_3_conjecture_grid(grid_records, report_line):
    records, code, elapsed = grid_records
    bad = []
    for rec in records:
        if "error" in rec:
            bad.append((rec["variant"], rec["n"], rec["q"], rec["error"]))
            continue
        c = rec["checks"]
        vq = rec["vq_h"]
        exceptional = rec["exception"] is not None
        fine = (
            c["qprime_integral_all"]
            and vq >= 0
            and (exceptional or vq >= comb(rec["n"], 2))
            and c["main_valuation_bound"]
            and c["commutator_divides"]
        )
        if not fine:
            bad.append((rec["variant"], rec["n"], rec["q"]))
    ok = not bad and code == 0 and len(records) == 64 and elapsed < 300
    report_line(f"criterion 3 {_status(ok)}: {len(records)} groups, failures={bad} ({elapsed:.2f}s)")
    assert bad == []
    assert code == 0 and len(records) == 64
    assert elapsed < 300


def test_criterion_4_orthogonality(grid_records, report_line):
    records, _, _ = grid_records
    bad = [
        (r["variant"], r["n"], r["q"])
        for r in records
        if "error" in r or not (r["checks"]["sum_class_sizes"] and r["checks"]["sum_degree_squares"])
    ]
    report_line(f"criterion 4 {_status(not bad)}: class equation and degree sums on {len(records)} groups, failures={bad}")
    assert bad == []


def test_criterion_5_bounds_suite(report_line):
    start = time.perf_counter()
    reports = bounds.run_statements(40, (2, 3, 4, 5, 7, 9))
    failed = sorted({r.statement for r in reports if not r.holds})
    covered = {r.statement for r in reports}

    map_errors = []
    for n in range(3, 31):
        here = Counter(classify(lam) for lam in enumerate_partitions(n))
        p11 = [psi_map(lam, n) for lam in enumerate_partitions(n - 2)]
        before = [(lam, classify(lam)) for lam in enumerate_partitions(n - 1)]
        dom21 = [lam for lam, c in before if c in (PartitionClass.P21, PartitionClass.P22)]
        dom12 = [lam for lam, c in before if c in (PartitionClass.P12, PartitionClass.P22)]
        img21 = [psi21_map(lam) for lam in dom21]
        img12 = [psi12_map(lam) for lam in dom12]
        checks = (
            len(set(p11)) == len(p11) == here[PartitionClass.P11]
            and all(classify(x) is PartitionClass.P11 and psi_inverse(x) == lam
                    for x, lam in zip(p11, enumerate_partitions(n - 2)))
            and len(set(img21)) == len(img21) == here[PartitionClass.P21]
            and all(classify(x) is PartitionClass.P21 and psi21_inverse(x) == lam for x, lam in zip(img21, dom21))
            and len(set(img12)) == len(img12) == here[PartitionClass.P12]
            and all(classify(x) is PartitionClass.P12 and psi12_inverse(x) == lam for x, lam in zip(img12, dom12))
        )
        if not checks:
            map_errors.append(("psi", n))
    for n in range(4, 31):
        q1 = [lam for lam in enumerate_partitions(n) if in_q1(lam)]
        images = [phi_map(lam) for lam in q1]
        codomain_ok = all(
            is_partition(img) and sum(img) == n and len(img) >= 2 and img[0] == img[1] and not in_q1(img)
            for img in images
        )
        if len(set(images)) != len(images) or not codomain_ok:
            map_errors.append(("phi", n))
    elapsed = time.perf_counter() - start
    ok = not failed and covered == set(bounds.STATEMENTS) and not map_errors and elapsed < 120
    report_line(
        f"criterion 5 {_status(ok)}: {len(reports)} rows over {len(covered)} statements, "
        f"failed={failed}, map errors={map_errors} ({elapsed:.2f}s)"
    )
    assert failed == []
    assert covered == set(bounds.STATEMENTS)
    assert map_errors == []
    assert elapsed < 120


def test_criterion_6_dual_path_omega(report_line):
    checked = total = 0
    mismatches = []
    for variant, n, q in cli.default_grid():
        spec = GroupSpec(variant, n, q)
        for ctype, _ in enumerate_types(n, spec.poly_table()):
            total += 1
            direct = class_size(spec, ctype).v - char_degree(spec, ctype).v
            if direct != omega_closed(n, ctype.items()):
                mismatches.append((str(spec), str(ctype)))
            checked += 1
    ok = checked == total and not mismatches
    report_line(f"criterion 6 {_status(ok)}: {checked}/{total} class types, mismatches={mismatches[:5]}")
    assert mismatches == []
    assert checked == total > 0


def test_criterion_7_identities(report_line):
    failures = []
    for q in (2, 3, 4):
        ctx = PrimePower.from_q(q)
        for sign in (1, -1):
            x = EvalPoint(sign, 1)
            for n in range(1, 11):
                for lam in enumerate_partitions(n):
                    if not same_ratio(b_explicit_eval(lam, x, ctx), degree_factor(lam, x, ctx)):
                        failures.append(("b", q, sign, lam))
    for n in range(0, 21):
        for lam in enumerate_partitions(n):
            expected = sorted(k for m in multiplicities(lam).values() for k in range(1, m + 1))
            ends = row_end_hooks(lam)
            if list(ends) != expected or Counter(ends) - Counter(hook_multiset(lam)):
                failures.append(("row_end", lam))
    for n in range(1, 41):
        parts = enumerate_partitions(n)
        if sum(s_stat(lam) for lam in parts) != n * len(parts):
            failures.append(("sum_s", n))
        if sum(n + 3 * n_stat(lam) - s_stat(lam) for lam in parts) != 3 * bounds.big_n(n):
            failures.append(("omega_terms", n))
    report_line(f"criterion 7 {_status(not failures)}: failures={failures[:5]}")
    assert failures == []


def test_criterion_8_determinism(grid_records, report_line):
    records, _, _ = grid_records
    serial = cli.render_records(records, "json", None)
    parallel_records, _ = cli.run_verify(cli.RunConfig(command="verify", fmt="json", jobs=8))
    parallel = cli.render_records(parallel_records, "json", None)
    ok = serial.encode() == parallel.encode()
    report_line(f"criterion 8 {_status(ok)}: jobs=1 vs jobs=8, {len(serial.encode())} bytes")
    assert serial.encode() == parallel.encode()
    assert all(json.loads(line) for line in serial.splitlines())
    assert output.json_line(json.loads(serial.splitlines()[0])) == serial.splitlines()[0]

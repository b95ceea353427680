"""Command line entry point: ``harada verify | bounds | tables | explore``.

Exit codes: 0 all checks pass, 1 a check failed or an integrality error was
hit, 2 invalid arguments.
"""

from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from . import bounds, output
from .groups import GroupSpec, harada_report, verify_main2
from .qarith import IntegralityError, PrimePower
from .tables import write_tables

log = logging.getLogger("harada")

DEFAULT_QS = (2, 3, 4, 5, 7, 9)


def default_grid() -> List[Tuple[str, int, int]]:
    jobs = []
    for variant in ("GL", "GU"):
        for n in range(1, 6):
            jobs.extend((variant, n, q) for q in DEFAULT_QS)
        jobs.extend((variant, 6, q) for q in (2, 3))
    return jobs


def parse_int_range(text: str) -> List[int]:
    """'4', '2..5' or '2,3,7' (pieces may be mixed: '1..3,6')."""
    values: List[int] = []
    try:
        for piece in text.split(","):
            piece = piece.strip()
            if ".." in piece:
                lo, hi = piece.split("..", 1)
                lo, hi = int(lo), int(hi)
                if lo > hi:
                    raise ValueError
                values.extend(range(lo, hi + 1))
            else:
                values.append(int(piece))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer range {text!r}") from None
    if any(v < 1 for v in values):
        raise argparse.ArgumentTypeError(f"values must be positive: {text!r}")
    return sorted(set(values))


def parse_q_list(text: str) -> List[int]:
    qs = parse_int_range(text)
    for q in qs:
        try:
            PrimePower.from_q(q)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{q} is not a prime power") from None
    return qs


@dataclass
class RunConfig:
    command: str
    variants: Tuple[str, ...] = ("GL", "GU")
    ns: Optional[List[int]] = None
    qs: Optional[List[int]] = None
    fmt: str = "human"
    output: Optional[str] = None
    jobs: int = 1
    strict: bool = False
    full_h: bool = False
    main2: bool = False
    n_max: int = 40
    n_min: int = 1
    statements: List[str] = field(default_factory=list)
    explore_strong: bool = False

    def grid(self) -> List[Tuple[str, int, int]]:
        if self.ns is None and self.qs is None:
            return [job for job in default_grid() if job[0] in self.variants]
        ns = self.ns or list(range(1, 6))
        qs = self.qs or list(DEFAULT_QS)
        return [(v, n, q) for v in self.variants for n in ns for q in qs]


def _verify_job(args) -> dict:
    (variant, n, q), full_h, main2 = args
    spec = GroupSpec(variant, n, q)
    try:
        report = harada_report(spec)
        m2 = verify_main2(spec) if main2 else None
    except (IntegralityError, AssertionError) as exc:
        return {"variant": variant, "n": n, "q": q, "error": str(exc)}
    return output.harada_record(report, full_h=full_h, main2=m2)


def run_verify(config: RunConfig) -> Tuple[List[dict], int]:
    jobs = [(job, config.full_h, config.main2) for job in config.grid()]
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            records = list(pool.map(_verify_job, jobs))
    else:
        records = [_verify_job(job) for job in jobs]
    code = 0
    for rec in records:
        if "error" in rec or not all(rec["checks"].values()):
            code = 1
        elif config.strict and "main2" in rec:
            m = rec["main2"]
            if not m["part1_holds"] or m["part2_holds"] is False:
                code = 1
    return records, code


def _emit(text: str, config: RunConfig) -> None:
    if config.output:
        try:
            with open(config.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            raise SystemExit(f"cannot write {config.output}: {exc}")
    else:
        sys.stdout.write(text)


def render_records(records: Sequence[dict], fmt: str, human) -> str:
    if fmt == "json":
        return "".join(output.json_line(r) + "\n" for r in records)
    if fmt == "csv":
        return output.csv_text(records)
    return "".join(human(r) + "\n" for r in records)


def _human_verify(rec: dict) -> str:
    if "error" in rec:
        return f"{rec['variant']}_{rec['n']}({rec['q']})\n  ERROR {rec['error']}"
    return output.human_harada(rec)


def cmd_verify(config: RunConfig) -> int:
    records, code = run_verify(config)
    _emit(render_records(records, config.fmt, _human_verify), config)
    return code


def run_bounds(config: RunConfig) -> Tuple[List[dict], int]:
    ids = config.statements or None
    reports = bounds.run_statements(config.n_max, config.qs or DEFAULT_QS, ids, config.n_min)
    rows = [r.row() for r in reports]
    code = 0 if all(r.holds for r in reports) else 1
    if config.explore_strong and config.n_max >= 7:
        rows += [r.row() for r in bounds.explore_strong_bound(config.n_max)]
    return rows, code


def cmd_bounds(config: RunConfig) -> int:
    rows, code = run_bounds(config)
    _emit(render_records(rows, config.fmt, output.human_bound), config)
    return code


def cmd_explore(config: RunConfig) -> int:
    rows = [r.row() for r in bounds.explore_strong_bound(config.n_max)]
    _emit(render_records(rows, config.fmt, output.human_bound), config)
    return 0


def cmd_tables(config: RunConfig) -> int:
    paths = write_tables(config.output or "tables", config.qs or (2, 3, 4, 5))
    for path in paths:
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="harada", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_output=True):
        p.add_argument("--format", dest="fmt", choices=("human", "json", "csv"), default="human")
        if with_output:
            p.add_argument("-o", "--output", help="write to this file instead of stdout")

    p = sub.add_parser("verify", help="check h(G) for GL/GU over a grid of (n, q)")
    p.add_argument("--variant", choices=("gl", "gu", "both"), default="both")
    p.add_argument("--n", dest="ns", type=parse_int_range, help="ranks, e.g. 4, 2..5, 2,3")
    p.add_argument("--q", dest="qs", type=parse_q_list, help="prime powers, e.g. 2,3,9")
    p.add_argument("-j", "--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--strict", action="store_true", help="fiber-level inequality failures also fail")
    p.add_argument("--main2", action="store_true", help="add the fiber-level inequality checks")
    p.add_argument("--full-h", action="store_true", help="never shorten h_qprime to a digest")
    common(p)

    p = sub.add_parser("bounds", help="evaluate the partition inequalities")
    p.add_argument("--n-max", type=int, default=40)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--q", dest="qs", type=parse_q_list)
    p.add_argument("--statement", dest="statements", action="append", choices=sorted(bounds.STATEMENTS))
    p.add_argument("--explore-strong", action="store_true", help="append the informational strong-bound rows")
    common(p)

    p = sub.add_parser("explore", help="informational check of N(n) <= n(n-1)p(n)/6")
    p.add_argument("--n-max", type=int, default=30)
    common(p)

    p = sub.add_parser("tables", help="write the reference tables as CSV files")
    p.add_argument("--q", dest="qs", type=parse_q_list)
    p.add_argument("-o", "--output", default="tables", help="output directory")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for name in ("ns", "qs", "fmt", "output", "jobs", "strict", "full_h", "main2",
                 "n_max", "n_min", "statements", "explore_strong"):
        if hasattr(args, name) and getattr(args, name) is not None:
            setattr(cfg, name, getattr(args, name))
    variant = getattr(args, "variant", "both")
    cfg.variants = ("GL", "GU") if variant == "both" else (variant.upper(),)
    return cfg


COMMANDS = {"verify": cmd_verify, "bounds": cmd_bounds, "explore": cmd_explore, "tables": cmd_tables}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    cfg = config_from_args(args)
    if cfg.jobs < 1:
        parser.error("--jobs must be at least 1")
    if cfg.command in ("bounds", "explore") and cfg.n_max < 1:
        parser.error("--n-max must be positive")
    if cfg.command == "explore" and cfg.n_max < 7:
        parser.error("--n-max must be at least 7 for the strong bound")
    if cfg.command == "bounds" and cfg.explore_strong and cfg.n_max < 7:
        parser.error("--explore-strong needs --n-max >= 7")
    log.debug("config %s", cfg)
    return COMMANDS[cfg.command](cfg)


if __name__ == "__main__":
    sys.exit(main())

"""Command line entry point.

    hilb-pieri product --n 6 --c 3,2,1 --format json
    hilb-pieri matrix --n 4 --out-dir tables/
    hilb-pieri conjecture --max-weight 8
    hilb-pieri verify --check-invariants

Exit codes: 0 success, 1 engine or verification failure, 2 usage error,
3 conjecture counterexample found.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import golden
from .classes import MSTriple
from .dag import sweep_conjecture
from .pieri import PieriRow, intersect_with_h, pieri_matrix
from .rewrite import ConservationError

log = logging.getLogger("hilbpieri")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3
CACHE_ENV = "HILB_PIERI_CACHE"


class UsageError(ValueError):
    pass


@dataclass
class JobConfig:
    command: str
    n: Optional[int] = None
    a: tuple = ()
    b: tuple = ()
    c: tuple = ()
    max_weight: int = 8
    format: str = "json"
    out_dir: Optional[Path] = None
    check_invariants: bool = False
    force: bool = False
    workers: int = 1


def parse_partition(text: str) -> tuple:
    """``"3,2,1"`` -> ``(3, 2, 1)``; the empty string is the empty partition."""
    text = (text or "").strip()
    if not text:
        return ()
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"not a comma-separated list of integers: {text!r}") from None
    if any(x <= 0 for x in parts):
        raise UsageError(f"partition entries must be positive: {text!r}")
    if any(parts[k] < parts[k + 1] for k in range(len(parts) - 1)):
        raise UsageError(f"partition must be weakly decreasing: {text!r}")
    return parts


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def cache_dir(cfg: JobConfig) -> Path:
    if cfg.out_dir is not None:
        return Path(cfg.out_dir)
    return Path(os.environ.get(CACHE_ENV, "."))


def cache_path(directory: Path, n: int) -> Path:
    return directory / f"pieri_N{n}.json"


def render_row(row: dict, fmt: str) -> str:
    if fmt == "json":
        return dumps(row)
    tri = MSTriple.from_json(row["input"])
    terms = [(MSTriple.from_json(t), t["coef"]) for t in row["terms"]]
    if fmt == "latex":
        body = ""
        for k, (t, c) in enumerate(terms):
            sign = "-" if c < 0 else ("+" if k else "")
            mag = "" if abs(c) == 1 else str(abs(c))
            body += f" {sign} {mag}{t.latex()}" if k else f"{sign}{mag}{t.latex()}"
        return rf"H \cdot {tri.latex()} = {body or '0'}" + "\n"
    lines = [f"H * sigma{tri} (N={row['n']}) ="]
    lines += [f"  {c:+d} sigma{t}" for t, c in terms] or ["  0"]
    return "\n".join(lines) + "\n"


def _lookup_cached(directory: Path, alpha: MSTriple) -> Optional[dict]:
    path = cache_path(directory, alpha.n)
    if not path.exists():
        return None
    want = alpha.to_json()
    for row in json.loads(path.read_text())["rows"]:
        if row["input"] == want:
            return row
    return None


def run_product(cfg: JobConfig, out=sys.stdout) -> int:
    alpha = MSTriple(cfg.a, cfg.b, cfg.c)
    if cfg.n is not None and cfg.n != alpha.n:
        raise UsageError(f"--n {cfg.n} does not match the partitions (total {alpha.n})")
    row = _lookup_cached(cache_dir(cfg), alpha)
    if row is None:
        row = intersect_with_h(alpha, check_invariants=cfg.check_invariants).to_json()
    else:
        log.info("cache hit for %s", alpha)
    out.write(render_row(row, cfg.format))
    return EXIT_OK


def matrix_document(rows: list[PieriRow], n: int) -> dict:
    stats = [dict(r.input.to_json(), rule_applications=r.stats.rule_applications,
                  max_terms=r.stats.max_terms) for r in rows]
    return {"n": n, "rows": [r.to_json() for r in rows], "stats": stats}


def run_matrix(cfg: JobConfig, out=sys.stdout) -> int:
    if cfg.n is None or cfg.n < 1:
        raise UsageError("matrix needs --n >= 1")
    directory = cache_dir(cfg)
    path = cache_path(directory, cfg.n)
    if path.exists() and not cfg.force:
        out.write(f"cached {path}\n")
        return EXIT_OK
    rows = pieri_matrix(cfg.n, workers=cfg.workers, check_invariants=cfg.check_invariants)
    directory.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(matrix_document(rows, cfg.n)))
    out.write(f"wrote {path} ({len(rows)} rows)\n")
    return EXIT_OK


def run_conjecture(cfg: JobConfig, out=sys.stdout) -> int:
    reports = sweep_conjecture(cfg.max_weight, workers=cfg.workers)
    failed = [r for r in reports if not r.passed]
    doc = {
        "max_weight": cfg.max_weight,
        "cases": len(reports),
        "pass": not failed,
        "witnesses": [r.to_json() for r in failed],
        "reports": [r.to_json() for r in reports],
    }
    directory = cache_dir(cfg)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"conjecture_w{cfg.max_weight}.json"
    path.write_text(dumps(doc))
    out.write(f"{len(reports)} cases, {len(failed)} counterexamples; wrote {path}\n")
    for r in failed:
        out.write(f"counterexample m={r.m} i={r.i}: {r.witnesses}\n")
    return EXIT_COUNTEREXAMPLE if failed else EXIT_OK


def run_verify(cfg: JobConfig, out=sys.stdout) -> int:
    ok = golden.run(check_invariants=cfg.check_invariants,
                    emit=lambda line: out.write(line + "\n"))
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "product": run_product,
    "matrix": run_matrix,
    "conjecture": run_conjecture,
    "verify": run_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hilb-pieri", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out-dir", type=Path, default=None,
                       help=f"cache/report directory (default ${CACHE_ENV} or .)")
        p.add_argument("--check-invariants", action="store_true",
                       help="check length and codimension after every rewrite step")

    p = sub.add_parser("product", help="expand H * sigma_(a,b,c)")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--a", default="")
    p.add_argument("--b", default="")
    p.add_argument("--c", default="")
    p.add_argument("--format", choices=("json", "text", "latex"), default="json")
    common(p)

    p = sub.add_parser("matrix", help="write the full table pieri_N{n}.json")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--force", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    common(p)

    p = sub.add_parser("conjecture", help="sweep the vanishing path-sum conjecture")
    p.add_argument("--max-weight", type=int, default=8)
    p.add_argument("--workers", type=int, default=1)
    common(p)

    p = sub.add_parser("verify", help="run the golden suite and the conservation sweep")
    common(p)
    return parser


def config_from_args(args) -> JobConfig:
    cfg = JobConfig(command=args.command, out_dir=args.out_dir,
                    check_invariants=args.check_invariants)
    if args.command == "product":
        cfg.n = args.n
        cfg.a, cfg.b, cfg.c = (parse_partition(x) for x in (args.a, args.b, args.c))
        cfg.format = args.format
    elif args.command == "matrix":
        cfg.n, cfg.force, cfg.workers = args.n, args.force, args.workers
    elif args.command == "conjecture":
        if args.max_weight < 0:
            raise UsageError("--max-weight must be nonnegative")
        cfg.max_weight, cfg.workers = args.max_weight, args.workers
    return cfg


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        cfg = config_from_args(args)
        return COMMANDS[cfg.command](cfg, out=out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConservationError as exc:
        print(f"engine failure in {exc.rule}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OverflowError as exc:
        print(f"engine failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"I/O failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
